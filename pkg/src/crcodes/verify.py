"""Exact verification of complete regularity.

A code C in a regular graph splits the vertices into distance cells
C_0 = C, C_1, ..., C_rho.  C is completely regular when every vertex of
C_i has constant neighbor counts (gamma_i, alpha_i, beta_i) into the
cells C_{i-1}, C_i, C_{i+1}; the constants form the intersection array
{beta_0..beta_{rho-1}; gamma_1..gamma_rho} and the tridiagonal quotient
matrix.  Everything here is integer arithmetic: the quotient eigenvalues
are found by testing the graph's own eigenvalue ladder as roots of the
characteristic polynomial, never by a floating-point solver, so any
eigenvalue outside the ladder raises instead of rounding.

Per-vertex neighbor counts are not taken by walking neighbor lists: in a
Johnson or Grassmann graph two distinct k-objects over a common
(k-1)-object are always adjacent and adjacent vertices share exactly one
(k-1)-object, so counting, for every (k-1)-object, the members of each
cell containing it gives every vertex's per-cell neighbor counts by a sum
over its own (k-1)-subobjects.  That turns the 10^8-edge check of the
largest graph here into a handful of array passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graphs import (GraphSpec, containment_table, theta, theta_ladder,
                     vertex_index)
from .subspaces import gaussian


class VerificationError(ValueError):
    """Raised when verification input is unusable or internally inconsistent."""


class Code:
    """A vertex subset of a Johnson or Grassmann graph, ids sorted."""

    def __init__(self, spec: GraphSpec, ids, label: Optional[str] = None):
        ids = np.asarray(sorted(int(i) for i in ids), dtype=np.int64)
        if len(ids) and (ids[0] < 0 or ids[-1] >= spec.vertex_count):
            raise VerificationError("vertex id out of range")
        if len(ids) > 1 and (np.diff(ids) == 0).any():
            raise VerificationError("duplicate vertex ids in code")
        self.spec = spec
        self.ids = ids
        self.label = label

    def __len__(self) -> int:
        return len(self.ids)

    def vertices(self):
        idx = vertex_index(self.spec)
        return [idx[int(i)] for i in self.ids]

    def complement(self, label: Optional[str] = None) -> "Code":
        mask = np.ones(self.spec.vertex_count, dtype=bool)
        mask[self.ids] = False
        return Code(self.spec, np.nonzero(mask)[0], label=label)

    def __repr__(self) -> str:
        tag = f", label={self.label!r}" if self.label else ""
        return f"Code({self.spec}, size={len(self)}{tag})"


@dataclass
class DistancePartition:
    rho: int
    cells: list  # list of rho+1 sorted id arrays
    cell_of: np.ndarray  # (V,) cell index per vertex

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)


@dataclass
class IntersectionNumbers:
    alpha: tuple[int, ...]  # rho+1 same-cell counts
    beta: tuple[int, ...]   # rho outward counts beta_0..beta_{rho-1}
    gamma: tuple[int, ...]  # rho inward counts gamma_1..gamma_rho
    quotient: tuple[tuple[int, ...], ...]

    def array(self) -> str:
        b = ",".join(str(x) for x in self.beta)
        g = ",".join(str(x) for x in self.gamma)
        return "{" + b + ";" + g + "}"


@dataclass
class Counterexample:
    vertex: int
    cell: int
    expected: tuple[int, ...]
    found: tuple[int, ...]


@dataclass
class RegularityCheck:
    ok: bool
    partition: DistancePartition
    counts: np.ndarray  # (V, rho+1) per-cell neighbor counts
    numbers: Optional[IntersectionNumbers]
    counterexample: Optional[Counterexample]


def _code_ids(spec: GraphSpec, code) -> np.ndarray:
    if isinstance(code, Code):
        if code.spec != spec:
            raise VerificationError("code belongs to a different graph")
        return code.ids
    return np.asarray(sorted(int(i) for i in code), dtype=np.int64)


def distance_partition(spec: GraphSpec, code) -> DistancePartition:
    """Breadth-first distance cells from the code; rho = #layers - 1."""
    ids = _code_ids(spec, code)
    if len(ids) == 0:
        raise VerificationError("code is empty")
    table = containment_table(spec, spec.k - 1)
    inc = table.ids
    V = spec.vertex_count
    cell = np.full(V, -1, dtype=np.int64)
    cell[ids] = 0
    frontier = ids
    d = 0
    while (cell == -1).any():
        mark = np.zeros(len(table.sub_index), dtype=bool)
        mark[inc[frontier].ravel()] = True
        nxt = np.nonzero(mark[inc].any(axis=1) & (cell == -1))[0]
        if nxt.size == 0:
            raise VerificationError("some vertices are unreachable from the code")
        d += 1
        cell[nxt] = d
        frontier = nxt
    cells = [np.nonzero(cell == i)[0] for i in range(d + 1)]
    return DistancePartition(rho=d, cells=cells, cell_of=cell)


def cell_neighbor_counts(spec: GraphSpec, cell_of: np.ndarray,
                         n_cells: int) -> np.ndarray:
    """counts[v, c] = number of neighbors of v lying in cell c, for every v."""
    table = containment_table(spec, spec.k - 1)
    inc = table.ids
    V, s = inc.shape
    per_sub = np.zeros((len(table.sub_index), n_cells), dtype=np.int64)
    for c in range(n_cells):
        np.add.at(per_sub[:, c], inc[cell_of == c].ravel(), 1)
    counts = np.zeros((V, n_cells), dtype=np.int64)
    for t in range(s):
        counts += per_sub[inc[:, t]]
    counts[np.arange(V), cell_of] -= s  # each vertex sat in s of its own cliques
    return counts


def check_completely_regular(spec: GraphSpec, code) -> RegularityCheck:
    """Exhaustive equitability check of the distance partition.

    Every vertex's per-cell neighbor counts are compared against the first
    vertex of its cell; on failure the earliest violating vertex in
    canonical order is reported with expected and found counts.
    """
    ids = _code_ids(spec, code)
    if len(ids) == 0:
        raise VerificationError("code is empty")
    if len(ids) == spec.vertex_count:
        raise VerificationError("code is the full vertex set")
    part = distance_partition(spec, ids)
    nc = part.rho + 1
    counts = cell_neighbor_counts(spec, part.cell_of, nc)
    refs = np.zeros((nc, nc), dtype=np.int64)
    for c in range(nc):
        refs[c] = counts[part.cells[c][0]]
    bad = np.nonzero((counts != refs[part.cell_of]).any(axis=1))[0]
    if bad.size:
        v = int(bad[0])
        c = int(part.cell_of[v])
        return RegularityCheck(
            ok=False, partition=part, counts=counts, numbers=None,
            counterexample=Counterexample(
                vertex=v, cell=c,
                expected=tuple(int(x) for x in refs[c]),
                found=tuple(int(x) for x in counts[v])))
    # distance cells can never host edges skipping a layer; make sure
    for c in range(nc):
        for c2 in range(nc):
            if abs(c - c2) >= 2 and refs[c][c2] != 0:
                raise VerificationError(
                    f"edge between cells {c} and {c2}: not a distance partition")
    m = spec.valency
    if not all(int(refs[c].sum()) == m for c in range(nc)):
        raise VerificationError("quotient row sums do not match the valency")
    alpha = tuple(int(refs[c][c]) for c in range(nc))
    beta = tuple(int(refs[c][c + 1]) for c in range(nc - 1))
    gamma = tuple(int(refs[c][c - 1]) for c in range(1, nc))
    numbers = IntersectionNumbers(
        alpha=alpha, beta=beta, gamma=gamma,
        quotient=tuple(tuple(int(x) for x in refs[c]) for c in range(nc)))
    return RegularityCheck(ok=True, partition=part, counts=counts,
                           numbers=numbers, counterexample=None)


# ----------------------------------------------------------------------
# Quotient-matrix eigenvalues, exactly
# ----------------------------------------------------------------------

def char_poly(mat: Sequence[Sequence[int]]) -> list[int]:
    """Monic characteristic polynomial coefficients, descending, exact.

    Faddeev-LeVerrier with integer arithmetic; every division is exact.
    """
    n = len(mat)
    a = [[int(x) for x in row] for row in mat]
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs = [1]
    for step in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        assert tr % step == 0
        c = -tr // step
        coeffs.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)]
             for i in range(n)]
    return coeffs


def _synthetic_divide(coeffs: list[int], r: int):
    """Divide a monic poly (descending coeffs) by (x - r); (quotient, remainder)."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + r * out[-1])
    return out[:-1], out[-1]


def code_eigenvalues(quotient: Sequence[Sequence[int]],
                     spec: GraphSpec) -> list[int]:
    """Roots of det(A - x I), found among the graph's eigenvalue ladder.

    Raises VerificationError if the polynomial does not factor completely
    over the ladder, which would mean the quotient matrix cannot belong to
    a completely regular code of this graph.
    """
    coeffs = char_poly(quotient)
    roots: list[int] = []
    for t in theta_ladder(spec):
        while len(coeffs) > 1:
            q, rem = _synthetic_divide(coeffs, t)
            if rem != 0:
                break
            coeffs = q
            roots.append(t)
    if len(coeffs) > 1:
        raise VerificationError(
            f"quotient matrix has an eigenvalue outside the graph spectrum; "
            f"unfactored part {coeffs}")
    return sorted(roots, reverse=True)


def eigenvalue_indices(spec: GraphSpec, values: Sequence[int]) -> list[int]:
    ladder = theta_ladder(spec)
    out = []
    for v in values:
        out.append(ladder.index(v))
    return out


# ----------------------------------------------------------------------
# Design strength
# ----------------------------------------------------------------------

def design_strength(spec: GraphSpec, ids) -> tuple[int, tuple[int, ...]]:
    """Largest t with every t-subobject covered by a constant number of blocks.

    The blocks are the vertices named by ids inside the given level; the
    returned lambdas are the cover counts (lambda_1, ..., lambda_t).
    """
    ids = _code_ids(spec, ids)
    if len(ids) == 0:
        raise VerificationError("empty block set has no strength")
    lambdas: list[int] = []
    for t in range(1, spec.k + 1):
        table = containment_table(spec, t)
        cover = np.bincount(table.ids[ids].ravel(),
                            minlength=len(table.sub_index))
        if (cover != cover[0]).any():
            return t - 1, tuple(lambdas)
        lambdas.append(int(cover[0]))
    return spec.k, tuple(lambdas)


def strength_from_eigenvalues(spec: GraphSpec, values: Sequence[int]) -> int:
    """min{i >= 1 : theta_i is a code eigenvalue} - 1."""
    ladder = theta_ladder(spec)
    present = [i for i in range(1, spec.k + 1) if ladder[i] in values]
    if not present:
        raise VerificationError("code has no eigenvalue below the valency")
    return min(present) - 1


# ----------------------------------------------------------------------
# Size and integrality for covering radius 1
# ----------------------------------------------------------------------

def size_and_integrality_report(spec: GraphSpec, beta0: int, gamma1: int) -> dict:
    """Feasibility screen for a putative {beta0; gamma1} code.

    The size comes from edge double counting, |C| (beta0+gamma1) = |V| gamma1;
    the complementary pair (gamma1, beta0) names the complement of the same
    partition.  The strength-t divisibility conditions require
    [n-i, k-i]_q * gamma1 / (beta0+gamma1) to be an integer for i = 0..t.
    """
    n, k, q = spec.n, spec.k, spec.q
    m = spec.valency
    denom = beta0 + gamma1
    report: dict = {
        "graph": str(spec),
        "beta0": beta0,
        "gamma1": gamma1,
        "complement_pair": {"beta0": gamma1, "gamma1": beta0},
    }
    checks = []
    feasible = True
    if not (0 < gamma1 and 0 < beta0 and denom <= 2 * m):
        report["eigenvalue"] = None
        checks.append({"name": "parameter_range", "ok": False})
        feasible = False
    else:
        eig = m - denom
        ladder = theta_ladder(spec)
        if eig not in ladder[1:]:
            report["eigenvalue"] = eig
            checks.append({"name": "eigenvalue_in_spectrum", "ok": False})
            feasible = False
        else:
            i = ladder.index(eig)
            t = i - 1
            report["eigenvalue"] = eig
            report["eigenvalue_index"] = i
            report["strength"] = t
            size_num = spec.vertex_count * gamma1
            if size_num % denom != 0:
                checks.append({"name": "size_integral", "ok": False})
                report["size"] = None
                feasible = False
            else:
                report["size"] = size_num // denom
                checks.append({"name": "size_integral", "ok": True})
                for i2 in range(t + 1):
                    lam_num = gaussian(n - i2, k - i2, q) * gamma1
                    ok = lam_num % denom == 0
                    checks.append({"name": f"lambda_{i2}_integral", "ok": ok})
                    feasible = feasible and ok
    report["checks"] = checks
    report["feasible"] = feasible
    return report


# ----------------------------------------------------------------------
# Full report
# ----------------------------------------------------------------------

def verify_report(spec: GraphSpec, code, label: Optional[str] = None) -> dict:
    """JSON-ready verification report with stable key order."""
    ids = _code_ids(spec, code)
    if label is None and isinstance(code, Code):
        label = code.label
    report: dict = {
        "graph": str(spec),
        "code_size": int(len(ids)),
    }
    if label:
        report["label"] = label
    if len(ids) == 0:
        report.update({"completely_regular": False, "error": "code is empty"})
        return report
    if len(ids) == spec.vertex_count:
        report.update({"completely_regular": False,
                       "error": "code is the full vertex set"})
        return report
    result = check_completely_regular(spec, ids)
    report["rho"] = result.partition.rho
    report["cells"] = [int(x) for x in result.partition.sizes()]
    if not result.ok:
        ce = result.counterexample
        report["completely_regular"] = False
        report["counterexample"] = {
            "vertex": ce.vertex,
            "cell": ce.cell,
            "expected": list(ce.expected),
            "found": list(ce.found),
        }
        return report
    nums = result.numbers
    report["alpha"] = list(nums.alpha)
    report["beta"] = list(nums.beta)
    report["gamma"] = list(nums.gamma)
    report["quotient"] = [list(r) for r in nums.quotient]
    eigs = code_eigenvalues(nums.quotient, spec)
    report["eigenvalues"] = eigs
    report["eigenvalue_indices"] = eigenvalue_indices(spec, eigs)
    t_rule = strength_from_eigenvalues(spec, eigs)
    t_design, lambdas = design_strength(spec, ids)
    report["strength"] = t_design
    report["lambdas"] = list(lambdas)
    checks = [
        {"name": "equitable", "ok": True},
        {"name": "lloyd_eigenvalues_in_spectrum", "ok": True},
        {"name": "strength_matches_eigenvalue_rule", "ok": t_rule == t_design},
    ]
    if result.partition.rho == 1:
        beta0, gamma1 = nums.beta[0], nums.gamma[0]
        sir = size_and_integrality_report(spec, beta0, gamma1)
        checks.append({"name": "size_formula",
                       "ok": sir.get("size") == len(ids)})
        report["complement_pair"] = sir["complement_pair"]
    report["checks"] = checks
    report["completely_regular"] = all(c["ok"] for c in checks)
    return report
