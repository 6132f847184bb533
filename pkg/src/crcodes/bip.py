"""Binary feasibility search for covering-radius-1 codes over orbit variables.

For a group G with orbits O_1..O_r and quotient matrix B, a G-invariant
code with intersection array {beta0; gamma1} is exactly a binary vector x
(x_i = 1 iff O_i is inside the code) satisfying

    sum_j B_ij x_j = (m - beta0 - gamma1) x_i + gamma1       for every i
    sum_j |O_j| x_j = |V| gamma1 / (beta0 + gamma1)

The solver is a self-contained depth-first search with per-row interval
propagation: writing A = B - theta I with theta = m - beta0 - gamma1 and
appending the cardinality row, each row's achievable sum under the partial
assignment must bracket its right-hand side; rows whose bracket collapses
onto the target force all their free variables.  Exhaustion proves UNSAT;
hitting a node or time budget does not.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graphs import GraphSpec, theta_ladder
from .orbits import OrbitSystem, quotient_matrix
from .verify import Code, VerificationError, size_and_integrality_report

SAT = "SAT"
UNSAT = "UNSAT"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class BipInstance:
    """The orbit-collapsed feasibility system for one (beta0, gamma1) pair."""

    spec: GraphSpec
    B: np.ndarray              # (r, r) quotient matrix
    orbit_sizes: np.ndarray    # (r,)
    beta0: int
    gamma1: int
    description: str = ""

    def __post_init__(self):
        m = self.spec.valency
        if not (self.B.sum(axis=1) == m).all():
            raise VerificationError("quotient row sums differ from the valency")
        scaled = self.B * self.orbit_sizes[:, None]
        if not np.array_equal(scaled, scaled.T):
            raise VerificationError("quotient matrix violates edge-count symmetry")
        denom = self.beta0 + self.gamma1
        if (self.spec.vertex_count * self.gamma1) % denom != 0:
            raise VerificationError(
                f"|V| gamma1 = {self.spec.vertex_count * self.gamma1} is not "
                f"divisible by beta0 + gamma1 = {denom}")

    @property
    def r(self) -> int:
        return len(self.orbit_sizes)

    @property
    def valency(self) -> int:
        return self.spec.valency

    @property
    def target_eigenvalue(self) -> int:
        return self.valency - self.beta0 - self.gamma1

    @property
    def code_size(self) -> int:
        return self.spec.vertex_count * self.gamma1 // (self.beta0 + self.gamma1)

    def rows(self) -> tuple[np.ndarray, np.ndarray]:
        """(A_ext, rhs): r quotient rows with theta folded in, plus cardinality."""
        r = self.r
        A = self.B - self.target_eigenvalue * np.eye(r, dtype=np.int64)
        A_ext = np.vstack([A, self.orbit_sizes[None, :]]).astype(np.int64)
        rhs = np.full(r + 1, self.gamma1, dtype=np.int64)
        rhs[r] = self.code_size
        return A_ext, rhs


def build_instance(spec: GraphSpec, osys: OrbitSystem, beta0: int, gamma1: int,
                   B: Optional[np.ndarray] = None) -> BipInstance:
    if B is None:
        B = quotient_matrix(spec, osys)
    return BipInstance(spec, B, osys.sizes(), beta0, gamma1,
                       description=osys.description)


def feasible_parameters(spec: GraphSpec) -> list[dict]:
    """Integrality-screened (beta0, gamma1) pairs, one row per eigenvalue.

    Only the canonical half gamma1 <= beta0 is listed; complements cover
    the rest.
    """
    m = spec.valency
    out = []
    ladder = theta_ladder(spec)
    for i in range(1, spec.k + 1):
        th = ladder[i]
        s = m - th
        pairs = []
        for gamma1 in range(1, s // 2 + 1):
            rep = size_and_integrality_report(spec, s - gamma1, gamma1)
            if rep["feasible"]:
                pairs.append((s - gamma1, gamma1))
        out.append({"eigenvalue_index": i, "eigenvalue": th,
                    "strength": i - 1, "beta0_plus_gamma1": s, "pairs": pairs})
    return out


@dataclass
class SolveResult:
    status: str
    solutions: list = field(default_factory=list)  # orbit 0/1 arrays
    count: int = 0
    nodes: int = 0
    elapsed: float = 0.0


def solve(inst: BipInstance, mode: str = "first",
          max_nodes: Optional[int] = None,
          max_seconds: Optional[float] = None,
          seed: Optional[int] = None,
          branch_row: str = "slack",
          value_first: int = 1) -> SolveResult:
    """Depth-first feasibility search; UNSAT is a proof, budget is not.

    mode 'first' stops at one solution, 'all' collects every solution,
    'count' only counts them.  Branching picks a free variable of maximum
    absolute coefficient inside a row of minimum slack ('slack') or of
    fewest free variables ('arity'), value 1 first by default; the
    optional seed shuffles only tie-breaks, deterministically.
    """
    if mode not in ("first", "all", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    if branch_row not in ("slack", "arity"):
        raise ValueError(f"unknown branch_row {branch_row!r}")
    A_ext, rhs = inst.rows()
    r = A_ext.shape[1]
    cols = np.ascontiguousarray(A_ext.T)          # cols[j] = column j
    poscols = np.maximum(cols, 0)
    negcols = np.minimum(cols, 0)
    x = np.full(r, -1, dtype=np.int8)
    S = np.zeros(A_ext.shape[0], dtype=np.int64)
    P = poscols.sum(axis=0)
    N = negcols.sum(axis=0)
    tie_rank = np.arange(r)
    if seed is not None:
        rng = np.random.default_rng(seed)
        tie_rank = rng.permutation(r)

    trail: list[int] = []
    result = SolveResult(status=UNSAT)
    t0 = time.monotonic()

    def assign(j: int, v: int) -> None:
        x[j] = v
        if v:
            S[:] += cols[j]
        P[:] -= poscols[j]
        N[:] -= negcols[j]
        trail.append(j)

    def undo_to(mark: int) -> None:
        while len(trail) > mark:
            j = trail.pop()
            if x[j]:
                S[:] -= cols[j]
            P[:] += poscols[j]
            N[:] += negcols[j]
            x[j] = -1

    maxc = int(np.abs(A_ext).max())

    def propagate() -> bool:
        """Bounds consistency to fixpoint; False on conflict.

        A free variable whose coefficient cannot fit a row's remaining
        slack in either direction is forced: with up = rhs - lo and
        down = hi - rhs, a coefficient c > up forbids value 1 (c > 0) or
        value 0 (c < 0), and c > down forces 1 (c > 0) or 0 (c < 0).
        """
        while True:
            lo = S + N
            hi = S + P
            up = rhs - lo
            down = hi - rhs
            if (up < 0).any() or (down < 0).any():
                return False
            rows_u = np.nonzero(up < maxc)[0]
            rows_d = np.nonzero(down < maxc)[0]
            if rows_u.size == 0 and rows_d.size == 0:
                return True
            free = x == -1
            to_one = np.zeros(r, dtype=bool)
            to_zero = np.zeros(r, dtype=bool)
            if rows_u.size:
                sub = A_ext[rows_u]
                lim = up[rows_u][:, None]
                to_zero |= free & (sub > lim).any(axis=0)
                to_one |= free & (-sub > lim).any(axis=0)
            if rows_d.size:
                sub = A_ext[rows_d]
                lim = down[rows_d][:, None]
                to_one |= free & (sub > lim).any(axis=0)
                to_zero |= free & (-sub > lim).any(axis=0)
            if (to_one & to_zero).any():
                return False
            forced = int(to_one.sum()) + int(to_zero.sum())
            if not forced:
                return True
            for j in np.nonzero(to_one)[0]:
                assign(int(j), 1)
            for j in np.nonzero(to_zero)[0]:
                assign(int(j), 0)

    nz_mask = A_ext != 0

    def pick_branch() -> int:
        free = x == -1
        open_rows = np.nonzero((P > 0) | (N < 0))[0]
        if branch_row == "arity":
            arity = nz_mask[open_rows][:, free].sum(axis=1)
            row = int(open_rows[np.argmin(arity)])
        else:
            slack = np.minimum(rhs - (S + N), (S + P) - rhs)
            row = int(open_rows[np.argmin(slack[open_rows])])
        coeffs = np.abs(A_ext[row]) * free
        best = coeffs.max()
        cand = np.nonzero(coeffs == best)[0]
        return int(cand[np.argmin(tie_rank[cand])])

    # Frames: (trail mark before any value of var j, var j, pending values).
    stack: list[tuple[int, int, list[int]]] = []

    def backtrack() -> bool:
        """Move to the next untried branch; False when the tree is exhausted."""
        while stack:
            mark, j, values = stack[-1]
            if values:
                undo_to(mark)
                assign(j, values.pop(0))
                if propagate():
                    return True
            else:
                stack.pop()
                undo_to(mark)
        return False

    nodes = 0
    alive = propagate()
    while alive:
        if not (x == -1).any():
            result.count += 1
            if mode in ("first", "all"):
                result.solutions.append((x == 1).astype(np.int8).copy())
            if mode == "first":
                result.status = SAT
                break
            alive = backtrack()
            continue
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            result.status = BUDGET_EXCEEDED
            break
        if max_seconds is not None and nodes % 256 == 0 and \
                time.monotonic() - t0 > max_seconds:
            result.status = BUDGET_EXCEEDED
            break
        j = pick_branch()
        stack.append((len(trail), j, [1 - value_first]))
        assign(j, value_first)
        if not propagate():
            alive = backtrack()

    if result.status == UNSAT and result.count > 0:
        result.status = SAT
    result.nodes = nodes
    result.elapsed = time.monotonic() - t0
    return result


def lift(assignment, osys: OrbitSystem, spec: GraphSpec,
         label: Optional[str] = None) -> Code:
    """Union of the selected orbits; must be re-verified on the full graph."""
    sel = np.asarray(assignment).astype(bool)
    if sel.shape != (osys.count,):
        raise VerificationError("assignment length does not match orbit count")
    ids = np.concatenate([osys.orbits[i] for i in np.nonzero(sel)[0]]) \
        if sel.any() else np.array([], dtype=np.int64)
    return Code(spec, ids, label=label)


# ----------------------------------------------------------------------
# Text export: OPB and LP
# ----------------------------------------------------------------------

def _terms(row: np.ndarray) -> list[str]:
    out = []
    for j, c in enumerate(row):
        if c:
            out.append(f"{'+' if c > 0 else '-'}{abs(int(c))} x{j + 1}")
    return out


def export_opb(inst: BipInstance) -> str:
    """Pseudo-Boolean OPB text: r quotient rows plus the cardinality row."""
    A_ext, rhs = inst.rows()
    lines = [f"* #variable= {inst.r} #constraint= {len(rhs)}"]
    lines.append(f"* graph {inst.spec} group {inst.description} "
                 f"beta0 {inst.beta0} gamma1 {inst.gamma1}")
    for i in range(len(rhs)):
        lines.append(" ".join(_terms(A_ext[i])) + f" = {int(rhs[i])} ;")
    return "\n".join(lines) + "\n"


def parse_opb(text: str) -> tuple[list[dict[int, int]], list[int]]:
    """Inverse of export_opb, for round-trip checks: (rows, rhs)."""
    rows, rhs = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("*"):
            continue
        body, target = line.split("=")
        coeffs: dict[int, int] = {}
        for m in re.finditer(r"([+-]\d+)\s+x(\d+)", body):
            coeffs[int(m.group(2)) - 1] = int(m.group(1))
        rows.append(coeffs)
        rhs.append(int(target.replace(";", "").strip()))
    return rows, rhs


def export_lp(inst: BipInstance) -> str:
    """CPLEX LP text with a zero objective (pure feasibility)."""
    A_ext, rhs = inst.rows()
    lines = [f"\\ {inst.spec} group {inst.description} "
             f"beta0={inst.beta0} gamma1={inst.gamma1}",
             "Minimize", " obj: 0", "Subject To"]
    for i in range(len(rhs)):
        name = f"card" if i == inst.r else f"r{i + 1}"
        lines.append(f" {name}: " + " ".join(_terms(A_ext[i])) +
                     f" = {int(rhs[i])}")
    lines.append("Binaries")
    lines.append(" " + " ".join(f"x{j + 1}" for j in range(inst.r)))
    lines.append("End")
    return "\n".join(lines) + "\n"
