"""Group actions on graph vertices, orbits, and orbit quotient matrices.

A group is given by explicit generator permutations of the vertex ids.
Every generator is checked to be a graph automorphism before it is
accepted: exhaustively for graphs up to 2000 vertices, on a seeded sample
above that.  For a vertex-transitive-free action the orbits induce an
equitable partition, and the orbit quotient matrix A (A_ij = neighbors of
an O_i vertex inside O_j) is recounted from extra orbit members to catch
any non-automorphism that slipped through.

The Singer-type action multiplies vectors of GF(q)^n, read as elements of
GF(q^n), by a fixed power of a primitive element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import subspaces as sp
from .galois import is_prime, make_field
from .graphs import (GraphSpec, adjacency_lists, generate_neighbors,
                     vertex_index)
from .verify import VerificationError

AUTOMORPHISM_EXHAUSTIVE_MAX = 2000


@dataclass
class GroupAction:
    """Generator permutations (full id -> id arrays) on a graph's vertices."""

    spec: GraphSpec
    generators: list
    description: str = ""

    def __post_init__(self):
        V = self.spec.vertex_count
        gens = []
        for g in self.generators:
            g = np.asarray(g, dtype=np.int64)
            if g.shape != (V,) or len(np.unique(g)) != V:
                raise VerificationError("generator is not a vertex permutation")
            gens.append(g)
        self.generators = gens
        for g in gens:
            _check_automorphism(self.spec, g)


def _check_automorphism(spec: GraphSpec, perm: np.ndarray,
                        sample: int = 200, seed: int = 0) -> None:
    V = spec.vertex_count
    if V <= AUTOMORPHISM_EXHAUSTIVE_MAX:
        adj = adjacency_lists(spec)
        mapped = np.sort(perm[adj], axis=1)
        if not np.array_equal(mapped, adj[perm]):
            raise VerificationError("generator is not a graph automorphism")
        return
    rng = random.Random(seed)
    for v in (rng.randrange(V) for _ in range(sample)):
        lhs = sorted(int(perm[w]) for w in generate_neighbors(spec, v))
        rhs = sorted(generate_neighbors(spec, int(perm[v])))
        if lhs != rhs:
            raise VerificationError("generator is not a graph automorphism")


def _field_induced_perm(spec: GraphSpec, move) -> np.ndarray:
    idx = vertex_index(spec)
    perm = np.empty(len(idx), dtype=np.int64)
    for vid, v in enumerate(idx.vertices):
        perm[vid] = idx.id_of(sp.rref([move(r) for r in v.rows],
                                      spec.n, spec.q))
    return perm


def _field_for(spec: GraphSpec, modulus):
    if spec.family != "grassmann":
        raise VerificationError("field actions are defined on Grassmann graphs")
    if not is_prime(spec.q):
        raise VerificationError(
            f"field actions implemented for prime q only, got q={spec.q}")
    return make_field(spec.q, spec.n, modulus)


def singer_action(spec: GraphSpec, exponent: int,
                  modulus: Optional[Sequence[int]] = None) -> GroupAction:
    """Multiplication of GF(q)^n by a^exponent, a primitive in GF(q^n).

    Prime q only: for prime q a packed basis row of a subspace is already
    the index of the corresponding field element, so the action is a field
    multiplication followed by re-canonicalization.
    """
    field = _field_for(spec, modulus)
    factor = field.pow_i(field.generator.index, exponent)
    perm = _field_induced_perm(spec, lambda r: field.mul_i(r, factor))
    return GroupAction(spec, [perm], description=f"singer:{exponent}")


def frobenius_action(spec: GraphSpec, power: int = 1,
                     modulus: Optional[Sequence[int]] = None) -> GroupAction:
    """The field power map v -> v^(q^power) on GF(q^n), GF(q)-linear."""
    field = _field_for(spec, modulus)
    e = spec.q ** (power % spec.n)
    perm = _field_induced_perm(spec, lambda r: field.pow_i(r, e))
    return GroupAction(spec, [perm], description=f"frobenius:{power}")


@dataclass
class OrbitSystem:
    """Orbits of a GroupAction, ids assigned by ascending minimum vertex id."""

    spec: GraphSpec
    orbit_of: np.ndarray          # (V,) orbit id per vertex
    orbits: list                  # list of sorted id arrays
    description: str = ""

    @property
    def count(self) -> int:
        return len(self.orbits)

    def sizes(self) -> np.ndarray:
        return np.array([len(o) for o in self.orbits], dtype=np.int64)

    def representatives(self) -> np.ndarray:
        return np.array([int(o[0]) for o in self.orbits], dtype=np.int64)


def orbit_system(action: GroupAction) -> OrbitSystem:
    """Union of generator-closure classes, scanned in vertex id order."""
    V = action.spec.vertex_count
    orbit_of = np.full(V, -1, dtype=np.int64)
    orbits = []
    for start in range(V):
        if orbit_of[start] != -1:
            continue
        oid = len(orbits)
        stack = [start]
        orbit_of[start] = oid
        members = [start]
        while stack:
            v = stack.pop()
            for g in action.generators:
                w = int(g[v])
                if orbit_of[w] == -1:
                    orbit_of[w] = oid
                    members.append(w)
                    stack.append(w)
        orbits.append(np.array(sorted(members), dtype=np.int64))
    return OrbitSystem(action.spec, orbit_of, orbits,
                       description=action.description)


def quotient_matrix(spec: GraphSpec, osys: OrbitSystem,
                    recount_max: int = 8) -> np.ndarray:
    """Orbit quotient matrix, with row constancy re-verified per orbit.

    Counts from each orbit's representative; recounts from a second member
    always, and from every member when the orbit has at most recount_max
    vertices.  A mismatch means a generator was not an automorphism.
    """
    adj = adjacency_lists(spec)
    r = osys.count
    B = np.zeros((r, r), dtype=np.int64)
    for i, orb in enumerate(osys.orbits):
        row = np.bincount(osys.orbit_of[adj[orb[0]]], minlength=r)
        B[i] = row
        check = orb[1:] if len(orb) <= recount_max else orb[1:2]
        for v in check:
            row2 = np.bincount(osys.orbit_of[adj[int(v)]], minlength=r)
            if not np.array_equal(row, row2):
                raise VerificationError(
                    f"orbit {i} is not equitable: vertex {int(v)} disagrees "
                    f"with representative {int(orb[0])}")
    m = spec.valency
    if not (B.sum(axis=1) == m).all():
        raise VerificationError("quotient matrix row sums differ from valency")
    sizes = osys.sizes()
    if not np.array_equal(B * sizes[:, None], (B * sizes[:, None]).T):
        raise VerificationError("quotient matrix violates edge-count symmetry")
    return B
