"""Canonical k-subspaces of GF(q)^n and k-subsets of {1..n}.

A subspace is stored by its reduced row echelon basis.  Each row is packed
into a single integer in base q, column j in digit j, so for q = 2 a row
is a bitmask with column j at bit j and row reduction is word XOR.  Two
Subspace values are equal exactly when they are the same subspace.

The canonical order of subspaces (used for vertex ids) is lexicographic on
the flattened k-by-n matrix of coefficient digits, row major; subsets are
ordered lexicographically on their sorted member lists.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .galois import FieldSpec, make_field, prime_factors


@lru_cache(maxsize=None)
def scalar_field(q: int) -> FieldSpec:
    """GF(q) arithmetic for matrix entries; q any prime power."""
    fac = prime_factors(q)
    if len(fac) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    p = fac[0]
    m = 0
    t = q
    while t > 1:
        t //= p
        m += 1
    return make_field(p, m)


def gaussian(n: int, k: int, q: int) -> int:
    """Number of k-subspaces of GF(q)^n; ordinary binomial at q = 1."""
    if k < 0 or k > n:
        return 0
    if q == 1:
        num = 1
        for i in range(k):
            num = num * (n - i) // (i + 1)
        return num
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def pack_row(digits: Sequence[int], q: int) -> int:
    v = 0
    for d in reversed(list(digits)):
        v = v * q + d
    return v


def unpack_row(row: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(row % q)
        row //= q
    return tuple(out)


class Subspace:
    """A k-dimensional subspace of GF(q)^n, basis in RREF, rows packed base q."""

    __slots__ = ("n", "q", "rows")

    def __init__(self, n: int, q: int, rows: tuple[int, ...]):
        self.n = n
        self.q = q
        self.rows = rows

    @property
    def k(self) -> int:
        return len(self.rows)

    def basis_digits(self) -> list[tuple[int, ...]]:
        return [unpack_row(r, self.n, self.q) for r in self.rows]

    def digit_key(self) -> tuple[int, ...]:
        """Flattened digit matrix, row major: the canonical sort key."""
        out = []
        for r in self.rows:
            out.extend(unpack_row(r, self.n, self.q))
        return tuple(out)

    def vectors(self) -> list[int]:
        """All q^k packed vectors of the subspace."""
        sc = scalar_field(self.q) if self.q > 2 else None
        vs = [0]
        for row in self.rows:
            if self.q == 2:
                vs = vs + [v ^ row for v in vs]
            else:
                new = []
                for c in range(self.q):
                    scaled = _scale_row(row, c, self.n, self.q, sc)
                    new.extend(_add_rows(v, scaled, self.n, self.q, sc) for v in vs)
                vs = new
        return vs

    def contains_vector(self, vec: int) -> bool:
        return _reduce_vector(vec, self.rows, self.n, self.q) == 0

    def serialize(self) -> str:
        return ":".join(format(r, "x") for r in self.rows)

    @classmethod
    def deserialize(cls, text: str, n: int, q: int) -> "Subspace":
        rows = tuple(int(t, 16) for t in text.split(":")) if text else ()
        sub = rref([unpack_row(r, n, q) for r in rows], n, q)
        if sub.rows != rows:
            raise ValueError(f"rows {text!r} are not a reduced echelon basis")
        return sub

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and other.n == self.n
            and other.q == self.q
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.q, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, q={self.q}, rows={list(self.rows)})"


class Subset:
    """A k-subset of {1..n}, members strictly increasing."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Sequence[int]):
        members = tuple(members)
        if any(members[i] >= members[i + 1] for i in range(len(members) - 1)):
            raise ValueError(f"members not strictly increasing: {members}")
        if members and not (1 <= members[0] and members[-1] <= n):
            raise ValueError(f"members out of range [1, {n}]: {members}")
        self.n = n
        self.members = members

    @property
    def k(self) -> int:
        return len(self.members)

    def bitmask(self) -> int:
        return sum(1 << (m - 1) for m in self.members)

    def serialize(self) -> str:
        return ",".join(str(m) for m in self.members)

    @classmethod
    def deserialize(cls, text: str, n: int) -> "Subset":
        members = tuple(int(t) for t in text.split(",")) if text else ()
        return cls(n, members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subset)
            and other.n == self.n
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        return f"Subset(n={self.n}, members={list(self.members)})"


# ----------------------------------------------------------------------
# Row reduction
# ----------------------------------------------------------------------

def _pivot_bit(row: int) -> int:
    return (row & -row).bit_length() - 1


def _rref_bits(vectors: Iterable[int]) -> list[int]:
    rows: list[int] = []  # fully reduced, unique pivots
    for v in vectors:
        for r in rows:
            if v & (r & -r):
                v ^= r
        if v:
            lb = v & -v
            for i, r in enumerate(rows):
                if r & lb:
                    rows[i] = r ^ v
            rows.append(v)
    rows.sort(key=_pivot_bit)
    return rows


def _scale_row(row: int, c: int, n: int, q: int, sc: FieldSpec) -> int:
    if c == 0:
        return 0
    if c == 1:
        return row
    digits = unpack_row(row, n, q)
    return pack_row([sc.mul_i(c, d) for d in digits], q)


def _add_rows(a: int, b: int, n: int, q: int, sc: FieldSpec) -> int:
    if q == 2:
        return a ^ b
    da, db = unpack_row(a, n, q), unpack_row(b, n, q)
    return pack_row([sc.add_i(x, y) for x, y in zip(da, db)], q)


def _reduce_vector(vec: int, rows: Sequence[int], n: int, q: int) -> int:
    """Reduce vec against RREF rows; zero iff vec lies in their span."""
    if q == 2:
        for r in rows:
            if vec & (r & -r):
                vec ^= r
        return vec
    sc = scalar_field(q)
    dv = list(unpack_row(vec, n, q))
    for r in rows:
        dr = unpack_row(r, n, q)
        p = next(j for j, d in enumerate(dr) if d)
        c = dv[p]
        if c:
            for j in range(n):
                dv[j] = sc.sub_i(dv[j], sc.mul_i(c, dr[j]))
    return pack_row(dv, q)


def rref(vectors: Iterable[Sequence[int] | int], n: int, q: int) -> Subspace:
    """Reduced row echelon span of the given vectors.

    Vectors may be digit sequences of length n or packed base-q integers.
    The zero span yields the unique 0-dimensional subspace.
    """
    packed = [int(v) if isinstance(v, (int, np.integer)) else pack_row(v, q)
              for v in vectors]
    if q == 2:
        return Subspace(n, 2, tuple(_rref_bits(packed)))
    sc = scalar_field(q)
    work = [list(unpack_row(v, n, q)) for v in packed]
    out: list[list[int]] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = sc.inv_i(work[r][col])
        if inv != 1:
            work[r] = [sc.mul_i(inv, v) for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                c = work[i][col]
                work[i] = [sc.sub_i(work[i][j], sc.mul_i(c, work[r][j]))
                           for j in range(n)]
        r += 1
        if r == len(work):
            break
    out = work[:r]
    return Subspace(n, q, tuple(pack_row(row, q) for row in out))


def intersection_dim(u: Subspace, w: Subspace) -> int:
    """dim(U cap W) = dim U + dim W - rank of the stacked bases."""
    if u.n != w.n or u.q != w.q:
        raise ValueError("subspaces live in different ambient spaces")
    stacked = rref(list(u.rows) + list(w.rows), u.n, u.q)
    return u.k + w.k - stacked.k


def contains(u: Subspace, w: Subspace) -> bool:
    """True iff W <= U (every basis row of W reduces to zero against U)."""
    if u.n != w.n or u.q != w.q:
        raise ValueError("subspaces live in different ambient spaces")
    if w.k > u.k:
        return False
    return all(_reduce_vector(r, u.rows, u.n, u.q) == 0 for r in w.rows)


def subset_contains(u: Subset, w: Subset) -> bool:
    return set(w.members) <= set(u.members)


def subset_meet(u: Subset, w: Subset) -> int:
    return len(set(u.members) & set(w.members))


# ----------------------------------------------------------------------
# Enumeration in canonical order
# ----------------------------------------------------------------------

@lru_cache(maxsize=32)
def _bitrev_table(n: int) -> np.ndarray:
    return np.array([int(format(i, f"0{n}b")[::-1], 2) for i in range(1 << n)],
                    dtype=np.uint64)


def _enumerate_gf2_rows(n: int, k: int) -> np.ndarray:
    """All RREF matrices as packed bit rows, shape (count, k), canonical order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.uint32)
    chunks = []
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n)
                if c not in pivset]
        f = len(free)
        vals = np.arange(1 << f, dtype=np.uint64)
        rows = np.zeros((1 << f, k), dtype=np.uint32)
        for r in range(k):
            rows[:, r] = np.uint32(1 << piv[r])
        for s, (r, c) in enumerate(free):
            rows[:, r] |= ((vals >> np.uint64(s)) & np.uint64(1)).astype(np.uint32) << np.uint32(c)
        chunks.append(rows)
    allrows = np.concatenate(chunks)
    # canonical order: digit-lex = compare bit-reversed rows, row 0 first
    rev = _bitrev_table(n)
    keys = np.zeros(len(allrows), dtype=np.uint64)
    for r in range(k):
        keys = (keys << np.uint64(n)) | rev[allrows[:, r]]
    order = np.argsort(keys, kind="stable")
    return allrows[order]


def _enumerate_general(n: int, k: int, q: int) -> list[tuple[int, ...]]:
    out = []
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n)
                if c not in pivset]
        for assign in itertools.product(range(q), repeat=len(free)):
            mat = [[0] * n for _ in range(k)]
            for r in range(k):
                mat[r][piv[r]] = 1
            for (r, c), v in zip(free, assign):
                mat[r][c] = v
            out.append(tuple(pack_row(row, q) for row in mat))
    out.sort(key=lambda rows: tuple(
        d for row in rows for d in unpack_row(row, n, q)))
    return out


def enumerate_subspaces(n: int, k: int, q: int) -> list[Subspace]:
    """All k-subspaces of GF(q)^n, strictly sorted in canonical order."""
    if k < 0 or k > n:
        return []
    if q == 2:
        rows = _enumerate_gf2_rows(n, k)
        return [Subspace(n, 2, tuple(int(x) for x in row)) for row in rows]
    return [Subspace(n, q, rows) for rows in _enumerate_general(n, k, q)]


def enumerate_subsets(n: int, k: int) -> list[Subset]:
    """All k-subsets of {1..n} in lexicographic member order."""
    return [Subset(n, c) for c in itertools.combinations(range(1, n + 1), k)]


def enumerate_level(n: int, k: int, q: int):
    """Subsets for q = 1, subspaces otherwise."""
    return enumerate_subsets(n, k) if q == 1 else enumerate_subspaces(n, k, q)


def projective_points(u: Subspace) -> list[Subspace]:
    """The 1-subspaces contained in u, canonical and sorted."""
    if u.q == 2:
        pts = [Subspace(u.n, 2, (v,)) for v in sorted(u.vectors()) if v]
    else:
        sc = scalar_field(u.q)
        seen = {}
        for v in u.vectors():
            if v == 0:
                continue
            digits = unpack_row(v, u.n, u.q)
            lead = next(d for d in digits if d)
            inv = sc.inv_i(lead)
            norm = pack_row([sc.mul_i(inv, d) for d in digits], u.q)
            seen[norm] = True
        pts = [Subspace(u.n, u.q, (v,)) for v in seen]
    pts.sort(key=lambda s: s.digit_key())
    assert len(pts) == gaussian(u.k, 1, u.q)
    return pts


# ----------------------------------------------------------------------
# Subobjects: j-dimensional subspaces of a k-dimensional subspace are the
# products K*B over all RREF j-by-k patterns K.  Because B is in RREF with
# pivot columns forming an identity, K*B is itself already in RREF, so the
# canonical forms come out for free.
# ----------------------------------------------------------------------

@lru_cache(maxsize=128)
def subobject_patterns(k: int, j: int, q: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All RREF patterns, each a j-tuple of digit rows of length k."""
    pats = enumerate_subspaces(k, j, q)
    return tuple(tuple(unpack_row(r, k, q) for r in p.rows) for p in pats)


def apply_pattern(u: Subspace, pattern) -> Subspace:
    """K*B for one pattern K; the result is already in RREF."""
    q, n = u.q, u.n
    rows = []
    if q == 2:
        for prow in pattern:
            acc = 0
            for t, c in enumerate(prow):
                if c:
                    acc ^= u.rows[t]
            rows.append(acc)
    else:
        sc = scalar_field(q)
        for prow in pattern:
            acc = 0
            for t, c in enumerate(prow):
                if c:
                    acc = _add_rows(acc, _scale_row(u.rows[t], c, n, q, sc), n, q, sc)
            rows.append(acc)
    return Subspace(n, q, tuple(rows))


def subspaces_of(u: Subspace, j: int) -> list[Subspace]:
    """All j-subspaces of u, canonical forms."""
    if j < 0 or j > u.k:
        return []
    return [apply_pattern(u, p) for p in subobject_patterns(u.k, j, u.q)]


def subsets_of(s: Subset, j: int) -> list[Subset]:
    return [Subset(s.n, c) for c in itertools.combinations(s.members, j)]
