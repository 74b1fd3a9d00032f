"""Superlattices of Z^n and exact point counts |P ∩ L'|.

A superlattice L' ⊇ Z^n of finite index is stored through the forward map H
with L' = H^-1 Z^n, so that |P ∩ L'| = |H(P) ∩ Z^n| is an integer-polytope
count. H is kept in row Hermite normal form: upper triangular, positive
diagonal, and every entry above a pivot reduced modulo that pivot. Left
multiplication by a unimodular matrix leaves L' unchanged, which is exactly
the freedom this normal form removes.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, InputError
from .geometry import (Polygon2, PolytopeN, area2, as_intvec, boundary_length,
                       convex_hull_2d, count_in_box, cross, dot)

DEFAULT_BUDGET = 10 ** 8


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(matrix):
    """Row-style HNF of a nonsingular square integer matrix (left unimodular action)."""
    try:
        m = [list(as_intvec(r)) for r in matrix]
    except InputError:
        raise InputError("lattice matrix must have integer entries") from None
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise InputError("lattice matrix must be square")
    for j in range(n):
        for i in range(j + 1, n):
            if m[i][j] == 0:
                continue
            a, b = m[j][j], m[i][j]
            g, x, y = _xgcd(a, b)
            ra, rb = m[j], m[i]
            m[j] = [x * u + y * v for u, v in zip(ra, rb)]
            m[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if m[j][j] == 0:
            raise InputError("lattice matrix is singular")
        if m[j][j] < 0:
            m[j] = [-u for u in m[j]]
        for i in range(j):
            q = m[i][j] // m[j][j]
            if q:
                m[i] = [u - q * v for u, v in zip(m[i], m[j])]
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True, order=True)
class Superlattice:
    """L' = H^-1 Z^n with H in row Hermite normal form."""

    H: tuple

    def __post_init__(self):
        H = tuple(tuple(r) for r in self.H)
        n = len(H)
        for i, row in enumerate(H):
            if len(row) != n:
                raise InputError("H must be square")
            if row[i] <= 0:
                raise InputError("H must have a positive diagonal")
            for j, h in enumerate(row):
                if j < i and h != 0:
                    raise InputError("H must be upper triangular")
                if j > i and not 0 <= h < H[j][j]:
                    raise InputError(f"H[{i}][{j}] = {h} is not reduced modulo H[{j}][{j}]")
        object.__setattr__(self, "H", H)

    @classmethod
    def from_matrix(cls, matrix):
        return cls(hermite_normal_form(matrix))

    @property
    def n(self):
        return len(self.H)

    @property
    def index(self):
        return math.prod(self.H[i][i] for i in range(self.n))

    def apply(self, v):
        return tuple(dot(row, v) for row in self.H)

    def basis(self):
        """Columns of H^-1: a basis of L' with rational coordinates."""
        n = self.n
        inv = [[Fraction(0)] * n for _ in range(n)]
        for col in range(n):
            for i in reversed(range(n)):
                rhs = Fraction(int(i == col)) - sum(self.H[i][k] * inv[k][col]
                                                    for k in range(i + 1, n))
                inv[i][col] = rhs / self.H[i][i]
        return [tuple(inv[i][col] for i in range(n)) for col in range(n)]

    def to_json(self):
        return [list(r) for r in self.H]


def _ordered_factorizations(m, n):
    if n == 1:
        yield (m,)
        return
    for d in range(1, m + 1):
        if m % d == 0:
            for rest in _ordered_factorizations(m // d, n - 1):
                yield (d,) + rest


def enumerate_superlattices(n, m):
    """All superlattices of Z^n of index m, one HNF each, in lexicographic order of H."""
    if n < 1 or m < 1:
        raise InputError("need n >= 1 and m >= 1")
    out = []
    for diag in _ordered_factorizations(m, n):
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for vals in itertools.product(*(range(diag[j]) for _, j in slots)):
            H = [[0] * n for _ in range(n)]
            for i in range(n):
                H[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                H[i][j] = v
            out.append(Superlattice(tuple(map(tuple, H))))
    out.sort()
    return out


def dilation(kvec):
    """The anisotropic dilation diag(k_1, ..., k_n)."""
    kvec = as_intvec(kvec)
    if any(k < 1 for k in kvec):
        raise InputError("dilation factors must be positive")
    n = len(kvec)
    return Superlattice(tuple(tuple(kvec[i] if i == j else 0 for j in range(n))
                              for i in range(n)))


def _check_dims(p, s):
    if p.ambient_dim != s.n:
        raise InputError(f"dimension mismatch: body in {p.ambient_dim}D, lattice in {s.n}D")


def _pick(poly):
    if len(poly.vertices) == 1:
        return 1
    if len(poly.vertices) == 2:
        return boundary_length(poly) // 2 + 1
    return (area2(poly) + boundary_length(poly)) // 2 + 1


def count_points(p, s):
    """|p ∩ L'| computed as |H(p) ∩ Z^n|; Pick's formula in the plane."""
    _check_dims(p, s)
    image = [s.apply(v) for v in p.vertices]
    if isinstance(p, Polygon2):
        return _pick(convex_hull_2d(image))
    img = PolytopeN.from_points(image)
    lo, hi = img.bbox()
    return count_in_box(img.facets, lo, hi)


def _member_scaled(p, u, m):
    """Is u/m in p? u is an integer vector."""
    if isinstance(p, PolytopeN):
        return all(dot(z, u) <= c * m for z, c in p.facets)
    vs = [tuple(m * c for c in v) for v in p.vertices]
    if len(vs) == 1:
        return tuple(u) == vs[0]
    if len(vs) == 2:
        a, b = vs
        return (cross(a, b, u) == 0 and min(a[0], b[0]) <= u[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= u[1] <= max(a[1], b[1]))
    k = len(vs)
    return all(cross(vs[i], vs[(i + 1) % k], u) >= 0 for i in range(k))


def count_points_brute(p, s):
    """Enumerate the L'-points of the bounding box of ``p`` and test membership.

    L'-points are written as u/m with m the index and u integral. The last
    coordinate is chosen first; each earlier one is pinned down by an integer
    row of H given the later ones.
    """
    _check_dims(p, s)
    H, n, m = s.H, s.n, s.index
    lo, hi = p.bbox()
    count = 0

    def rec(i, u):
        nonlocal count
        if i < 0:
            count += _member_scaled(p, u, m)
            return
        rest = sum(H[i][j] * u[j] for j in range(i + 1, n))
        h = H[i][i]
        # H u = m y, row i:  h*u_i + rest = m*y_i, u_i in [m*lo_i, m*hi_i]
        y_lo = -((-(h * m * lo[i] + rest)) // m)
        y_hi = (h * m * hi[i] + rest) // m
        for y in range(y_lo, y_hi + 1):
            ui, r = divmod(m * y - rest, h)
            if r:
                continue
            u[i] = ui
            rec(i - 1, u)
        u[i] = 0

    rec(n - 1, [0] * n)
    return count


@dataclass(frozen=True)
class CountRecord:
    lattice: Superlattice
    count: int


@dataclass(frozen=True)
class Discrepancy:
    lattice: Superlattice
    count_p: int
    count_q: int


@dataclass(frozen=True)
class SweepReport:
    tested: int
    discrepancy: Discrepancy | None

    @property
    def ok(self):
        return self.discrepancy is None

    def to_json(self):
        d = self.discrepancy
        return {
            "tested": self.tested,
            "discrepancy": None if d is None else {
                "H": d.lattice.to_json(), "index": d.lattice.index,
                "count_p": d.count_p, "count_q": d.count_q},
        }


def box_volume(p):
    lo, hi = p.bbox()
    return math.prod(b - a + 1 for a, b in zip(lo, hi))


def budget_from_env(default=DEFAULT_BUDGET):
    raw = os.environ.get("UNICOUNT_BUDGET")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"UNICOUNT_BUDGET must be an integer, got {raw!r}") from None


def _pair_counts(args):
    p, q, s = args
    return count_points(p, s), count_points(q, s)


def sweep(p, q, max_index, budget=DEFAULT_BUDGET, jobs=1):
    """Compare counts on every superlattice of index 1..max_index.

    Stops at the first disagreement in (index, H) order. With ``jobs > 1`` each
    index level is counted in a process pool, but the reported discrepancy is
    still the first one in canonical order.
    """
    if p.ambient_dim != q.ambient_dim:
        raise InputError("bodies live in different dimensions")
    if max_index < 1:
        raise InputError("max_index must be positive")
    work = max_index * max(box_volume(p), box_volume(q))
    if work > budget:
        raise BudgetExceeded(
            f"sweep work {work} (max_index x box volume) exceeds budget {budget}; "
            "lower --max-index or raise UNICOUNT_BUDGET")
    n = p.ambient_dim
    tested = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for m in range(1, max_index + 1):
            lattices = enumerate_superlattices(n, m)
            tasks = [(p, q, s) for s in lattices]
            if pool is None:
                results = map(_pair_counts, tasks)
            else:
                results = pool.map(_pair_counts, tasks, chunksize=16)
            for s, (a, b) in zip(lattices, results):
                tested += 1
                if a != b:
                    return SweepReport(tested, Discrepancy(s, a, b))
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SweepReport(tested, None)
