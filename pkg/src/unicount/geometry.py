"""Exact integer geometry for lattice polygons and polytopes.

Points and directions are plain tuples of Python ints. Nothing in here
touches floating point; the few places that need division use
``fractions.Fraction``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key

from .errors import DegenerateError, InputError, InvariantError


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def scale(c, u):
    return tuple(c * a for a in u)


def cross(o, a, b):
    """Signed doubled area of the triangle (o, a, b); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def as_intvec(v, n=None):
    try:
        out = tuple(v)
    except TypeError:
        raise InputError(f"not a vector: {v!r}") from None
    if not out or not all(isinstance(c, int) and not isinstance(c, bool) for c in out):
        raise InputError(f"expected a nonempty integer vector, got {v!r}")
    if n is not None and len(out) != n:
        raise InputError(f"expected dimension {n}, got {len(out)}")
    return out


def primitive(v):
    """Split a nonzero integer vector into (primitive direction, positive multiplier)."""
    v = tuple(v)
    g = math.gcd(*v)
    if g == 0:
        raise InputError("zero direction")
    return tuple(c // g for c in v), g


def require_primitive(z):
    z = as_intvec(z)
    if math.gcd(*z) != 1:
        raise InputError(f"direction {z} is not primitive")
    return z


def class_key(z):
    """Canonical representative of {z, -z}: the lexicographically larger one."""
    z = tuple(z)
    return max(z, neg(z))


def lattice_length(a, b):
    """Number of lattice subsegments of [a, b]; 0 when a == b."""
    return math.gcd(*sub(b, a))


# --- exact linear algebra ---------------------------------------------------

def det(rows):
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(vectors):
    rows = [[Fraction(c) for c in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_dim(points):
    points = list(points)
    if not points:
        return -1
    return rank([sub(p, points[0]) for p in points[1:]])


def normal_of(vectors):
    """Integer vector orthogonal to n-1 vectors in Z^n (generalized cross product)."""
    n = len(vectors) + 1
    out = []
    for i in range(n):
        minor = [[v[j] for j in range(n) if j != i] for v in vectors]
        out.append((-1) ** i * det(minor))
    return tuple(out)


def solve_exact(a, b):
    """Solve the square system a x = b over the rationals."""
    n = len(a)
    m = [[Fraction(c) for c in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise InvariantError("singular interpolation system")
        m[col], m[piv] = m[piv], m[col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


# --- planar hulls and polygons ------------------------------------------------

def hull_2d(points):
    """Monotone chain hull of planar points; works for ints and Fractions.

    Returns the extreme points counterclockwise starting at the lexicographic
    minimum. One or two entries for points and segments.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return tuple(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def _half(v):
    # 0 for angles in (-pi/2, pi/2], 1 for (pi/2, 3pi/2]
    return 0 if v[0] > 0 or (v[0] == 0 and v[1] > 0) else 1


def _angle_cmp(u, v):
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def sort_by_angle(vectors):
    """Order edge vectors the way a canonical counterclockwise walk meets them."""
    return sorted(vectors, key=cmp_to_key(_angle_cmp))


def shoelace2(verts):
    n = len(verts)
    if n < 3:
        return 0
    return sum(verts[i][0] * verts[(i + 1) % n][1] - verts[(i + 1) % n][0] * verts[i][1]
               for i in range(n))


@dataclass(frozen=True)
class Polygon2:
    """Convex lattice polygon in the plane, possibly a segment or a point.

    ``vertices`` is the canonical cycle: extreme points only, counterclockwise,
    starting at the lexicographic minimum. Build instances with
    :func:`convex_hull_2d` or :meth:`from_points`.
    """

    vertices: tuple

    def __post_init__(self):
        vs = tuple(as_intvec(v, 2) for v in self.vertices)
        if not vs:
            raise InputError("polygon needs at least one vertex")
        if hull_2d(vs) != vs:
            raise InputError(f"vertices {vs} are not in canonical hull order")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_points(cls, points):
        return convex_hull_2d(points)

    ambient_dim = 2

    @property
    def affine_dim(self):
        return min(len(self.vertices) - 1, 2)

    @property
    def is_full(self):
        return len(self.vertices) >= 3

    def edges(self):
        """Counterclockwise edges (a, b). A segment is a two-edge cycle, a point has none."""
        vs = self.vertices
        if len(vs) == 1:
            return []
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_vectors(self):
        return [sub(b, a) for a, b in self.edges()]

    @cached_property
    def facets(self):
        """(primitive outward normal, offset) per edge of a full-dimensional polygon."""
        if not self.is_full:
            raise DegenerateError("facets need a full-dimensional polygon")
        out = []
        for a, b in self.edges():
            e = sub(b, a)
            z, _ = primitive((e[1], -e[0]))
            out.append((z, dot(z, a)))
        return tuple(out)

    def translate(self, v):
        return Polygon2(tuple(add(p, v) for p in self.vertices))

    def contains(self, x):
        """Closed membership test; ``x`` may have Fraction coordinates."""
        return point_in_convex(x, self.vertices)

    def bbox(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), min(ys)), (max(xs), max(ys))


def point_in_convex(x, verts):
    if len(verts) == 1:
        return tuple(x) == tuple(verts[0])
    if len(verts) == 2:
        a, b = verts
        if cross(a, b, x) != 0:
            return False
        return (min(a[0], b[0]) <= x[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= x[1] <= max(a[1], b[1]))
    n = len(verts)
    return all(cross(verts[i], verts[(i + 1) % n], x) >= 0 for i in range(n))


def convex_hull_2d(points):
    pts = [as_intvec(p, 2) for p in points]
    if not pts:
        raise InputError("empty point set")
    return Polygon2(hull_2d(pts))


def area2(p):
    """Twice the area of a lattice polygon, an integer."""
    return shoelace2(p.vertices)


def boundary_length(p):
    """Total lattice length of the boundary (0 for a point, twice the length for a segment)."""
    return sum(lattice_length(a, b) for a, b in p.edges())


def polygon_from_edges(vectors, start=(0, 0)):
    """Assemble a convex polygon from an edge multiset that sums to zero."""
    vectors = [tuple(v) for v in vectors if any(v)]
    if tuple(map(sum, zip(*vectors))) not in ((), (0, 0)):
        raise InvariantError(f"edge vectors {vectors} do not close up")
    pts = [tuple(start)]
    for v in sort_by_angle(vectors):
        pts.append(add(pts[-1], v))
    return convex_hull_2d(pts)


def minkowski_sum(a, b):
    """Minkowski sum of two planar convex lattice bodies by merging edge sequences."""
    start = add(a.vertices[0], b.vertices[0])
    return polygon_from_edges(a.edge_vectors() + b.edge_vectors(), start)


def reflect(p):
    """Reflection through the origin."""
    return convex_hull_2d([neg(v) for v in p.vertices])


def canonical_translate(p):
    """Translate so the lexicographically minimal vertex sits at the origin."""
    shift = p.vertices[0]
    return p.translate(neg(shift)), shift


def same_up_to_translation(p, q):
    return canonical_translate(p)[0] == canonical_translate(q)[0]


# --- general dimension ------------------------------------------------------

def _full_rank_coords(points, d):
    """Indices of d coordinates on which the affine hull projects bijectively."""
    diffs = [sub(p, points[0]) for p in points[1:]]
    n = len(points[0])
    for idx in itertools.combinations(range(n), d):
        if rank([[v[i] for i in idx] for v in diffs]) == d:
            return idx
    raise InvariantError("no projection preserves the affine hull")


def facet_inequalities(points):
    """Irredundant facet inequalities z.x <= c of a full-dimensional point set."""
    pts = sorted(set(points))
    n = len(pts[0])
    found = set()
    for subset in itertools.combinations(pts, n):
        base = subset[0]
        normal = normal_of([sub(p, base) for p in subset[1:]])
        if not any(normal):
            continue
        z, _ = primitive(normal)
        c = dot(z, base)
        vals = [dot(z, p) for p in pts]
        if all(v <= c for v in vals):
            found.add((z, c))
        elif all(v >= c for v in vals):
            found.add((neg(z), -c))
    return tuple(sorted(found))


def triangulate(points):
    """Pulling triangulation of conv(points), as a list of vertex tuples.

    Cones from the lexicographically smallest vertex over the facets that miss
    it, recursing into each facet inside its own affine hull.
    """
    pts = sorted(set(tuple(p) for p in points))
    d = affine_dim(pts)
    if d == 0:
        return [(pts[0],)]
    coords = _full_rank_coords(pts, d)
    proj = {p: tuple(p[i] for i in coords) for p in pts}
    if d == 1:
        lo = min(pts, key=lambda p: proj[p])
        hi = max(pts, key=lambda p: proj[p])
        return [(lo, hi)]
    apex = min(pts, key=lambda p: proj[p])
    out = []
    for z, c in facet_inequalities(list(proj.values())):
        if dot(z, proj[apex]) == c:
            continue
        face = [p for p in pts if dot(z, proj[p]) == c]
        out.extend((apex,) + s for s in triangulate(face))
    return out


def simplex_volume_times_factorial(simplex):
    base = simplex[0]
    return abs(det([sub(p, base) for p in simplex[1:]]))


@dataclass(frozen=True)
class PolytopeN:
    """Full-dimensional convex lattice polytope in Z^n, n >= 2."""

    vertices: tuple
    facets: tuple

    @classmethod
    def from_points(cls, points):
        pts = sorted(set(as_intvec(p) for p in points))
        if not pts:
            raise InputError("empty point set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise InputError("points of mixed dimension")
        if n < 2:
            raise InputError("polytopes need dimension >= 2")
        if affine_dim(pts) < n:
            raise DegenerateError(f"points span less than dimension {n}")
        facets = facet_inequalities(pts)
        verts = tuple(p for p in pts
                      if rank([z for z, c in facets if dot(z, p) == c]) == n)
        return cls(verts, facets)

    @property
    def ambient_dim(self):
        return len(self.vertices[0])

    affine_dim = ambient_dim
    is_full = True

    def contains(self, x):
        return all(dot(z, x) <= c for z, c in self.facets)

    def bbox(self):
        cols = list(zip(*self.vertices))
        return tuple(map(min, cols)), tuple(map(max, cols))


@dataclass(frozen=True)
class SupportFace:
    direction: tuple
    vertices: tuple
    dim: int


def support_face(p, z):
    """The face of ``p`` on which the functional ``z`` is maximal."""
    z = require_primitive(z)
    if len(z) != p.ambient_dim:
        raise InputError("direction dimension does not match the body")
    vals = [dot(z, v) for v in p.vertices]
    top = max(vals)
    face = tuple(v for v, s in zip(p.vertices, vals) if s == top)
    return SupportFace(z, face, affine_dim(face))


def volume(p):
    """Exact volume from a triangulation of the vertex set."""
    n = p.ambient_dim
    if isinstance(p, Polygon2):
        return Fraction(area2(p), 2)
    total = sum(simplex_volume_times_factorial(s) for s in triangulate(p.vertices))
    return Fraction(total, math.factorial(n))


def count_in_box(facets, lo, hi):
    """Integer points of the box [lo, hi] satisfying every z.x <= c.

    The last coordinate is solved as an interval per row, the rest are scanned.
    """
    n = len(lo)
    total = 0
    for head in itertools.product(*(range(a, b + 1) for a, b in zip(lo[:-1], hi[:-1]))):
        low, high = lo[-1], hi[-1]
        for z, c in facets:
            rest = c - dot(z[:-1], head)
            zn = z[n - 1]
            if zn > 0:
                high = min(high, rest // zn)
            elif zn < 0:
                low = max(low, -(rest // -zn))
            elif rest < 0:
                high = low - 1
                break
        if high >= low:
            total += high - low + 1
    return total
