"""Ehrhart polynomials, relative facet volumes, and lattice width."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateError, InputError, InvariantError
from .geometry import (Polygon2, area2, boundary_length, class_key, count_in_box,
                       det, dot, neg, require_primitive, solve_exact, sub,
                       support_face, triangulate, volume)


def _frac_str(x):
    return str(Fraction(x))


@dataclass(frozen=True)
class EhrhartPoly:
    coeffs: tuple  # coeffs[i] multiplies k**i

    def __call__(self, k):
        return sum(c * k ** i for i, c in enumerate(self.coeffs))

    @property
    def degree(self):
        return max((i for i, c in enumerate(self.coeffs) if c), default=0)

    def to_json(self):
        return {"coeffs": [_frac_str(c) for c in self.coeffs]}


def _require_full(p):
    if not p.is_full:
        raise DegenerateError("operation needs a full-dimensional body")


def dilated_count(p, k):
    """|kP ∩ Z^n| by scanning the box of kP against the dilated facets."""
    lo, hi = p.bbox()
    facets = [(z, k * c) for z, c in p.facets]
    return count_in_box(facets, tuple(k * a for a in lo), tuple(k * b for b in hi))


def ehrhart_poly(p):
    """Interpolate E_P from the counts at k = 1..n+1 with an exact Vandermonde solve."""
    _require_full(p)
    n = p.ambient_dim
    ks = range(1, n + 2)
    rows = [[k ** i for i in range(n + 1)] for k in ks]
    counts = [dilated_count(p, k) for k in ks]
    return EhrhartPoly(tuple(solve_exact(rows, counts)))


def _facet_rvol(face, zeta):
    # each simplex: Gram det of its edge vectors = (m |zeta|)^2 with m integer
    nn = dot(zeta, zeta)
    d = len(zeta) - 1
    total = 0
    for simplex in triangulate(face):
        if len(simplex) != d + 1:
            raise InvariantError("facet triangulation produced a wrong-size simplex")
        edges = [sub(v, simplex[0]) for v in simplex[1:]]
        gram = [[dot(a, b) for b in edges] for a in edges]
        q, r = divmod(det(gram), nn)
        root = math.isqrt(q)
        if r or root * root != q:
            raise InvariantError("rvol not rational")
        total += root
    return Fraction(total, math.factorial(d))


def rvol_facet(p, z):
    """Relative volume of the support face p(z); zero unless it is a facet."""
    z = require_primitive(z)
    face = support_face(p, z)
    if face.dim != p.ambient_dim - 1 or not p.is_full:
        return Fraction(0)
    return _facet_rvol(face.vertices, z)


@dataclass(frozen=True)
class FaceVolume:
    face: object
    rvol: Fraction


def facet_volumes(p):
    _require_full(p)
    out = []
    for z, _ in p.facets:
        face = support_face(p, z)
        out.append(FaceVolume(face, _facet_rvol(face.vertices, z)))
    return out


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    leading: Fraction
    volume: Fraction
    second: Fraction
    half_rvol_sum: Fraction

    def to_json(self):
        return {"pass": self.passed, "leading": _frac_str(self.leading),
                "volume": _frac_str(self.volume), "second": _frac_str(self.second),
                "half_rvol_sum": _frac_str(self.half_rvol_sum)}


def theorem1_check(p):
    """Leading coefficient equals the volume; the next one is half the facet rvol sum."""
    e = ehrhart_poly(p)
    n = p.ambient_dim
    vol = volume(p)
    half = sum((f.rvol for f in facet_volumes(p)), Fraction(0)) / 2
    lead, second = e.coeffs[n], e.coeffs[n - 1]
    return CheckReport(lead == vol and second == half, lead, vol, second, half)


@dataclass(frozen=True)
class NecessaryReport:
    passed: bool
    tested: int
    witness: tuple | None = None
    values: dict = field(default_factory=dict)

    def to_json(self):
        out = {"pass": self.passed, "tested": self.tested}
        if self.witness is not None:
            out["witness_class"] = list(self.witness)
            out["values"] = {k: _frac_str(v) for k, v in self.values.items()}
        return out


def necessary_condition(p, q):
    """rvol p(z) + rvol p(-z) == rvol q(z) + rvol q(-z) over every facet normal class.

    Classes are visited in descending order of their canonical key; the first
    violated class is reported.
    """
    _require_full(p)
    _require_full(q)
    if p.ambient_dim != q.ambient_dim:
        raise InputError("bodies live in different dimensions")
    classes = sorted({class_key(z) for z, _ in p.facets} | {class_key(z) for z, _ in q.facets},
                     reverse=True)
    for z in classes:
        vals = {"p_plus": rvol_facet(p, z), "p_minus": rvol_facet(p, neg(z)),
                "q_plus": rvol_facet(q, z), "q_minus": rvol_facet(q, neg(z))}
        if vals["p_plus"] + vals["p_minus"] != vals["q_plus"] + vals["q_minus"]:
            return NecessaryReport(False, len(classes), z, vals)
    return NecessaryReport(True, len(classes))


def width(p, z):
    """Lattice width max z.(x - y) over the body."""
    z = require_primitive(z)
    vals = [dot(z, v) for v in p.vertices]
    return max(vals) - min(vals)


def width_boundary_formula(p, z):
    """Width recomputed as half the sum of |z.e| over planar edges e."""
    if not isinstance(p, Polygon2):
        raise InputError("boundary width formula is planar only")
    z = require_primitive(z)
    s = sum(abs(dot(z, e)) for e in p.edge_vectors())
    if s % 2:
        raise InvariantError("odd boundary width sum")
    return s // 2


def pick_count(p):
    """Lattice points of a full-dimensional polygon via Pick's formula."""
    if not isinstance(p, Polygon2) or not p.is_full:
        raise DegenerateError("Pick's formula needs a full-dimensional polygon")
    return (area2(p) + boundary_length(p)) // 2 + 1
