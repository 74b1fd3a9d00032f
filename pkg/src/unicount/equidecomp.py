"""Checking G_tr-equidecomposition certificates between two lattice polygons.

A certificate lists pieces of p, each with a motion (optional reflection
through the origin, then an integer translation), and the matching pieces of
q. The verifier only checks; it never searches for a certificate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .geometry import (Polygon2, add, area2, as_intvec, convex_hull_2d, hull_2d, neg,
                       point_in_convex, shoelace2)


@dataclass(frozen=True)
class Motion:
    translate: tuple = (0, 0)
    reflected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "translate", as_intvec(self.translate, 2))
        if not isinstance(self.reflected, bool):
            raise InputError("motion.reflected must be a boolean")

    def apply(self, piece):
        vs = [neg(v) if self.reflected else v for v in piece.vertices]
        return convex_hull_2d([add(v, self.translate) for v in vs])

    def to_json(self):
        return {"translate": list(self.translate), "reflected": self.reflected}


@dataclass(frozen=True)
class EquidecompCert:
    pieces_p: tuple  # (Polygon2, Motion) pairs
    pieces_q: tuple  # Polygon2

    def __post_init__(self):
        if len(self.pieces_p) != len(self.pieces_q):
            raise InputError("certificate sides have different numbers of pieces")
        for entry in self.pieces_p:
            if len(entry) != 2 or not isinstance(entry[0], Polygon2) \
                    or not isinstance(entry[1], Motion):
                raise InputError("each p-side entry must be a (polygon, motion) pair")


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    failed_check: str | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"pass": self.passed, "failed_check": self.failed_check,
                "detail": _jsonable(self.detail)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _segments(verts):
    if len(verts) == 1:
        return []
    if len(verts) == 2:
        return [tuple(verts)]
    return [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]


def _segment_crossing(a, b, c, d):
    """Intersection point of two non-parallel closed segments, or None."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        return None
    qa = (c[0] - a[0], c[1] - a[1])
    t = Fraction(qa[0] * s[1] - qa[1] * s[0], den)
    u = Fraction(qa[0] * r[1] - qa[1] * r[0], den)
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (a[0] + t * r[0], a[1] + t * r[1])
    return None


def convex_intersection(a, b):
    """Hull of the intersection of two closed convex bodies given by canonical vertex tuples."""
    cand = [v for v in a if point_in_convex(v, b)]
    cand += [v for v in b if point_in_convex(v, a)]
    for (p1, p2), (q1, q2) in itertools.product(_segments(a), _segments(b)):
        x = _segment_crossing(p1, p2, q1, q2)
        if x is not None:
            cand.append(x)
    return hull_2d(tuple(Fraction(c) for c in v) for v in cand)


def _faces(verts):
    out = {(), tuple(verts)}
    out.update((v,) for v in verts)
    if len(verts) >= 3:
        out.update(hull_2d(e) for e in _segments(verts))
    return out


def _in_boundary(piece, whole):
    """Does the piece lie in the boundary of ``whole``?"""
    if not whole.is_full:
        return True
    return any(all(point_in_convex(v, e) for v in piece.vertices) for e in _segments(
        whole.vertices))


def _check_side(pieces, whole, side):
    for i, piece in enumerate(pieces):
        for v in piece.vertices:
            if not whole.contains(v):
                return "a", {"side": side, "piece": i, "vertex": list(v)}
    return None


def _check_overlap(pieces, side):
    full = [(i, pc) for i, pc in enumerate(pieces) if pc.is_full]
    for (i, a), (j, b) in itertools.combinations(full, 2):
        inter = convex_intersection(a.vertices, b.vertices)
        ar = Fraction(shoelace2(inter), 2)
        if ar > 0:
            return "b", {"side": side, "pieces": [i, j], "intersection_area": ar}
    return None


def _check_area(pieces, whole, side):
    total = sum(area2(pc) for pc in pieces)
    if total != area2(whole):
        return "c", {"side": side, "pieces_area2": total, "whole_area2": area2(whole)}
    return None


def _check_faces(pieces, side):
    for (i, a), (j, b) in itertools.combinations(enumerate(pieces), 2):
        inter = convex_intersection(a.vertices, b.vertices)
        if inter not in _faces(a.vertices) or inter not in _faces(b.vertices):
            return "d", {"side": side, "pieces": [i, j],
                         "intersection": [list(v) for v in inter]}
    return None


def verify_equidecomposition(p, q, cert):
    """Run checks (a) containment, (b) disjoint interiors, (c) area sums,
    (d) face-to-face intersections, (e) motions, (f) boundary pieces, in that
    order, and report the first failure."""
    if not isinstance(cert, EquidecompCert):
        raise InputError("expected an EquidecompCert")
    ps = [pc for pc, _ in cert.pieces_p]
    motions = [m for _, m in cert.pieces_p]
    qs = list(cert.pieces_q)
    steps = [
        lambda: _check_side(ps, p, "p") or _check_side(qs, q, "q"),
        lambda: _check_overlap(ps, "p") or _check_overlap(qs, "q"),
        lambda: _check_area(ps, p, "p") or _check_area(qs, q, "q"),
        lambda: _check_faces(ps, "p") or _check_faces(qs, "q"),
        lambda: _check_motions(ps, motions, qs),
        lambda: _check_boundary(ps, qs, p, q),
    ]
    for step in steps:
        failure = step()
        if failure is not None:
            return VerifyReport(False, failure[0], failure[1])
    return VerifyReport(True)


def _check_motions(ps, motions, qs):
    for i, (a, m, b) in enumerate(zip(ps, motions, qs)):
        image = m.apply(a)
        if image != b:
            return "e", {"piece": i, "image": [list(v) for v in image.vertices],
                         "expected": [list(v) for v in b.vertices]}
    return None


def _check_boundary(ps, qs, p, q):
    for i, (a, b) in enumerate(zip(ps, qs)):
        if a.is_full:
            continue
        if _in_boundary(a, p) != _in_boundary(b, q):
            return "f", {"piece": i, "p_boundary": _in_boundary(a, p),
                         "q_boundary": _in_boundary(b, q)}
    return None


__all__ = ["Motion", "EquidecompCert", "VerifyReport", "convex_intersection",
           "verify_equidecomposition"]
