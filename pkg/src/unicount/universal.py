"""Deciding U_P = U_Q for lattice polygons and building Minkowski witnesses.

Two lattice polygons have the same universal counting function exactly when
their areas agree and, for every primitive direction class {z, -z}, the edge
lengths |P(z)| + |P(-z)| agree. Such pairs are always of the form X + Y and
X - Y up to lattice translation; :func:`decompose` constructs X and Y.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import InvariantError, NotUniversallyEqual
from .geometry import (Polygon2, area2, class_key, lattice_length, minkowski_sum, neg,
                       polygon_from_edges, primitive, reflect, scale, sub)


@dataclass(frozen=True)
class EdgeProfile:
    """Sorted (class key, |P(z)| + |P(-z)|) pairs, zero entries omitted."""

    entries: tuple

    def as_dict(self):
        return dict(self.entries)

    def get(self, key, default=0):
        return self.as_dict().get(key, default)

    def __add__(self, other):
        acc = defaultdict(int, self.as_dict())
        for k, v in other.entries:
            acc[k] += v
        return EdgeProfile(tuple(sorted(acc.items())))

    def to_json(self):
        return [{"class": list(k), "value": v} for k, v in self.entries]


def _outward_normal(a, b):
    e = sub(b, a)
    z, _ = primitive((e[1], -e[0]))
    return z


def _face_lengths(p):
    """class key -> [|p(z)|, |p(-z)|] with z the key. Segments count on both sides."""
    out = defaultdict(lambda: [0, 0])
    for a, b in p.edges():
        z = _outward_normal(a, b)
        key = class_key(z)
        out[key][0 if z == key else 1] += lattice_length(a, b)
    return dict(out)


def edge_profile(p):
    lengths = _face_lengths(p)
    return EdgeProfile(tuple(sorted((k, a + b) for k, (a, b) in lengths.items() if a + b)))


@dataclass(frozen=True)
class Decision:
    equal: bool
    reason: str
    area2_p: int
    area2_q: int
    witness_class: tuple | None = None

    def __bool__(self):
        return self.equal

    def to_json(self):
        out = {"equal": self.equal}
        if not self.equal:
            out["reason"] = self.reason
            if self.witness_class is not None:
                out["witness_class"] = list(self.witness_class)
        out["area2_p"] = self.area2_p
        out["area2_q"] = self.area2_q
        return out


def _first_profile_difference(pp, qp):
    a, b = pp.as_dict(), qp.as_dict()
    for key in sorted(set(a) | set(b), reverse=True):
        if a.get(key, 0) != b.get(key, 0):
            return key
    return None


def equal_universal_2d(p, q):
    """Exact decision of U_p = U_q in the plane.

    Points and segments are compared through their closed-form counts: a
    segment of lattice length l in primitive direction t has l * gcd(H t) + 1
    points on every superlattice, so only (l, ±t) matters, which is exactly
    what its area (zero) and profile record.
    """
    ap, aq = area2(p), area2(q)
    if not (p.is_full and q.is_full):
        if p.affine_dim != q.affine_dim:
            return Decision(False, "degenerate", ap, aq)
        w = _first_profile_difference(edge_profile(p), edge_profile(q))
        if w is not None:
            return Decision(False, "degenerate", ap, aq, w)
        return Decision(True, "degenerate", ap, aq)
    if ap != aq:
        return Decision(False, "area", ap, aq)
    w = _first_profile_difference(edge_profile(p), edge_profile(q))
    if w is not None:
        return Decision(False, "profile", ap, aq, w)
    return Decision(True, "equal", ap, aq)


# --- Minkowski witnesses ---------------------------------------------------

@dataclass(frozen=True)
class EdgeQuad:
    """Signed edge multiples along the clockwise direction t of one class.

    alpha, beta belong to p(z), p(-z) and gamma, delta to q(z), q(-z), all as
    multiples of t with edges walked clockwise, so alpha, gamma >= 0 and
    beta, delta <= 0.
    """

    key: tuple
    t: tuple
    alpha: int
    beta: int
    gamma: int
    delta: int


def _clockwise_tangent(z):
    # the counterclockwise edge with outward normal z runs along (-z1, z0)
    return (z[1], -z[0])


def _to_ccw(c, t):
    """Clockwise edge vector c*t as the counterclockwise edge of the same face."""
    return scale(-c, t)


def _edge_table(quad):
    """(x, y) multiples of t for a base-case class. Needs one coefficient zero."""
    a, b, g, d = quad.alpha, quad.beta, quad.gamma, quad.delta
    if a - b != g - d:
        raise InvariantError(f"class {quad.key}: profile mismatch in edge quad")
    if d == 0:
        return a, b
    if g == 0:
        return b, a
    if b == 0:
        return g, -d
    if a == 0:
        return d, -g
    raise InvariantError(f"class {quad.key}: no zero face at the base case")


@dataclass(frozen=True)
class DecompWitness:
    x: Polygon2
    y: Polygon2
    shift_p: tuple
    shift_q: tuple

    def reconstructs(self, p, q):
        return (minkowski_sum(self.x, self.y).translate(self.shift_p) == p
                and minkowski_sum(self.x, reflect(self.y)).translate(self.shift_q) == q)


def _shift_onto(body, target):
    shift = sub(target.vertices[0], body.vertices[0])
    if body.translate(shift) != target:
        raise InvariantError("assembled polygon is not a translate of the target")
    return shift


def decompose(p, q):
    """Find polygons X, Y with p = X + Y and q = X - Y up to lattice translation."""
    decision = equal_universal_2d(p, q)
    if not decision.equal:
        raise NotUniversallyEqual(f"not U-equal ({decision.reason})")
    fp, fq = _face_lengths(p), _face_lengths(q)
    lengths = {k: fp.get(k, [0, 0]) + fq.get(k, [0, 0]) for k in set(fp) | set(fq)}

    # Peel a common segment [0, s t] off every class where all four faces are edges.
    stripped = []
    while True:
        full = sorted(k for k, v in lengths.items() if min(v) > 0)
        if not full:
            break
        key = full[0]
        s = min(lengths[key])
        stripped.append(scale(s, _clockwise_tangent(key)))
        lengths[key] = [v - s for v in lengths[key]]

    x_edges, y_edges = [], []
    for seg in stripped:
        x_edges += [seg, neg(seg)]
    for key in sorted(lengths):
        A, B, C, D = lengths[key]
        t = _clockwise_tangent(key)
        xc, yc = _edge_table(EdgeQuad(key, t, A, -B, C, -D))
        x_edges.append(_to_ccw(xc, t))
        y_edges.append(_to_ccw(yc, t))

    x = polygon_from_edges(x_edges)
    y = polygon_from_edges(y_edges)
    shift_p = _shift_onto(minkowski_sum(x, y), p)
    shift_q = _shift_onto(minkowski_sum(x, reflect(y)), q)
    return DecompWitness(x, y, shift_p, shift_q)


@dataclass(frozen=True)
class SynthReport:
    p: Polygon2
    q: Polygon2
    area2_p: int
    area2_q: int
    equal: bool

    def to_json(self):
        return {"P": [list(v) for v in self.p.vertices],
                "Q": [list(v) for v in self.q.vertices],
                "area2_p": self.area2_p, "area2_q": self.area2_q, "equal": self.equal}


def synth(x, y):
    """Form P = x + y and Q = x - y and decide whether they are U-equal."""
    p = minkowski_sum(x, y)
    q = minkowski_sum(x, reflect(y))
    if edge_profile(p) != edge_profile(q):
        raise InvariantError("sum and difference have different edge profiles")
    verdict = equal_universal_2d(p, q)
    if verdict.equal != (area2(p) == area2(q)):
        raise InvariantError("verdict disagrees with the area comparison")
    return SynthReport(p, q, area2(p), area2(q), verdict.equal)

