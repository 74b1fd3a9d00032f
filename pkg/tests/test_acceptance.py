"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""
import json
import time
from fractions import Fraction

import pytest

from unicount import (convex_hull_2d, count_points, count_points_brute, decompose, dilation,
                      ehrhart_poly, enumerate_superlattices, equal_universal_2d,
                      minkowski_sum, necessary_condition, pick_count, reflect, sweep, synth,
                      theorem1_check, width, width_boundary_formula)
from unicount.cli import main
from unicount.equidecomp import EquidecompCert, Motion, verify_equidecomposition
from unicount.generate import random_polygon, random_polytope, random_segment
from unicount.io import load_body

from oracles import (angular, integer_count, pairwise_sum, primitive_directions,
                     qhull_vertices, rational_count, shoelace2)

RESULTS = []


@pytest.fixture
def criterion(request):
    """Record the outcome of the calling test as one summary line."""
    label = request.function.__doc__.strip()
    info = {}
    yield info
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    extra = ", ".join(f"{k}={v}" for k, v in info.items())
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{extra}]" if extra else "")
    RESULTS.append(line)
    print("\n" + line)


def equal_pairs(rng, n):
    out = []
    while len(out) < n // 2:
        x = random_polygon(rng, box=5, max_points=8)
        out.append(synth(x, random_segment(rng)))
    while len(out) < n:
        r = synth(random_polygon(rng, box=3, max_points=3), random_polygon(rng, box=3, max_points=3))
        if r.equal:
            out.append(r)
    return [(r.p, r.q) for r in out]


@pytest.fixture(scope="module")
def synthesized():
    import random
    return equal_pairs(random.Random(6), 50)


def test_c1_golden_fixture(criterion, fixture_path):
    """criterion 1: hexagon/pentagon golden fixture"""
    start = time.perf_counter()
    x, y = load_body(fixture_path("x.json")), load_body(fixture_path("y.json"))
    p, q = minkowski_sum(x, y), minkowski_sum(x, reflect(y))
    assert (len(p.vertices), len(q.vertices)) == (6, 5)
    assert p == load_body(fixture_path("p_hexagon.json"))
    assert q == load_body(fixture_path("q_pentagon.json"))
    assert shoelace2(_ccw(pairwise_sum(x.vertices, y.vertices))) == 17
    assert shoelace2(_ccw(pairwise_sum(x.vertices, y.vertices, -1))) == 17
    assert equal_universal_2d(p, q).equal
    r = sweep(p, q, 60)
    assert r.ok
    elapsed = time.perf_counter() - start
    criterion.update(tested=r.tested, seconds=f"{elapsed:.2f}")
    assert elapsed < 10


def _ccw(points):
    """Hull vertices in angular order, from the scipy oracle."""
    return angular(qhull_vertices(points))


def test_c2_ehrhart_is_coarser(criterion, fixture_path, capsys):
    """criterion 2: square and X share E_P but not U_P"""
    sq, x = load_body(fixture_path("square.json")), load_body(fixture_path("x.json"))
    for body in (sq, x):
        brute = [integer_count([(k * a, k * b) for a, b in body.vertices]) for k in (1, 2, 3)]
        assert brute == [4, 9, 16]
        assert ehrhart_poly(body).coeffs == (1, 2, 1)
    counts = []
    for name in ("square.json", "x.json"):
        assert main(["count", fixture_path(name), "--dilate", "1,2"]) == 0
        counts.append(json.loads(capsys.readouterr().out)["count"])
    assert counts == [6, 5]
    assert [rational_count(b.vertices, ((1, 0), (0, 2))) for b in (sq, x)] == [6, 5]
    assert not equal_universal_2d(sq, x).equal
    nc = necessary_condition(sq, x)
    assert not nc.passed and nc.witness == (1, 1)
    criterion.update(counts=counts, witness=nc.witness)


def test_c3_count_matches_brute(criterion, rng):
    """criterion 3: count_points == count_points_brute on 10 polygons x 127 lattices"""
    start = time.perf_counter()
    lattices = [s for m in range(1, 13) for s in enumerate_superlattices(2, m)]
    assert len(lattices) == 127
    checked = 0
    for _ in range(10):
        p = random_polygon(rng)
        for s in lattices:
            assert count_points(p, s) == count_points_brute(p, s)
            checked += 1
    elapsed = time.perf_counter() - start
    criterion.update(checked=checked, seconds=f"{elapsed:.2f}")
    assert elapsed < 30


def test_c4_coefficient_identities(criterion, rng):
    """criterion 4: leading coefficient = volume, second = half rvol sum"""
    bodies = [random_polygon(rng) for _ in range(25)]
    bodies += [random_polytope(rng, 3, box=4, max_points=8) for _ in range(10)]
    for b in bodies:
        r = theorem1_check(b)
        assert r.passed, r
        assert isinstance(r.leading, (int, Fraction))
    criterion.update(bodies=len(bodies))


def test_c5_pick(criterion, rng):
    """criterion 5: Pick count == enumeration on 100 polygons"""
    for _ in range(100):
        p = random_polygon(rng, box=8, max_points=12)
        assert pick_count(p) == integer_count(p.vertices) == count_points_brute(p, dilation((1, 1)))
    criterion.update(polygons=100)


def test_c6_decompose_round_trip(criterion, synthesized):
    """criterion 6: decompose round-trip on 50 synthesized equal pairs"""
    for p, q in synthesized:
        w = decompose(p, q)
        assert w.reconstructs(p, q)
        # independent reconstruction through the pairwise-sum hull
        assert convex_hull_2d(pairwise_sum(w.x.vertices, w.y.vertices)).translate(w.shift_p) == p
        assert convex_hull_2d(pairwise_sum(w.x.vertices, w.y.vertices, -1)) \
            .translate(w.shift_q) == q
    criterion.update(pairs=len(synthesized))


def test_c7_widths(criterion, synthesized):
    """criterion 7: equal pairs have equal lattice widths"""
    dirs = list(primitive_directions(5))
    for p, q in synthesized:
        for z in dirs:
            w = width(p, z)
            assert w == width(q, z)
            assert width_boundary_formula(p, z) == w
            assert width_boundary_formula(q, z) == w
    criterion.update(pairs=len(synthesized), directions=len(dirs))


def test_c8_verifier(criterion):
    """criterion 8: verifier accepts a translate, rejects overlapping pieces"""
    sq = convex_hull_2d([(0, 0), (1, 0), (1, 1), (0, 1)])
    moved = sq.translate((3, 0))
    ok = verify_equidecomposition(sq, moved, EquidecompCert(((sq, Motion((3, 0))),), (moved,)))
    assert ok.passed
    big = convex_hull_2d([(0, 0), (2, 0), (2, 2), (0, 2)])
    t1 = convex_hull_2d([(0, 0), (2, 0), (2, 2)])
    t2 = convex_hull_2d([(0, 0), (2, 0), (0, 2)])
    bad = verify_equidecomposition(
        big, big, EquidecompCert(((t1, Motion()), (t2, Motion())), (t1, t2)))
    assert not bad.passed and bad.failed_check == "b"
    area = bad.detail["intersection_area"]
    # oracle: the overlap is the triangle (0,0),(2,0),(1,1)
    assert area > 0 and area == Fraction(shoelace2([(0, 0), (2, 0), (1, 1)]), 2)
    criterion.update(failed_check=bad.failed_check, intersection_area=str(area))
