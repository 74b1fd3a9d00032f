"""Seeded random lattice polygons and polytopes for fuzzing and property tests."""
import random

from .errors import DegenerateError
from .geometry import PolytopeN, convex_hull_2d


def random_polygon(rng, box=8, max_points=12, full=True):
    """Hull of 3..max_points random points in [-box, box]^2."""
    while True:
        k = rng.randint(3, max_points)
        pts = [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(k)]
        poly = convex_hull_2d(pts)
        if poly.is_full or not full:
            return poly


def random_polytope(rng, n=3, box=4, max_points=8):
    while True:
        k = rng.randint(n + 1, max_points)
        pts = [tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(k)]
        try:
            return PolytopeN.from_points(pts)
        except DegenerateError:
            continue


def random_segment(rng, box=4):
    while True:
        a = (rng.randint(-box, box), rng.randint(-box, box))
        b = (rng.randint(-box, box), rng.randint(-box, box))
        if a != b:
            return convex_hull_2d([a, b])


def rng_from_seed(seed):
    return random.Random(seed)
