import random
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest

from sidonx.errors import UnknownValue
from sidonx.geometry import (PointSet, ReductionCertificate, dot, extract_points, fallback_direction, project,
                             pullback_points, rationalize, reduce_points)

SQUARE = PointSet(2, ((0, 0), (1, 0), (0, 1), (1, 1)))


def brute_vec_sidon(points):
    sums = [tuple(a + b for a, b in zip(x, y)) for x, y in combinations_with_replacement(points, 2)]
    return len(sums) == len(set(sums))


def test_point_set_validation():
    with pytest.raises(ValueError):
        PointSet(2, ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        PointSet(2, ((0, 0), (1,)))
    assert SQUARE.padded(4).points[3] == (1, 1, 0, 0)


def test_dot_products():
    assert [dot(p, (1, 2)) for p in SQUARE.points] == [0, 1, 2, 3]
    assert [dot(p, (1, 1)) for p in SQUARE.points] == [0, 1, 1, 2]


def test_project_separates():
    u, vals, attempts = project(SQUARE, 0)
    assert len(set(vals)) == 4 and attempts >= 1
    assert next(c for c in u if c) > 0
    single = PointSet(3, ((1, 2, 3),))
    assert len(project(single, 1)[1]) == 1


def test_fallback_direction_separates():
    rng = random.Random(0)
    pts = {tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)) for _ in range(40)}
    ps = PointSet(3, tuple(pts))
    u = fallback_direction(ps)
    assert len({dot(p, u) for p in ps.points}) == len(ps)


def test_rationalize():
    assert rationalize([Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)]) == (6, [3, 4, 5])
    assert rationalize([4, 9]) == (1, [4, 9])
    D, ints = rationalize([0, Fraction(1, 3), Fraction(1, 2), Fraction(5, 6)])
    assert D == 6 and ints == [0, 2, 3, 5]
    assert ints[0] + ints[3] == ints[1] + ints[2]


def test_pullback():
    cert = ReductionCertificate((1, 2), (0, 1, 2, 3), 1, (0, 1, 2, 3), Fraction(1))
    assert pullback_points(SQUARE, cert, []) == []
    assert pullback_points(SQUARE, cert, [0, 1, 2, 3]) == list(SQUARE.points)
    chosen = pullback_points(SQUARE, cert, [0, 1, 3])
    assert chosen == [(0, 0), (1, 0), (1, 1)] and brute_vec_sidon(chosen)
    with pytest.raises(UnknownValue):
        pullback_points(SQUARE, cert, [7])


def test_equation_transport_forward():
    rng = random.Random(2)
    pts = [(rng.randint(0, 3), rng.randint(0, 3), Fraction(rng.randint(0, 3), 2)) for _ in range(60)]
    ps = PointSet.from_points(dict.fromkeys(pts))
    cert = reduce_points(ps, 3)
    P, Z = ps.points, cert.integers
    for _ in range(2000):
        i, h, k, l = (rng.randrange(len(P)) for _ in range(4))
        lhs = tuple(a + b for a, b in zip(P[i], P[h]))
        rhs = tuple(a + b for a, b in zip(P[k], P[l]))
        if lhs == rhs:
            assert Z[i] + Z[h] == Z[k] + Z[l]
    assert all(Fraction(z) == v * cert.common_denominator for z, v in zip(Z, cert.projected))


def _random_points(n, dim, seed):
    rng = np.random.default_rng(seed)
    pts = set()
    while len(pts) < n:
        nums = rng.integers(-1000, 1000, dim)
        dens = rng.integers(1, 50, dim)
        pts.add(tuple(Fraction(int(a), int(b)) for a, b in zip(nums, dens)))
    return PointSet(dim, tuple(sorted(pts)))


def test_extract_points():
    ps = _random_points(800, 4, 1)
    rep, pts, cert = extract_points(ps, trials=40, source=5)
    assert len(pts) == rep.size and brute_vec_sidon(pts)
    assert set(pts) <= set(ps.points)


def test_extract_points_b2g():
    ps = _random_points(300, 2, 2)
    rep, pts, _ = extract_points(ps, g=2, trials=20, source=1)
    sums = {}
    for x, y in combinations_with_replacement(pts, 2):
        s = tuple(a + b for a, b in zip(x, y))
        sums[s] = sums.get(s, 0) + 1
    assert max(sums.values()) <= 2


def test_dimension_independence():
    rng = random.Random(4)
    vals = sorted({Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 9)) for _ in range(600)})
    base = PointSet(1, tuple((v,) for v in vals))
    sizes = {dim: extract_points(base.padded(dim), trials=30, source=11)[0].size for dim in (1, 3, 8)}
    assert len(set(sizes.values())) == 1
