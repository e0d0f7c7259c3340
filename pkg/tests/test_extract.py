from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from conftest import brute_b2g, brute_sidon
from sidonx.errors import EmptyInput
from sidonx.extract import choose_modulus, extract_b2g, extract_sidon, normalize, pigeonhole_block
from sidonx.gfield import is_prime


def ref_choose(n, c=3, g=1):
    x = Fraction(c) * n / g
    p = 2
    while not (is_prime(p) and p * p + p + 1 >= x):
        p += 1
    return p, g * (p * p + p + 1)


@pytest.mark.parametrize("n,c,g,expected", [
    (10 ** 6, 3, 1, (1733, 3005023)),
    (10 ** 4, 3, 1, (173, 30103)),
    (1, 3, 1, (2, 7)),
    (2000, 3, 1, (79, 6321)),
])
def test_choose_modulus_examples(n, c, g, expected):
    ch = choose_modulus(n, c, g)
    assert (ch.p, ch.m) == expected == ref_choose(n, c, g)


def test_choose_modulus_sweep():
    for n in list(range(1, 300)) + [4999, 10 ** 5]:
        for c, g in ((3, 1), (Fraction(5, 2), 1), (3, 4), (7, 3)):
            ch = choose_modulus(n, c, g)
            assert (ch.p, ch.m) == ref_choose(n, c, g)


def test_choose_modulus_rejects_bad_c():
    with pytest.raises(ValueError):
        choose_modulus(10, 1)


def test_pigeonhole_examples():
    blocks = [[0, 1, 3], [0, 6, 2], [0, 4, 5]]
    assert pigeonhole_block(blocks, [1, 2, 3], 7) == (0, 2)
    assert pigeonhole_block(blocks, range(7), 7) == (0, 3)
    assert pigeonhole_block(blocks, [5], 7) == (2, 1)


def test_normalize():
    assert normalize([3, 9, 15]) == ([0, 1, 2], 3, 6)
    assert normalize([-4]) == ([0], -4, 1)


def test_singleton():
    rep = extract_sidon([42], trials=3, source=0)
    assert rep.subset == [42] and rep.ratio == 1.0


def test_empty():
    with pytest.raises(EmptyInput):
        extract_sidon([])


def test_interval_ten_thousand():
    rep = extract_sidon(range(10 ** 4), source=0)
    assert rep.size >= 19 and brute_sidon(rep.subset)
    assert rep.modulus.m == 30103


def test_squares():
    rep = extract_sidon([k * k for k in range(1, 10 ** 4 + 1)], source=1)
    assert rep.size >= 18 and brute_sidon(rep.subset)


def test_report_self_consistent():
    rng = np.random.default_rng(4)
    A = [int(x) for x in rng.integers(0, 1 << 40, 3000)] + [5, 5]
    rep = extract_sidon(A, trials=50, source=2)
    d = rep.as_dict()
    assert rep.dedup_removed == len(A) - rep.n
    assert d["subset_size"] == len(rep.subset) == rep.intersection
    assert rep.pigeonhole_bound == -(-d["compression"]["c_size"] // (rep.modulus.p + 1))
    assert rep.intersection >= rep.pigeonhole_bound
    assert float(d["ratio"]) == pytest.approx(rep.size / sqrt(rep.n), abs=1e-6)
    assert set(rep.subset) <= set(A)


def test_g1_matches_extract_sidon():
    A = list(range(0, 4000, 3))
    assert extract_b2g(A, 1, 30, 5) == extract_sidon(A, 30, 5)


@pytest.mark.parametrize("g", [2, 3])
def test_b2g_small(g):
    rep = extract_b2g(range(2000), g, trials=50, source=3)
    assert rep.certificate_kind == f"b2g({g})"
    assert brute_b2g(rep.subset, g)


def test_affine_invariance():
    A = list(range(0, 900, 1)) + [5000, 7777]
    base = extract_sidon(A, 30, 8)
    moved = extract_sidon([7 * a - 11 for a in A], 30, 8)
    assert moved.subset == [7 * a - 11 for a in base.subset]


def test_worker_independence():
    A = [k * k for k in range(1, 3000)]
    assert extract_sidon(A, 64, 9).as_dict() == extract_sidon(A, 64, 9, workers=4).as_dict()
