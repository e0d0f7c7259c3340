import numpy as np
import pytest

from conftest import brute_b2g, brute_sidon
from sidonx.errors import CertificationFailed, CompositeModulus
from sidonx.singer import PlanarDifferenceSet, lifted_cover, sidon_cover, singer_difference_set
from sidonx.verify import is_cover, is_perfect_difference_set

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def _diffs_once(D, N):
    diffs = sorted((a - b) % N for a in D for b in D if a != b)
    return diffs == list(range(1, N))


@pytest.mark.parametrize("q", SMALL_PRIMES + [17, 31])
def test_difference_set(q):
    D = singer_difference_set(q)
    N = q * q + q + 1
    assert D.modulus == N and len(D.elements) == q + 1
    assert _diffs_once(D.elements, N)


def test_from_elements():
    assert PlanarDifferenceSet.from_elements({1, 2, 4}, 7).q == 2
    assert PlanarDifferenceSet.from_elements({0, 1, 3, 9}, 13).q == 3
    with pytest.raises(CertificationFailed):
        PlanarDifferenceSet.from_elements({0, 1, 2}, 7)


def test_composite_q():
    with pytest.raises(CompositeModulus):
        singer_difference_set(4)


def test_cover_of_124():
    D = PlanarDifferenceSet.from_elements({1, 2, 4}, 7)
    cov = sidon_cover(D)
    assert [set(b) for b in cov.blocks.tolist()] == [{0, 1, 3}, {0, 6, 2}, {0, 4, 5}]
    assert set(np.unique(cov.blocks)) == set(range(7))


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_sidon_cover_blocks(q):
    cov = sidon_cover(singer_difference_set(q))
    N = q * q + q + 1
    assert cov.blocks.shape == (q + 1, q + 1)
    assert all(0 in row for row in cov.blocks.tolist())
    assert is_cover(cov.blocks, N)
    for row in cov.blocks.tolist():
        assert brute_sidon(row, N)
    assert not cov.blocks.flags.writeable


def test_lift_g1_is_identity():
    D = singer_difference_set(5)
    assert np.array_equal(lifted_cover(D, 1).blocks, sidon_cover(D).blocks)


def test_lift_example():
    D = PlanarDifferenceSet.from_elements({1, 2, 4}, 7)
    cov = lifted_cover(D, 2)
    assert cov.modulus == 14
    assert set(cov.blocks[0].tolist()) == {0, 7, 1, 8, 3, 10}
    for row in cov.blocks.tolist():
        assert brute_b2g(row, 2, 14)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("g", [2, 3, 4])
def test_lifted_cover_brute(q, g):
    cov = lifted_cover(singer_difference_set(q), g)
    M = g * (q * q + q + 1)
    assert cov.blocks.shape == (q + 1, g * (q + 1))
    assert is_cover(cov.blocks, M)
    for row in cov.blocks.tolist():
        assert brute_b2g(row, g, M)
        assert not brute_b2g(row, g - 1, M) if g > 1 else True


def test_large_q_uses_translate_certificate():
    cov = sidon_cover(singer_difference_set(353))
    assert cov.certification == "translate"
    assert is_perfect_difference_set(singer_difference_set(353).elements, 353 * 353 + 354)
