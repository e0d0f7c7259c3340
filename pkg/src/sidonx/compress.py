"""Compression of a finite integer set into Z_m by an injective Freiman morphism.

For theta in [0, 1) let phi(a) = floor(a m theta) mod m. On the elements
whose fractional part {a m theta} is below 1/k no carry occurs in k-term
sums, so phi is a Freiman k-morphism there; keeping the smallest element of
each fiber makes it injective. Random theta are tried and the one keeping
the most elements wins.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import CertificationFailed, EmptyInput, InvalidOrder
from .verify import is_freiman2, is_freiman_k

log = logging.getLogger(__name__)

THETA_BITS = 128
ONE = 1 << THETA_BITS
BATCH = 16  # trial batch size for the target-reached early exit
MAX_TABLE = 1 << 31


@dataclass(frozen=True)
class Theta:
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v)
        if not 0 <= v < 1:
            raise ValueError(f"theta must lie in [0, 1), got {v}")

    @classmethod
    def dyadic(cls, u: int) -> "Theta":
        return cls(Fraction(u, ONE))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def scaled_numerator(self) -> int | None:
        """u with theta = u / 2**128, or None if theta is not of that form."""
        den = self.value.denominator
        if ONE % den:
            return None
        return self.value.numerator * (ONE // den)

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class CompressionResult:
    theta: Theta
    m: int
    k: int
    b_size: int
    kept: list[int]
    image: list[int]
    collisions_removed: int
    pair_collisions: int  # P_theta: unordered same-fiber pairs inside B_theta
    trials_used: int = 1
    trial_index: int = 0

    @property
    def size(self) -> int:
        return len(self.kept)

    def summary(self) -> dict:
        return {
            "theta": str(self.theta),
            "m": self.m,
            "k": self.k,
            "b_size": self.b_size,
            "c_size": self.size,
            "collisions_removed": self.collisions_removed,
            "pair_collisions": self.pair_collisions,
            "trials_used": self.trials_used,
            "trial_index": self.trial_index,
        }


def as_generator(source) -> np.random.Generator:
    if isinstance(source, np.random.Generator):
        return source
    return np.random.default_rng(source)


def phi_apply(theta, m: int, a: int) -> int:
    """floor(a m theta) mod m in exact integer arithmetic."""
    v = theta.value if isinstance(theta, Theta) else Fraction(theta)
    return (a * m * v.numerator // v.denominator) % m


def sample_theta(source) -> Theta:
    """theta = u / 2**128 with u uniform on [0, 2**128)."""
    rng = as_generator(source)
    return Theta.dyadic(int.from_bytes(rng.bytes(THETA_BITS // 8), "little"))


def averaging_target(n: int, m: int) -> int:
    """floor(n/2 - n^2/(2m)), the size some theta is guaranteed to reach."""
    return (n * m - n * n) // (2 * m)


def _threshold(k: int) -> int:
    # frac < 1/k  <=>  numerator * k < 2**128  <=>  numerator <= (2**128 - 1) // k
    return (ONE - 1) // k


def _prepare(A):
    vals = sorted(A)
    if not vals:
        raise EmptyInput("cannot compress an empty set")
    if any(x == y for x, y in zip(vals, vals[1:])):
        raise ValueError("input contains duplicates; deduplicate first")
    return vals


def _check_order(k):
    if k < 2:
        raise InvalidOrder(f"morphism order must be >= 2, got {k}")


def _kernel(vals, m, k):
    # the compiled kernel keeps an O(m) fiber table
    impl = kernels if m <= MAX_TABLE else kernels.get_backend("python")
    return impl.TrialKernel(vals, m, _threshold(k))


def _exact_select(vals, m, theta: Theta, k):
    num, den = theta.numerator, theta.denominator
    seen = {}
    b = pairs = 0
    kept, image = [], []
    for a in vals:
        floor, rem = divmod(a * m * num, den)
        if k * rem < den:
            r = floor % m
            c = seen.get(r, 0)
            b += 1
            pairs += c
            if not c:
                kept.append(a)
                image.append(r)
            seen[r] = c + 1
    return b, pairs, kept, image


def _certify(res: CompressionResult):
    v = res.theta.value
    for a in res.kept:
        if res.k * ((a * res.m * v.numerator) % v.denominator) >= v.denominator:
            raise CertificationFailed(f"{a} kept but frac(a m theta) >= 1/{res.k}")
    if res.k == 2:
        chk = is_freiman2(res.kept, res.image, v, res.m)
    else:
        chk = is_freiman_k(res.kept, res.image, v, res.m, res.k)
    if not chk:
        raise CertificationFailed("compression map is not an injective Freiman morphism", chk.witness)


def compress_with_theta(A, m: int, theta, k: int = 2, *, certify: bool = True) -> CompressionResult:
    """Compress A for one fixed theta (any exact rational in [0, 1))."""
    _check_order(k)
    if m < 2:
        raise ValueError("m must be >= 2")
    vals = _prepare(A)
    theta = theta if isinstance(theta, Theta) else Theta(theta)
    u = theta.scaled_numerator()
    if u is not None:
        b, pairs, idx, image = _kernel(vals, m, k).select(u)
        kept = [vals[i] for i in idx]
    else:
        b, pairs, kept, image = _exact_select(vals, m, theta, k)
    res = CompressionResult(theta, m, k, b, kept, image, b - len(kept), pairs)
    if certify:
        _certify(res)
    return res


def compress(A, m: int, trials: int = 200, source=None, *, k: int = 2, workers: int = 1,
             stop_at_target: bool = False, certify: bool = True) -> CompressionResult:
    """Best of ``trials`` random dyadic theta; ties go to the earliest trial.

    Theta values are drawn from ``source`` up front, so the result does not
    depend on ``workers``. With ``stop_at_target`` the search ends after the
    first batch of 16 trials in which the averaging target is met.
    """
    _check_order(k)
    if m < 2:
        raise ValueError("m must be >= 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    vals = _prepare(A)
    rng = as_generator(source)
    thetas = [sample_theta(rng) for _ in range(trials)]
    kernel = _kernel(vals, m, k)
    target = averaging_target(len(vals), m)

    scores = []
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for start in range(0, trials, BATCH):
            batch = [t.scaled_numerator() for t in thetas[start:start + BATCH]]
            if pool is None:
                scores.extend(kernel.stats(u) for u in batch)
            else:
                scores.extend(pool.map(kernel.stats, batch))
            if stop_at_target and max(s[1] for s in scores) >= target:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    best = 0
    for i, s in enumerate(scores):
        if s[1] > scores[best][1]:
            best = i
    theta = thetas[best]
    b, pairs, idx, image = kernel.select(theta.scaled_numerator())
    kept = [vals[i] for i in idx]
    res = CompressionResult(theta, m, k, b, kept, image, b - len(kept), pairs,
                            trials_used=len(scores), trial_index=best)
    log.debug("compress n=%d m=%d k=%d: |B|=%d |C|=%d after %d trials", len(vals), m, k, b, len(kept), len(scores))
    if certify:
        _certify(res)
    return res


def compress_k(A, m: int, k: int, trials: int = 200, source=None, **kw) -> CompressionResult:
    """Freiman k-morphism variant: threshold 1/k instead of 1/2."""
    _check_order(k)
    return compress(A, m, trials, source, k=k, **kw)
