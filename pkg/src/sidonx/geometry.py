"""Reduction of rational point sets in R^N to integer sets, and back.

A random integer direction u separating all points turns them into n
distinct rationals <x_i, u>; multiplying by the lcm of the denominators gives
integers. Both maps are linear and injective on the point set, so x+y = z+t
holds among points iff it holds among their images.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .compress import as_generator
from .errors import CertificationFailed, UnknownValue
from .extract import extract_b2g
from .verify import is_b2g_vectors, is_sidon_vectors

MAX_RANDOM_ATTEMPTS = 64


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if any(len(p) != self.dim for p in pts):
            raise ValueError(f"every point must have {self.dim} coordinates")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")

    @classmethod
    def from_points(cls, points) -> "PointSet":
        points = [tuple(p) for p in points]
        if not points:
            raise ValueError("empty point set")
        return cls(len(points[0]), tuple(points))

    def __len__(self):
        return len(self.points)

    def padded(self, dim: int) -> "PointSet":
        """Same points embedded in a higher dimension by zero padding."""
        if dim < self.dim:
            raise ValueError("cannot pad to a smaller dimension")
        zeros = (Fraction(0),) * (dim - self.dim)
        return PointSet(dim, tuple(p + zeros for p in self.points))


@dataclass(frozen=True)
class ReductionCertificate:
    direction: tuple[int, ...]
    projected: tuple[Fraction, ...]
    common_denominator: int
    integers: tuple[int, ...]
    min_gap: Fraction | None  # None for a single point
    attempts: int = 1


def dot(x, u) -> Fraction:
    return sum((a * b for a, b in zip(x, u)), Fraction(0))


def _orient(u):
    # first nonzero coordinate positive; negating u preserves distinctness
    for c in u:
        if c:
            return u if c > 0 else tuple(-x for x in u)
    return u


def fallback_direction(ps: PointSet) -> tuple[int, ...]:
    """(1, M, ..., M^(N-1)) with M above twice the integer-scaled coordinate spread."""
    L = lcm(*(c.denominator for p in ps.points for c in p))
    spread = max(max(p[j] for p in ps.points) - min(p[j] for p in ps.points) for j in range(ps.dim))
    M = 2 * int(spread * L) + 1
    return tuple(M ** j for j in range(ps.dim))


def project(ps: PointSet, source=None) -> tuple[tuple[int, ...], tuple[Fraction, ...], int]:
    """Integer direction with pairwise distinct dot products.

    Directions are drawn from [-B, B]^N with B = 2 n^2, doubling B after each
    rejection; after 64 rejections a deterministic separating direction is
    used. Returns ``(direction, projected values, attempts)``.
    """
    n = len(ps)
    rng = random.Random(int(as_generator(source).integers(0, 2 ** 63)))
    B = 2 * n * n
    for attempt in range(1, MAX_RANDOM_ATTEMPTS + 1):
        u = _orient(tuple(rng.randint(-B, B) for _ in range(ps.dim)))
        if any(u):
            vals = tuple(dot(p, u) for p in ps.points)
            if len(set(vals)) == n:
                return u, vals, attempt
        B *= 2
    u = fallback_direction(ps)
    vals = tuple(dot(p, u) for p in ps.points)
    assert len(set(vals)) == n, "fallback direction failed to separate points"
    return u, vals, MAX_RANDOM_ATTEMPTS + 1


def rationalize(values) -> tuple[int, list[int]]:
    """Common denominator D and the integers D * v; exact, so sums transport both ways."""
    values = [Fraction(v) for v in values]
    if len(set(values)) != len(values):
        raise ValueError("values must be pairwise distinct")
    D = lcm(*(v.denominator for v in values)) if values else 1
    return D, [int(v * D) for v in values]


def reduce_points(ps: PointSet, source=None) -> ReductionCertificate:
    u, vals, attempts = project(ps, source)
    D, ints = rationalize(vals)
    srt = sorted(vals)
    gap = min((b - a for a, b in zip(srt, srt[1:])), default=None)
    return ReductionCertificate(u, vals, D, tuple(ints), gap, attempts)


def pullback_points(ps: PointSet, cert: ReductionCertificate, chosen) -> list[tuple[Fraction, ...]]:
    """Original points whose reduced integers lie in ``chosen`` (input order)."""
    chosen = set(chosen)
    index = {v: i for i, v in enumerate(cert.integers)}
    unknown = chosen - index.keys()
    if unknown:
        raise UnknownValue(f"{min(unknown)} is not a reduced value of this point set")
    return [ps.points[index[v]] for v in sorted(chosen, key=index.__getitem__)]


def extract_points(ps: PointSet, g: int = 1, trials: int = 200, source=None, **kw):
    """Certified Sidon (B2[g]) subset of a rational point set.

    Projection and extraction draw from independent child streams of
    ``source``, so the extraction does not depend on how many directions
    were rejected. Returns ``(report, points, certificate)``.
    """
    proj_rng, ext_rng = as_generator(source).spawn(2)
    cert = reduce_points(ps, proj_rng)
    report = extract_b2g(cert.integers, g, trials, ext_rng, **kw)
    points = pullback_points(ps, cert, report.subset)
    chk = is_sidon_vectors(points) if g == 1 else is_b2g_vectors(points, g)
    if not chk:
        raise CertificationFailed("pulled-back points fail the vector-level check", chk.witness)
    return report, points, cert
