"""Arithmetic in GF(q) and its cubic extension GF(q^3), q prime.

Elements of GF(q^3) are coefficient triples ``(c0, c1, c2)`` standing for
``c0 + c1*alpha + c2*alpha**2`` where alpha is a root of the context's
monic irreducible cubic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .errors import CompositeModulus, ExhaustedCandidates, FieldTooLarge

MAX_Q = 1 << 20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if self.q < 2 or not is_prime(self.q):
            raise CompositeModulus(f"{self.q} is not prime")


class CubicElem(NamedTuple):
    c0: int
    c1: int
    c2: int


ONE = CubicElem(1, 0, 0)


@dataclass(frozen=True)
class CubicFieldContext:
    base: PrimeField
    modulus_poly: tuple[int, int, int, int]  # (m0, m1, m2, 1): x^3 + m2 x^2 + m1 x + m0
    primitive: CubicElem

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q^3 - 1."""
        return self.base.q ** 3 - 1


def _poly_has_root(q: int, m0: int, m1: int, m2: int) -> bool:
    return any((x * x * x + m2 * x * x + m1 * x + m0) % q == 0 for x in range(q))


def find_irreducible_cubic(q: int) -> tuple[int, int, int, int]:
    """First rootless monic cubic, scanning (m2, m1, m0) lexicographically.

    A cubic with no root in GF(q) has no linear factor and hence is
    irreducible.
    """
    for m2, m1, m0 in product(range(q), repeat=3):
        if m0 == 0:
            continue  # x divides it
        if not _poly_has_root(q, m0, m1, m2):
            return (m0, m1, m2, 1)
    raise ExhaustedCandidates(f"no irreducible cubic over GF({q})")


def _mul(q: int, mod: tuple[int, int, int, int], a, b) -> CubicElem:
    a0, a1, a2 = a
    b0, b1, b2 = b
    m0, m1, m2 = mod[0], mod[1], mod[2]
    d = [
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 * b2 + a1 * b1 + a2 * b0,
        a1 * b2 + a2 * b1,
        a2 * b2,
    ]
    # fold x^4 then x^3 using x^3 = -(m2 x^2 + m1 x + m0)
    for deg in (4, 3):
        c = d[deg] % q
        if c:
            d[deg - 1] -= c * m2
            d[deg - 2] -= c * m1
            d[deg - 3] -= c * m0
    return CubicElem(d[0] % q, d[1] % q, d[2] % q)


def _pow(q: int, mod, a, e: int) -> CubicElem:
    result = ONE
    base = CubicElem(*a)
    while e:
        if e & 1:
            result = _mul(q, mod, result, base)
        base = _mul(q, mod, base, base)
        e >>= 1
    return result


def cubic_mul(ctx: CubicFieldContext, a: CubicElem, b: CubicElem) -> CubicElem:
    return _mul(ctx.q, ctx.modulus_poly, a, b)


def cubic_pow(ctx: CubicFieldContext, a: CubicElem, e: int) -> CubicElem:
    """a**e by square-and-multiply; a**0 is 1."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return _pow(ctx.q, ctx.modulus_poly, a, e)


def cubic_add(ctx: CubicFieldContext, a: CubicElem, b: CubicElem) -> CubicElem:
    q = ctx.q
    return CubicElem((a[0] + b[0]) % q, (a[1] + b[1]) % q, (a[2] + b[2]) % q)


def find_primitive(q: int, modulus_poly: tuple[int, int, int, int]) -> CubicElem:
    """First nonzero element (lexicographic in (c2, c1, c0)) of order q^3 - 1.

    Certified by checking a^((q^3-1)/r) != 1 for every prime r | q^3 - 1.
    """
    order = q ** 3 - 1
    cofactors = [order // r for r in prime_factors(order)]
    for c2, c1, c0 in product(range(q), repeat=3):
        a = CubicElem(c0, c1, c2)
        if a == (0, 0, 0):
            continue
        if _pow(q, modulus_poly, a, order) != ONE:
            raise ExhaustedCandidates(f"x^3+{modulus_poly[2]}x^2+{modulus_poly[1]}x+{modulus_poly[0]} is not irreducible")
        if all(_pow(q, modulus_poly, a, e) != ONE for e in cofactors):
            return a
    raise ExhaustedCandidates(f"no primitive element in GF({q}^3)")


def make_field(q: int) -> CubicFieldContext:
    """Build GF(q^3) with a certified irreducible cubic and primitive element."""
    base = PrimeField(q)
    if q > MAX_Q:
        raise FieldTooLarge(f"q={q} exceeds the supported bound {MAX_Q}")
    mod = find_irreducible_cubic(q)
    return CubicFieldContext(base, mod, find_primitive(q, mod))
