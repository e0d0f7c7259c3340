"""End-to-end extraction: modulus choice, compression, Singer cover, pigeonhole, pullback.

The output subset is always re-certified; the size guarantee is asymptotic
and only reported, the validity guarantee is unconditional.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, sqrt

import numpy as np

from .compress import CompressionResult, as_generator, compress
from .errors import CertificationFailed, EmptyInput
from .gfield import is_prime
from .singer import lifted_cover, sidon_cover, singer_difference_set
from .verify import is_b2g, is_sidon


@dataclass(frozen=True)
class ModulusChoice:
    p: int
    m: int
    g: int = 1
    c_target: Fraction = Fraction(3)

    @property
    def blocks(self) -> int:
        return self.p + 1


@dataclass(frozen=True)
class ExtractionReport:
    n: int
    dedup_removed: int
    modulus: ModulusChoice
    compression: dict
    chosen_block: int
    intersection: int
    pigeonhole_bound: int
    subset: list[int]
    ratio: float
    certified: bool
    certificate_kind: str
    offset: int = 0
    scale: int = 1
    extras: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.subset)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dedup_removed": self.dedup_removed,
            "p": self.modulus.p,
            "m": self.modulus.m,
            "g": self.modulus.g,
            "c": _fmt_rational(self.modulus.c_target),
            "normalization": {"offset": self.offset, "scale": self.scale},
            "compression": self.compression,
            "chosen_block": {"index": self.chosen_block, "intersection": self.intersection,
                             "pigeonhole_bound": self.pigeonhole_bound},
            "subset_size": self.size,
            "ratio": f"{self.ratio:.6f}",
            "certified": self.certified,
            "certificate_kind": self.certificate_kind,
            "subset": self.subset,
            **self.extras,
        }


def _fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def choose_modulus(n: int, c=3, g: int = 1) -> ModulusChoice:
    """Smallest prime p with p^2 + p + 1 >= c n / g; m = g (p^2 + p + 1)."""
    if n < 1 or g < 1:
        raise ValueError("n and g must be >= 1")
    c = Fraction(c)
    if c <= 1:
        raise ValueError("c must exceed 1")
    x = c * n / g
    # smallest p with (2p+1)^2 >= 4x - 3, then exact correction
    p = max((isqrt(max(int(4 * x - 3), 0)) - 1) // 2, 1)
    while p * p + p + 1 < x:
        p += 1
    while p > 1 and (p - 1) ** 2 + (p - 1) + 1 >= x:
        p -= 1
    while not is_prime(p):
        p += 1
    return ModulusChoice(p, g * (p * p + p + 1), g, c)


def pigeonhole_block(blocks, image, modulus: int | None = None) -> tuple[int, int]:
    """Index of the block meeting ``image`` most (lowest index on ties) and that count."""
    blocks = np.asarray(blocks, dtype=np.int64)
    image = np.asarray(list(image), dtype=np.int64)
    if modulus is None:
        modulus = int(max(blocks.max(initial=0), image.max(initial=0))) + 1
    mask = np.zeros(modulus, dtype=bool)
    mask[image % modulus] = True
    counts = mask[blocks % modulus].sum(axis=1)
    idx = int(np.argmax(counts))
    return idx, int(counts[idx])


def normalize(values) -> tuple[list[int], int, int]:
    """Translate to start at 0 and divide by the gcd of the gaps.

    Sidon and B2[g] structure are invariant under x -> (x - offset) / scale, so
    the pipeline depends only on the affine shape of the input.
    """
    offset = values[0]
    scale = 0
    for v in values:
        scale = gcd(scale, v - offset)
    scale = scale or 1
    return [(v - offset) // scale for v in values], offset, scale


def extract_b2g(A, g: int = 1, trials: int = 200, source=None, *, c=3, workers: int = 1,
                stop_at_target: bool = False) -> ExtractionReport:
    """Certified B2[g] subset of A (a Sidon subset when g = 1)."""
    if g < 1:
        raise ValueError("g must be >= 1")
    raw = list(A)
    values = sorted(set(raw))
    if not values:
        raise EmptyInput("cannot extract from an empty set")
    n = len(values)
    norm, offset, scale = normalize(values)

    choice = choose_modulus(n, c, g)
    comp: CompressionResult = compress(norm, choice.m, trials, as_generator(source),
                                       workers=workers, stop_at_target=stop_at_target)
    D = singer_difference_set(choice.p)
    cover = sidon_cover(D) if g == 1 else lifted_cover(D, g)
    idx, hits = pigeonhole_block(cover.blocks, comp.image, cover.modulus)

    in_block = np.zeros(cover.modulus, dtype=bool)
    in_block[cover.blocks[idx]] = True
    subset = sorted(a * scale + offset for a, r in zip(comp.kept, comp.image) if in_block[r])
    bound = -(-comp.size // choice.blocks)
    if len(subset) != hits or hits < bound:
        raise CertificationFailed(f"pullback size {len(subset)} / intersection {hits} / bound {bound} disagree")

    chk = is_sidon(subset) if g == 1 else is_b2g(subset, g)
    if not chk:
        raise CertificationFailed("extracted subset failed certification", chk.witness)
    kind = "sidon" if g == 1 else f"b2g({g})"
    summary = comp.summary()
    summary["cover_certification"] = cover.certification
    return ExtractionReport(
        n=n, dedup_removed=len(raw) - n, modulus=choice, compression=summary,
        chosen_block=idx, intersection=hits, pigeonhole_bound=bound, subset=subset,
        ratio=round(len(subset) / sqrt(n), 6), certified=True, certificate_kind=kind,
        offset=offset, scale=scale,
    )


def extract_sidon(A, trials: int = 200, source=None, **kw) -> ExtractionReport:
    return extract_b2g(A, 1, trials, source, **kw)
