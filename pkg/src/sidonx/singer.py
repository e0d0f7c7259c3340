"""Singer planar difference sets and the Sidon / B2[g] coverings built from them.

For a primitive element alpha of GF(q^3), the exponents j in [0, q^2+q+1)
with alpha^j in the plane span{1, x} form a (q^2+q+1, q+1, 1) difference
set D. The translates D - d (d in D) are q+1 Sidon sets covering Z_N, and
their full preimages under Z_{gN} -> Z_N are B2[g] sets covering Z_{gN}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CertificationFailed
from .gfield import make_field
from .verify import is_b2g, is_cover, is_perfect_difference_set, is_sidon

# per-block exhaustive certification when the total pair-sum work stays below this
EXHAUSTIVE_WORK = 20_000_000


@dataclass(frozen=True, eq=False)
class PlanarDifferenceSet:
    q: int
    modulus: int
    elements: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, PlanarDifferenceSet) and (self.q, self.elements) == (other.q, other.elements)

    def __hash__(self):
        return hash((self.q, self.elements))

    @classmethod
    def from_elements(cls, elements, modulus: int) -> "PlanarDifferenceSet":
        """Certify a given residue set as a planar difference set mod ``modulus``."""
        elements = tuple(sorted(int(e) % modulus for e in elements))
        q = len(elements) - 1
        if q < 1 or q * q + q + 1 != modulus:
            raise CertificationFailed(f"{len(elements)} residues cannot form a planar difference set mod {modulus}")
        chk = is_perfect_difference_set(elements, modulus)
        if not chk:
            raise CertificationFailed("not a planar difference set", chk.witness)
        return cls(q, modulus, elements)


@dataclass(frozen=True, eq=False)
class SidonCover:
    q: int
    modulus: int
    blocks: np.ndarray  # (q+1, q+1), rows sorted ascending
    certification: str = "exhaustive"

    def __post_init__(self):
        self.blocks.setflags(write=False)


@dataclass(frozen=True, eq=False)
class B2gCover:
    q: int
    g: int
    modulus: int
    blocks: np.ndarray  # (q+1, g(q+1)), rows sorted ascending
    certification: str = "exhaustive"

    def __post_init__(self):
        self.blocks.setflags(write=False)


@lru_cache(maxsize=8)
def singer_difference_set(q: int) -> PlanarDifferenceSet:
    ctx = make_field(q)
    N = q * q + q + 1
    elements = tuple(kernels.singer_scan(q, ctx.modulus_poly, tuple(ctx.primitive), N))
    chk = is_perfect_difference_set(elements, N)
    if len(elements) != q + 1 or not chk:
        raise CertificationFailed(f"Singer construction for q={q} is not a planar difference set", chk.witness)
    return PlanarDifferenceSet(q, N, elements)


def _translates(D: PlanarDifferenceSet) -> np.ndarray:
    arr = np.asarray(D.elements, dtype=np.int64)
    return np.sort((arr[None, :] - arr[:, None]) % D.modulus, axis=1)


@lru_cache(maxsize=8)
def sidon_cover(D: PlanarDifferenceSet) -> SidonCover:
    """The q+1 translates {D - d : d in D}, certified as a Sidon cover of Z_N.

    Small covers are certified block by block; for large q the certificate is
    that D itself is Sidon mod N (translates inherit it) plus full coverage.
    """
    N = D.modulus
    blocks = _translates(D)
    chk = is_cover(blocks, N)
    if not chk:
        raise CertificationFailed(f"translates of D do not cover Z_{N}", chk.witness)
    size = D.q + 1
    if size * size * (size + 1) // 2 <= EXHAUSTIVE_WORK:
        rows, mode = blocks, "exhaustive"
    else:
        rows, mode = [D.elements], "translate"
    for row in rows:
        chk = is_sidon(row, N)
        if not chk:
            raise CertificationFailed(f"block is not Sidon in Z_{N}", chk.witness)
    return SidonCover(D.q, N, blocks, mode)


@lru_cache(maxsize=8)
def lifted_cover(D: PlanarDifferenceSet, g: int) -> B2gCover:
    """Full preimages of the Sidon cover blocks under Z_{gN} -> Z_N."""
    if g < 1:
        raise ValueError("g must be >= 1")
    base = sidon_cover(D)
    N = D.modulus
    lifts = np.arange(g, dtype=np.int64) * N
    blocks = np.sort((base.blocks[:, :, None] + lifts[None, None, :]).reshape(len(base.blocks), -1), axis=1)
    gN = g * N
    chk = is_cover(blocks, gN)
    if not chk:
        raise CertificationFailed(f"lifted blocks do not cover Z_{gN}", chk.witness)
    size = blocks.shape[1]
    if g == 1:
        mode = base.certification
    elif len(blocks) * size * (size + 1) // 2 <= EXHAUSTIVE_WORK:
        mode = "exhaustive"
        for row in blocks:
            chk = is_b2g(row, g, gN)
            if not chk:
                raise CertificationFailed(f"lifted block is not B2[{g}] in Z_{gN}", chk.witness)
    else:
        # preimage of a certified Sidon block; spot-check the first one exhaustively
        mode = "preimage"
        if not np.array_equal(np.sort(blocks % N, axis=1)[:, ::g], base.blocks):
            raise CertificationFailed("lifted blocks are not full preimages of the base cover")
        chk = is_b2g(blocks[0], g, gN)
        if not chk:
            raise CertificationFailed(f"lifted block is not B2[{g}] in Z_{gN}", chk.witness)
    return B2gCover(D.q, g, gN, blocks, mode)
