"""Certifiers for Sidon, B2[g], Freiman-morphism, difference-set and cover claims.

Each check returns a :class:`Check`, truthy when the claim holds; on failure
it carries a :class:`Witness` whose ``reproduces`` method re-evaluates the
violated relation from the witness alone.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import numpy as np

SIDON = "sidon-violation"
B2G = "b2g-violation"
MORPHISM = "morphism-violation"
COVER_GAP = "cover-gap"
DIFFERENCE = "difference-defect"

_NUMPY_LIMIT = 1 << 61


@dataclass(frozen=True)
class Witness:
    kind: str
    elements: tuple = ()
    pairs: tuple = ()
    modulus: int | None = None
    target: object = None  # the colliding sum, the uncovered residue, ...
    theta: Fraction | None = None
    detail: str = ""

    def _red(self, x):
        return x % self.modulus if self.modulus else x

    def reproduces(self, universe=None) -> bool:
        """Re-evaluate the violated relation.

        ``universe`` is needed only for witnesses whose failure is an absence
        (an uncovered residue needs the blocks, a missing difference needs D).
        """
        if self.kind == SIDON:
            x, y, z, t = self.elements
            return self._red(_add(x, y)) == self._red(_add(z, t)) and {x, y} != {z, t}
        if self.kind == B2G:
            sums = {self._red(_add(a, b)) for a, b in self.pairs}
            distinct = {frozenset((a, b)) for a, b in self.pairs}
            return len(sums) == 1 and len(distinct) == len(self.pairs)
        if self.kind == MORPHISM:
            if self.detail == "not injective":
                (a, ia), (b, ib) = self.pairs
                return a != b and ia == ib
            total = sum(a for a, _ in self.pairs)
            return sum(r for _, r in self.pairs) % self.modulus != phi_sum(self.theta, self.modulus, total)
        if self.kind == COVER_GAP:
            r = self.target
            return universe is not None and all(r not in set(_as_list(blk)) for blk in universe)
        if self.kind == DIFFERENCE:
            r = self.target
            if self.pairs:
                return len(self.pairs) >= 2 and all((d - e) % self.modulus == r for d, e in self.pairs)
            if universe is None:
                return False
            hits = sum(1 for d in universe for e in universe if d != e and (d - e) % self.modulus == r)
            return hits != 1
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def describe(self) -> str:
        mod = f" (mod {self.modulus})" if self.modulus else ""
        if self.kind == SIDON:
            x, y, z, t = self.elements
            return f"{x} + {y} = {z} + {t}{mod}"
        if self.kind == B2G:
            reps = ", ".join(f"{{{a},{b}}}" for a, b in self.pairs)
            return f"sum {self.target}{mod} has {len(self.pairs)} representations: {reps}"
        if self.kind == COVER_GAP:
            return f"residue {self.target} is uncovered{mod}"
        if self.kind == DIFFERENCE:
            return f"difference {self.target}{mod}: {self.detail}"
        return self.detail or repr(self)


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: Witness | None = None
    checked: int = 0  # pairs / tuples / residues examined
    notes: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok


PASS = Check(True)


def _as_list(x):
    return x.tolist() if isinstance(x, np.ndarray) else list(x)


def _add(a, b):
    if isinstance(a, tuple):
        return tuple(u + v for u, v in zip(a, b))
    return a + b


def _prepare(S, modulus):
    vals = _as_list(S)
    if modulus:
        vals = [v % modulus for v in vals]
    if len(set(vals)) != len(vals):
        raise ValueError("set contains duplicates" + (" modulo the modulus" if modulus else ""))
    return sorted(vals)


def _fits_numpy(vals, modulus):
    if not vals:
        return True
    if modulus:
        return modulus < _NUMPY_LIMIT
    return -_NUMPY_LIMIT < vals[0] and vals[-1] < _NUMPY_LIMIT


def _pair_sums(arr, modulus, doubles):
    n = len(arr)
    i, j = np.triu_indices(n, 0 if doubles else 1)
    s = arr[i] + arr[j]
    if modulus:
        s %= modulus
    return s


def _first_duplicate(sums):
    if len(sums) < 2:
        return None
    s = np.sort(sums)
    dup = np.flatnonzero(s[1:] == s[:-1])
    return int(s[dup[0]]) if len(dup) else None


def _pairs_with_sum(vals, target, modulus, doubles=True):
    """Unordered pairs (x <= y) from sorted vals summing to target."""
    present = set(vals)
    out = []
    for x in vals:
        y = target - x
        if modulus:
            y %= modulus
        if y in present and (x < y or (doubles and x == y)):
            out.append((x, y))
    return out


def _sidon_numpy(vals, modulus):
    arr = np.asarray(vals, dtype=np.int64)
    s = _first_duplicate(_pair_sums(arr, modulus, doubles=False))
    if s is None:
        s = _first_duplicate(_pair_sums(arr, modulus, doubles=True))
    return s


def _sidon_python(vals, modulus):
    n = len(vals)
    best = None
    for doubles in (False, True):
        seen = set()
        for i in range(n):
            x = vals[i]
            for j in range(i if doubles else i + 1, n):
                t = x + vals[j]
                if modulus:
                    t %= modulus
                if t in seen:
                    if best is None or t < best:
                        best = t
                else:
                    seen.add(t)
        if best is not None:
            return best
    return None


def is_sidon(S, modulus: int | None = None) -> Check:
    """All pair sums, doubles a+a included, are distinct (over Z or Z_modulus).

    Collisions between sums of distinct elements are reported before those
    involving a doubled element; within each phase the smallest colliding
    sum wins.
    """
    vals = _prepare(S, modulus)
    n = len(vals)
    checked = n * (n + 1) // 2
    if _fits_numpy(vals, modulus):
        s = _sidon_numpy(vals, modulus)
    else:
        s = _sidon_python(vals, modulus)
    if s is None:
        return Check(True, checked=checked)
    pairs = _pairs_with_sum(vals, s, modulus, doubles=False)
    if len(pairs) < 2:
        pairs = _pairs_with_sum(vals, s, modulus, doubles=True)
        pairs.sort(key=lambda p: (p[0] == p[1], p))
    (x, y), (z, t) = pairs[0], pairs[1]
    return Check(False, Witness(SIDON, (x, y, z, t), modulus=modulus, target=s), checked=checked)


def representation_counts(S, modulus=None) -> dict:
    """Map each pair sum to its number of unordered representations {x, y}, x <= y."""
    vals = _prepare(S, modulus)
    counts = defaultdict(int)
    for i, x in enumerate(vals):
        for y in vals[i:]:
            t = x + y
            counts[t % modulus if modulus else t] += 1
    return dict(counts)


def is_b2g(S, g: int, modulus: int | None = None) -> Check:
    """Every sum has at most g unordered representations x + y with x <= y."""
    if g < 1:
        raise ValueError("g must be >= 1")
    vals = _prepare(S, modulus)
    n = len(vals)
    checked = n * (n + 1) // 2
    bad = None
    if _fits_numpy(vals, modulus):
        if n:
            sums, counts = np.unique(_pair_sums(np.asarray(vals, dtype=np.int64), modulus, True), return_counts=True)
            over = np.flatnonzero(counts > g)
            if len(over):
                bad = int(sums[over[0]])
    else:
        over = [t for t, c in representation_counts(vals, modulus).items() if c > g]
        bad = min(over) if over else None
    if bad is None:
        return Check(True, checked=checked)
    pairs = _pairs_with_sum(vals, bad, modulus)[: g + 1]
    return Check(False, Witness(B2G, pairs=tuple(pairs), modulus=modulus, target=bad), checked=checked)


def _theta(theta) -> Fraction:
    # accepts a Theta (anything with a ``value``) or a rational
    return Fraction(getattr(theta, "value", theta))


def phi_sum(theta, m: int, s: int) -> int:
    """floor(s * m * theta) mod m, exact."""
    theta = _theta(theta)
    return (s * m * theta.numerator // theta.denominator) % m


def _injectivity(kept, image):
    first = {}
    for a, r in zip(kept, image):
        if r in first:
            b = first[r]
            return Witness(MORPHISM, pairs=((b, r), (a, r)), detail="not injective")
        first[r] = a
    return None


def is_freiman2(kept, image, theta, m: int, *, full_limit: int = 10_000,
                samples: int = 100_000, seed: int = 0) -> Check:
    """Check (image[a] + image[b]) mod m == floor((a+b) m theta) mod m over pairs.

    All pairs (a <= b) are scanned when ``len(kept) <= full_limit``; otherwise
    ``samples`` pairs are drawn from a generator seeded with ``seed``.
    """
    kept, image = _as_list(kept), _as_list(image)
    if len(kept) != len(image):
        raise ValueError("kept and image must be aligned")
    w = _injectivity(kept, image)
    if w is not None:
        return Check(False, w)
    theta = _theta(theta)
    num, den = theta.numerator, theta.denominator
    scaled = [a * m * num for a in kept]
    n = len(kept)

    def bad(i, j):
        return (image[i] + image[j]) % m != ((scaled[i] + scaled[j]) // den) % m

    def witness(i, j):
        return Witness(MORPHISM, (kept[i], kept[j]), pairs=((kept[i], image[i]), (kept[j], image[j])),
                       modulus=m, theta=theta,
                       detail=f"phi({kept[i]}) + phi({kept[j]}) != phi({kept[i] + kept[j]})")

    if n <= full_limit:
        if m < _NUMPY_LIMIT:
            pair = _full_pair_scan(scaled, image, den, m)
        else:
            pair = next(((i, j) for i in range(n) for j in range(i, n) if bad(i, j)), None)
        if pair is not None:
            return Check(False, witness(*pair))
        return Check(True, checked=n * (n + 1) // 2, notes={"mode": "full"})
    rng = np.random.default_rng(seed)
    ii = rng.integers(0, n, size=samples).tolist()
    jj = rng.integers(0, n, size=samples).tolist()
    for i, j in zip(ii, jj):
        if bad(i, j):
            return Check(False, witness(i, j))
    return Check(True, checked=samples, notes={"mode": "sampled"})


def _full_pair_scan(scaled, image, den, m):
    """First pair (i, j) with image[i] + image[j] != floor((s_i + s_j)/den) (mod m), or None.

    Uses the exact split floor((s_i + s_j)/den) = q_i + q_j + [r_i + r_j >= den]
    with s = q den + r; after sorting by r the carry region of each row is a
    suffix, so every row is one vectorized comparison.
    """
    n = len(scaled)
    if n == 0:
        return None
    qr = [divmod(s, den) for s in scaled]
    order = sorted(range(n), key=lambda i: qr[i][1])
    rem = [qr[i][1] for i in order]
    d = np.array([(image[i] - qr[i][0]) % m for i in order], dtype=np.int64)
    for pos, i in enumerate(order):
        t = bisect_left(rem, den - rem[pos])
        lhs = d[pos] + d
        lhs[t:] -= 1
        fails = np.flatnonzero(lhs % m)
        if len(fails):
            j = order[int(fails[0])]
            return (min(i, j), max(i, j))
    return None


def is_freiman_k(kept, image, theta, m: int, k: int, *, samples: int = 10_000, seed: int = 0) -> Check:
    """k-term identity sum(image[b_i]) == floor((sum b_i) m theta) (mod m).

    Enumerates every multiset of k elements when there are at most
    ``samples`` of them, otherwise samples k-tuples with replacement.
    """
    kept, image = _as_list(kept), _as_list(image)
    w = _injectivity(kept, image)
    if w is not None:
        return Check(False, w)
    theta = _theta(theta)
    n = len(kept)
    if n == 0:
        return PASS
    if comb(n + k - 1, k) <= samples:
        tuples = combinations_with_replacement(range(n), k)
        mode = "full"
    else:
        rng = np.random.default_rng(seed)
        tuples = rng.integers(0, n, size=(samples, k)).tolist()
        mode = "sampled"
    checked = 0
    for tup in tuples:
        checked += 1
        lhs = sum(image[i] for i in tup) % m
        if lhs != phi_sum(theta, m, sum(kept[i] for i in tup)):
            elems = tuple(kept[i] for i in tup)
            return Check(False, Witness(MORPHISM, elems, pairs=tuple((kept[i], image[i]) for i in tup),
                                        modulus=m, theta=theta,
                                        detail=f"{k}-term identity fails on {elems}"), checked=checked)
    return Check(True, checked=checked, notes={"mode": mode})


def is_perfect_difference_set(D, N: int) -> Check:
    """Each nonzero residue mod N is an ordered difference d - d' exactly once."""
    vals = _prepare(D, N)
    arr = np.asarray(vals, dtype=np.int64)
    diff = (arr[:, None] - arr[None, :]) % N
    off = ~np.eye(len(arr), dtype=bool)
    tally = np.bincount(diff[off], minlength=N)
    wrong = np.flatnonzero(tally[1:] != 1)
    if not len(wrong):
        return Check(True, checked=int(off.sum()))
    r = int(wrong[0]) + 1
    if tally[r] >= 2:
        pairs = tuple((d, e) for d in vals for e in vals if d != e and (d - e) % N == r)
        detail = f"appears {len(pairs)} times"
    else:
        pairs, detail = (), "never appears"
    return Check(False, Witness(DIFFERENCE, pairs=pairs, modulus=N, target=r, detail=detail))


def is_cover(blocks, modulus: int) -> Check:
    """Union of blocks is all of Z_modulus; witness is the smallest uncovered residue."""
    hit = np.zeros(modulus, dtype=bool)
    for blk in blocks:
        arr = np.asarray(_as_list(blk), dtype=np.int64) % modulus
        hit[arr] = True
    missing = np.flatnonzero(~hit)
    if not len(missing):
        return Check(True, checked=modulus)
    return Check(False, Witness(COVER_GAP, modulus=modulus, target=int(missing[0])), checked=modulus)


def _vector_reps(points):
    pts = [tuple(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("point set contains duplicates")
    reps = defaultdict(list)
    for i, x in enumerate(pts):
        for y in pts[i:]:
            reps[_add(x, y)].append((x, y))
    return reps


def is_sidon_vectors(points) -> Check:
    """Exact Sidon check on vectors (tuples of rationals) by pair-sum collisions."""
    reps = _vector_reps(points)
    for s, pairs in reps.items():
        if len(pairs) > 1:
            (x, y), (z, t) = pairs[0], pairs[1]
            return Check(False, Witness(SIDON, (x, y, z, t), target=s))
    return Check(True, checked=sum(len(p) for p in reps.values()))


def is_b2g_vectors(points, g: int) -> Check:
    reps = _vector_reps(points)
    for s, pairs in reps.items():
        if len(pairs) > g:
            return Check(False, Witness(B2G, pairs=tuple(pairs[: g + 1]), target=s))
    return Check(True, checked=sum(len(p) for p in reps.values()))
