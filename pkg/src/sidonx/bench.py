"""Benchmark families and the bench runner."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import log

import numpy as np

from .compress import as_generator
from .errors import InvalidParams, UnknownFamily
from .extract import extract_sidon
from .oracle import max_sidon

FAMILIES = ("interval", "squares", "primes", "dominoes", "two-intervals", "geometric", "random")
ORACLE_AUTO_MAX = 30
ORACLE_BUDGET = 5_000_000

CSV_COLUMNS = ("family", "instance", "n", "p", "m", "b_size", "c_size", "s_size", "ratio",
               "oracle_optimum", "oracle_exhausted", "wall_time_s")


@dataclass(frozen=True)
class BenchFamily:
    name: str
    n: int
    params: dict = field(default_factory=dict)


def first_primes(n: int) -> list[int]:
    limit = 16 if n < 6 else int(n * (log(n) + log(log(n)))) + 3
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve)[:n].tolist()


def _random_distinct(rng, n, bits=60):
    out = set()
    while len(out) < n:
        out.update(int(x) for x in rng.integers(0, 1 << bits, n - len(out), dtype=np.uint64))
    return sorted(out)


def generate(family: BenchFamily, source=None) -> list[int]:
    """The n distinct integers of a family; seeded families draw from ``source``."""
    n, prm = family.n, family.params
    if n < 1:
        raise InvalidParams("n must be >= 1")
    name = family.name
    if name == "interval":
        return list(range(1, n + 1))
    if name == "squares":
        return [k * k for k in range(1, n + 1)]
    if name == "primes":
        return first_primes(n)
    if name == "random":
        return _random_distinct(as_generator(source), n, int(prm.get("bits", 60)))
    if name == "dominoes":
        if n % 2:
            raise InvalidParams("dominoes needs an even n")
        gap = int(prm.get("gap", 3))
        if gap < 3:
            raise InvalidParams("domino spacing must be >= 3")
        steps = as_generator(source).integers(gap, 2 * gap + 1, n // 2)
        starts = np.concatenate(([0], np.cumsum(steps[:-1]))).tolist()
        return sorted(x for b in starts for x in (b, b + 1))
    if name == "two-intervals":
        split = Fraction(prm.get("split", "1/2"))
        n1 = int(split * n)
        if not 0 < n1 < n:
            raise InvalidParams("split must leave both intervals non-empty")
        start2 = n1 + int(prm.get("distance", n))
        return list(range(n1)) + list(range(start2, start2 + n - n1))
    if name == "geometric":
        ratio = Fraction(prm.get("ratio", 2))
        if ratio <= 1:
            raise InvalidParams("ratio must exceed 1")
        a, b = ratio.numerator, ratio.denominator
        return [a ** i * b ** (n - 1 - i) for i in range(n)]
    raise UnknownFamily(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def _instance(family, idx, rng, trials, c, with_oracle, timing):
    t0 = time.perf_counter()
    data_rng, ext_rng = rng.spawn(2)
    values = generate(family, data_rng)
    rep = extract_sidon(values, trials, ext_rng, c=c)
    row = {
        "family": family.name, "instance": idx, "n": rep.n, "p": rep.modulus.p, "m": rep.modulus.m,
        "b_size": rep.compression["b_size"], "c_size": rep.compression["c_size"], "s_size": rep.size,
        "ratio": f"{rep.ratio:.6f}", "oracle_optimum": "", "oracle_exhausted": "", "wall_time_s": "",
    }
    if rep.n <= ORACLE_AUTO_MAX or with_oracle:
        orc = max_sidon(values, ORACLE_BUDGET)
        row["oracle_optimum"] = orc.optimum
        row["oracle_exhausted"] = orc.exhausted
    if timing:
        row["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"
    return row


def run_bench(family: BenchFamily, seed: int = 0, *, trials: int = 200, c=3, instances: int = 1,
              with_oracle: bool = False, workers: int = 1, timing: bool = False) -> list[dict]:
    """One row per instance in instance order, then ``min`` and ``mean`` ratio rows.

    Wall time is left blank unless ``timing`` is set, keeping output
    byte-reproducible by default.
    """
    if family.name not in FAMILIES:
        raise UnknownFamily(f"unknown family {family.name!r}; choose from {', '.join(FAMILIES)}")
    if instances < 1 or trials < 1:
        raise InvalidParams("instances and trials must be >= 1")
    streams = np.random.default_rng(seed).spawn(instances)
    args = [(family, i, streams[i], trials, c, with_oracle, timing) for i in range(instances)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda a: _instance(*a), args))
    else:
        rows = [_instance(*a) for a in args]
    ratios = [float(r["ratio"]) for r in rows]
    blank = {k: "" for k in CSV_COLUMNS}
    rows.append({**blank, "family": family.name, "instance": "min", "ratio": f"{min(ratios):.6f}"})
    rows.append({**blank, "family": family.name, "instance": "mean", "ratio": f"{sum(ratios) / len(ratios):.6f}"})
    return rows
