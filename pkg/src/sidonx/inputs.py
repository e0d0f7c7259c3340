"""Parsing of integer-set and point-set input files.

Integer files hold one integer per line (optional sign, any size). Point
files hold one point per line as whitespace-separated coordinates, each a
decimal literal or ``p/q``; the first point fixes the dimension. Blank
lines and ``#`` comments are ignored in both. Decimals are read exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyFile, ParseError
from .geometry import PointSet

_INT = re.compile(r"[+-]?\d+")
_RATIONAL = re.compile(r"[+-]?\d+/\d+")
_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class ParsedInput:
    data: object  # list[int] or PointSet
    dedup_removed: int
    count: int  # values read, duplicates included


def _lines(text):
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_coordinate(tok: str, line=None) -> Fraction:
    if _RATIONAL.fullmatch(tok):
        num, den = tok.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {tok!r}", line)
        return Fraction(int(num), int(den))
    if _DECIMAL.fullmatch(tok):
        return Fraction(tok)
    raise ParseError(f"not a number: {tok!r}", line)


def parse_integers(text: str) -> ParsedInput:
    seen, order = set(), []
    total = 0
    for no, line in _lines(text):
        if not _INT.fullmatch(line):
            raise ParseError(f"not an integer: {line!r}", no)
        v = int(line)
        total += 1
        if v not in seen:
            seen.add(v)
            order.append(v)
    if not total:
        raise EmptyFile("no integers in input")
    return ParsedInput(sorted(order), total - len(order), total)


def parse_points(text: str) -> ParsedInput:
    dim = None
    seen, pts = set(), []
    total = 0
    for no, line in _lines(text):
        toks = line.split()
        if dim is None:
            dim = len(toks)
        elif len(toks) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(toks)}", no)
        p = tuple(parse_coordinate(t, no) for t in toks)
        total += 1
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if not total:
        raise EmptyFile("no points in input")
    return ParsedInput(PointSet(dim, tuple(pts)), total - len(pts), total)


def parse_input(path, kind: str = "integers") -> ParsedInput:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if kind == "integers":
        return parse_integers(text)
    if kind == "points":
        return parse_points(text)
    raise ValueError(f"unknown input kind {kind!r}")
