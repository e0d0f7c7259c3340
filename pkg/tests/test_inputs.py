from fractions import Fraction

import pytest

from sidonx.errors import EmptyFile, ParseError
from sidonx.inputs import parse_coordinate, parse_input, parse_integers, parse_points


def test_integers(tmp_file):
    r = parse_input(tmp_file("3\n1\n2\n"))
    assert r.data == [1, 2, 3] and r.dedup_removed == 0
    r = parse_input(tmp_file("1\n1\n2\n"))
    assert r.data == [1, 2] and r.dedup_removed == 1 and r.count == 3


def test_integers_big_signed_comments():
    r = parse_integers("# header\n-5\n\n+7  # seven\n%d\n" % (10 ** 40))
    assert r.data == [-5, 7, 10 ** 40]


def test_points(tmp_file):
    r = parse_input(tmp_file("1/2 2/3\n0 0\n"), "points")
    assert r.data.dim == 2 and r.data.points == ((Fraction(1, 2), Fraction(2, 3)), (0, 0))


def test_decimals_exact():
    assert parse_coordinate("0.1") == Fraction(1, 10)
    assert parse_coordinate("-2.5e-3") == Fraction(-1, 400)
    assert parse_coordinate(".5") == Fraction(1, 2)


@pytest.mark.parametrize("text,line", [("1\nx\n", 2), ("1\n2.5\n", 2)])
def test_integer_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_integers(text)
    assert exc.value.line == line and str(exc.value).startswith(f"line {line}:")


def test_point_errors():
    with pytest.raises(ParseError) as exc:
        parse_points("1 2\n3\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_points("1/0 2\n")
    with pytest.raises(ParseError):
        parse_points("1 abc\n")


def test_empty():
    with pytest.raises(EmptyFile):
        parse_integers("# nothing\n\n")
    with pytest.raises(EmptyFile):
        parse_points("")
