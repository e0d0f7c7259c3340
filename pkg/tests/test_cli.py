import csv
import io
import json

import pytest

from sidonx.cli import main, render
from sidonx.verify import is_sidon


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_extract_json(capsys, tmp_file):
    path = tmp_file("\n".join(str(k * k) for k in range(1, 400)) + "\n")
    code, out, _ = run(capsys, "extract", path, "--trials", "20", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["config"]["c"] == "3"
    rep = doc["report"]
    assert rep["certified"] and is_sidon(rep["subset"])
    assert rep["subset_size"] == len(rep["subset"])


def test_extract_byte_identical_and_workers(capsys, tmp_file):
    path = tmp_file("\n".join(str(7 * k + 1) for k in range(2000)) + "\n")
    outs = [run(capsys, "extract", path, "--seed", "5", "--trials", "32", "--workers", w)[1] for w in ("1", "8")]
    assert outs[0] == outs[1]


def test_extract_rational_c(capsys, tmp_file):
    path = tmp_file("1\n2\n3\n4\n5\n")
    code, out, _ = run(capsys, "extract", path, "--c", "5/2", "--format", "text", "--trials", "5")
    assert code == 0 and "report.c: 5/2" in out


def test_extract_points(capsys, tmp_file):
    path = tmp_file("1/2 2/3\n0 0\n1 0.5\n3 3\n")
    code, out, _ = run(capsys, "extract", path, "--points", "--trials", "5")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["dim"] == 2
    assert all(isinstance(c, str) for p in doc["report"]["subset"] for c in p)


def test_verify_exit_codes(capsys, tmp_file):
    assert run(capsys, "verify", tmp_file("1\n2\n5\n11\n"), "--kind", "sidon")[0] == 0
    code, out, _ = run(capsys, "verify", tmp_file("0\n1\n2\n"), "--kind", "sidon")
    assert code == 1 and "0 + 2 = 1 + 1" in out
    assert run(capsys, "verify", tmp_file("0\n1\n2\n4\n"), "--kind", "b2g", "--g", "2")[0] == 0
    assert run(capsys, "verify", tmp_file("0\n1\n3\n5\n"), "--kind", "sidon", "--mod", "7")[0] == 1


def test_usage_errors(capsys, tmp_file):
    assert run(capsys, "verify", tmp_file("1\nfoo\n"), "--kind", "sidon")[0] == 2
    assert run(capsys, "extract", tmp_file(""))[0] == 2
    assert run(capsys, "singer", "--q", "4")[0] == 2
    assert run(capsys, "bench", "--family", "dominoes", "--n", "7")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--family", "cubes", "--n", "5"])
    assert exc.value.code == 2


def test_internal_error_exit_code(capsys, tmp_file, monkeypatch):
    from sidonx import cli
    from sidonx.errors import CertificationFailed

    def boom(*a, **k):
        raise CertificationFailed("forced")
    monkeypatch.setattr(cli, "extract_b2g", boom)
    code, _, err = run(capsys, "extract", tmp_file("1\n2\n"))
    assert code == 3 and "forced" in err


def test_oracle(capsys, tmp_file):
    code, out, _ = run(capsys, "oracle", tmp_file("\n".join(map(str, range(1, 8)))), "--kind", "sidon")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["optimum"] == 4 and doc["report"]["exhausted"]


def test_singer(capsys):
    code, out, _ = run(capsys, "singer", "--q", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    code, out, _ = run(capsys, "singer", "--q", "3", "--g", "2")
    doc = json.loads(out)["report"]
    assert doc["modulus"] == 26 and len(doc["blocks"][0]) == 8


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--family", "primes", "--n", "20", "--trials", "10", "--instances", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "family,instance,n,p,m,b_size,c_size,s_size,ratio,oracle_optimum,oracle_exhausted,wall_time_s"
    assert len(lines) == 5


def test_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SIDONX_OUTPUT_DIR", str(tmp_path / "out"))
    code, out, _ = run(capsys, "singer", "--q", "2")
    assert code == 0 and (tmp_path / "out" / "singer.json").read_text() == out


def test_render_formats():
    from fractions import Fraction
    payload = {"a": Fraction(1, 3), "b": {"c": [1, 2]}}
    assert json.loads(render(payload, "json")) == {"schema": 1, "a": "1/3", "b": {"c": [1, 2]}}
    assert render(payload, "text") == "a: 1/3\nb.c: 1 2\n"
    assert render(payload, "csv") == "a,b.c\n1/3,1 2\n"
