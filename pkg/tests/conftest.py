import itertools

import pytest


def brute_sidon(S, modulus=None):
    """Reference check: every unordered pair sum (doubles included) distinct."""
    sums = [(a + b) % modulus if modulus else a + b for a, b in itertools.combinations_with_replacement(sorted(S), 2)]
    return len(sums) == len(set(sums))


def brute_b2g(S, g, modulus=None):
    counts = {}
    for a, b in itertools.combinations_with_replacement(sorted(S), 2):
        s = (a + b) % modulus if modulus else a + b
        counts[s] = counts.get(s, 0) + 1
    return all(v <= g for v in counts.values())


def brute_max(A, g=1):
    A = sorted(set(A))
    for k in range(len(A), -1, -1):
        for sub in itertools.combinations(A, k):
            if brute_b2g(sub, g):
                return k
    return 0


@pytest.fixture
def tmp_file(tmp_path):
    def make(text, name="in.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[crit]
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")
