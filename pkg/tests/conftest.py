import itertools
from math import comb

import numpy as np
import pytest

from attrlearn.core import AttributeOracle


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def uniform_subsets(n, size):
    """Every size-``size`` subset of range(n) with its probability."""
    p = 1.0 / comb(n, size)
    for c in itertools.combinations(range(n), size):
        yield c, p


def weighted_sequences(w, length):
    """Every length-``length`` draw sequence from |w_i|/||w||_1, with its probability."""
    a = np.abs(np.asarray(w, dtype=float))
    probs = a / a.sum()
    support = [i for i in range(a.size) if probs[i] > 0]
    for seq in itertools.product(support, repeat=length):
        yield seq, float(np.prod([probs[i] for i in seq]))


def fresh_oracle(x, y, budget):
    return AttributeOracle(np.asarray(x, dtype=float), y, budget)


# ---------------------------------------------------------------------------
# acceptance verdicts: one line per criterion, repeated in the terminal summary
# ---------------------------------------------------------------------------

_VERDICTS = []


@pytest.fixture
def verdict():
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _VERDICTS.append(line)
        print(line, flush=True)
        return passed

    return record


@pytest.fixture
def skipped_verdict():
    def record(number, reason):
        _VERDICTS.append(f"criterion {number:>2}: SKIP  {reason}")
        pytest.skip(reason)

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
