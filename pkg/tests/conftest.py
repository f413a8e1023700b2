import numpy as np
import pytest

from chargedpoly import charges


@pytest.fixture
def binary60():
    return charges.make_binary(60, 11)


def adversarial(n: int) -> list:
    """Hand-picked +-1 sequences that stress the recursions."""
    half = n // 2
    return [
        charges.ChargeSequence(np.ones(n, np.int64), "binary"),
        charges.ChargeSequence(-np.ones(n, np.int64), "binary"),
        charges.ChargeSequence(np.resize([1, -1], n), "binary"),
        charges.ChargeSequence(np.resize([1, 1, -1, -1], n), "binary"),
        charges.ChargeSequence(np.r_[np.ones(half, np.int64), -np.ones(n - half, np.int64)], "binary"),
        charges.ChargeSequence(np.r_[np.ones(n - 1, np.int64), -1], "binary"),
        charges.ChargeSequence(np.r_[-1, np.ones(n - 1, np.int64)], "binary"),
        charges.ChargeSequence(np.resize([1, 1, 1, -1], n), "binary"),
        charges.ChargeSequence(np.resize([1, -1, -1, 1, -1, 1, 1, -1], n), "binary"),
        charges.ChargeSequence(np.r_[np.resize([1, -1], half), np.ones(n - half, np.int64)], "binary"),
    ]


# criterion number -> one-line verdict, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
