import numpy as np
import pytest

from chargedpoly import charges, diblock, partition


@pytest.mark.parametrize("beta", [0.2, 0.5, 1.0, 2.0])
def test_joint_normalizes_to_dp(beta):
    assert diblock.normalization_gap(diblock.diblock_joint(30, beta)) <= 1e-8


def test_joint_matches_enumeration_small():
    # P(i(n) = i, j(n) = j) by brute force over all paths of the di-block chain
    half, beta = 4, 0.7
    joint = diblock.diblock_joint(half, beta)
    w = charges.make_diblock(half)
    n = half
    for i in range(n):
        for j in range(n + 1):
            def event(s, i=i, j=j):
                # renewal after monomer k <=> Delta S_{k+1} = 1 (k = 1..2n-1)
                ren = np.zeros((len(s), 2 * n + 1), dtype=bool)
                ren[:, 0] = True
                ren[:, 2 * n] = True
                ren[:, 1:2 * n] = np.diff(s[:, 1:], axis=1) == 1
                last = np.array([max(k for k in range(n) if r[k]) for r in ren])
                first = np.array([min(k for k in range(n, 2 * n + 1) if r[k]) - n for r in ren])
                return (last == i) & (first == j)
            p = partition.oracle_expectation(w, 2 * beta, event, "original")
            assert joint.prob[i, j] == pytest.approx(p, abs=1e-12)


def test_marginals_sum_to_one():
    j = diblock.diblock_joint(20, 1.0)
    assert j.marginal_i().sum() == pytest.approx(1.0)
    assert j.marginal_j().sum() == pytest.approx(1.0)


def test_tail_monotone_in_m():
    j = diblock.diblock_joint(25, 1.0)
    tails = [diblock.diblock_tail(j, m) for m in range(1, 26)]
    assert all(b <= a for a, b in zip(tails, tails[1:]))
    with pytest.raises(ValueError):
        diblock.diblock_tail(j, 0)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
def test_collapse_bounds_above_beta0(beta):
    cb = diblock.check_collapse_bounds(diblock.diblock_joint(30, beta))
    assert cb.marginal_i_ok and cb.marginal_j_ok and cb.tail_ok
    assert cb.worst_log_ratio <= 0


def test_collapse_bounds_reject_below_beta0():
    with pytest.raises(ValueError):
        diblock.check_collapse_bounds(diblock.diblock_joint(10, 0.3))


def test_bond_check():
    bc = diblock.diblock_bond_check(30, 1.0)
    assert bc.checked and bc.holds
    assert len(bc.p) == 59
    assert not diblock.diblock_bond_check(30, 0.3).checked


def test_invalid_args():
    with pytest.raises(ValueError):
        diblock.diblock_joint(0, 1.0)
    with pytest.raises(ValueError):
        diblock.diblock_joint(5, 0.0)
