"""Exact collapse statistics for the di-block charge sequence.

For ``omega = (+1)^n (-1)^n`` let ``i(n)`` be the last renewal before ``n`` and
``j(n)`` the first renewal in ``[n, 2n]`` minus ``n`` (``n`` if none).  The
bar-convention weight of ``{i(n) = i, j(n) = j}`` factorizes into two WSAW
partition functions and one folded segment of charge ``n - i - j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charges import make_diblock
from .freeenergy.wsaw import beta0, collapse_rate, s_of_beta
from .observables import bond_profile
from .partition import LOG2, log_partition_bar, logsumexp, wsaw_log_partition


@dataclass(frozen=True)
class DiblockJoint:
    half_n: int
    beta_bar: float
    log_weight: np.ndarray  # shape (n, n+1), index [i, j]
    log_norm: float  # log Zbar_2n from the DP on the di-block sequence

    @property
    def prob(self) -> np.ndarray:
        return np.exp(self.log_weight - self.log_norm)

    def marginal_i(self) -> np.ndarray:
        return self.prob.sum(axis=1)

    def marginal_j(self) -> np.ndarray:
        return self.prob.sum(axis=0)


def diblock_joint(half_n: int, beta: float) -> DiblockJoint:
    if half_n < 1:
        raise ValueError("need half_n >= 1")
    if not beta > 0:
        raise ValueError("need beta > 0")
    n = half_n
    wsaw = wsaw_log_partition(beta, n)
    i = np.arange(n)[:, None]
    j = np.arange(n + 1)[None, :]
    log_w = wsaw[i] + (i - j - n - 1) * LOG2 - beta * (i + j - n) ** 2 + wsaw[n - j]
    return DiblockJoint(n, float(beta), log_w, log_partition_bar(make_diblock(n), beta))


def normalization_gap(joint: DiblockJoint) -> float:
    """Relative difference between the summed joint weights and ``Zbar_2n``."""
    return float(abs(np.expm1(logsumexp(joint.log_weight.ravel()) - joint.log_norm)))


def _log_tail(joint: DiblockJoint, M: int) -> float:
    n = joint.half_n
    i = np.arange(n)[:, None]
    j = np.arange(n + 1)[None, :]
    mask = np.abs(i + j - n) >= M
    if not mask.any():
        return float("-inf")
    return float(logsumexp(joint.log_weight[mask]) - joint.log_norm)


def diblock_tail(joint: DiblockJoint, M: int) -> float:
    """``P(|i(n) + j(n) - n| >= M)``."""
    if M < 1:
        raise ValueError("need M >= 1")
    return float(np.exp(_log_tail(joint, M)))


@dataclass(frozen=True)
class CollapseBounds:
    beta: float
    S: float
    C: float
    marginal_i_ok: bool
    marginal_j_ok: bool
    tail_ok: bool
    worst_log_ratio: float  # max over all checks of log(observed / bound)


def check_collapse_bounds(joint: DiblockJoint, max_m: int | None = None) -> CollapseBounds:
    """Check the marginal and Gaussian-tail collapse bounds pointwise (in logs)."""
    n, beta = joint.half_n, joint.beta_bar
    S, C = s_of_beta(beta), collapse_rate(beta)
    if S >= 1:
        raise ValueError(f"bounds need beta > beta_0 = {beta0():.6f}")
    log_pi = logsumexp(joint.log_weight, axis=1) - joint.log_norm
    log_pj = logsumexp(joint.log_weight, axis=0) - joint.log_norm
    log_1s = np.log1p(-S)
    r_i = log_pi - (np.arange(n) * np.log(C) - log_1s)
    r_j = log_pj - ((n - np.arange(n + 1)) * np.log(C) - log_1s)
    ms = np.arange(1, (max_m or n) + 1)
    r_t = np.array([_log_tail(joint, int(m)) for m in ms]) - (-beta * ms * ms - 2 * log_1s)
    return CollapseBounds(
        beta=beta, S=S, C=C,
        marginal_i_ok=bool(np.all(r_i <= 0)),
        marginal_j_ok=bool(np.all(r_j <= 0)),
        tail_ok=bool(np.all(r_t <= 0)),
        worst_log_ratio=float(np.max(np.concatenate([r_i, r_j, r_t]))),
    )


@dataclass(frozen=True)
class BondCheck:
    half_n: int
    beta: float
    checked: bool
    p: np.ndarray
    bound: np.ndarray
    holds: bool


def diblock_bond_check(half_n: int, beta: float) -> BondCheck:
    """Compare ``p_{i,2n}`` at original inverse temperature ``2 beta`` with
    ``C^(min(i, 2n-i)) / ((1-S)(1-C))``.  Skipped (``checked=False``) when
    ``beta <= beta_0``.
    """
    empty = np.zeros(0)
    if not beta > 0 or s_of_beta(beta) >= 1.0:
        return BondCheck(half_n, float(beta), False, empty, empty, True)
    S, C = s_of_beta(beta), collapse_rate(beta)
    prof = bond_profile(make_diblock(half_n), 2.0 * beta)
    i = np.arange(1, 2 * half_n)
    bound = C ** np.minimum(i, 2 * half_n - i) / ((1 - S) * (1 - C))
    return BondCheck(half_n, float(beta), True, prof.p, bound, bool(np.all(prof.p <= bound)))
