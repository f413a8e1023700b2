"""Weakly self-avoiding walk: free energy, the series S(beta) and beta_0."""

from __future__ import annotations

from math import ceil, exp, log, sqrt

import numpy as np
from scipy.optimize import brentq

from ..partition import logsumexp

LOG2 = log(2.0)


def _check(beta: float) -> float:
    beta = float(beta)
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    return beta


def s_of_beta(beta: float) -> float:
    """``S(beta) = sum_{t>=1} exp(-beta t^2)``, truncated at ``t <= ceil(sqrt(50/beta))``."""
    beta = _check(beta)
    t = np.arange(1, ceil(sqrt(50.0 / beta)) + 1)
    return float(np.sum(np.exp(-beta * t * t)))


def beta0() -> float:
    """Root of ``S(beta) = 1``; above it the WSAW free energy exceeds ``log 2``."""
    return float(brentq(lambda b: s_of_beta(b) - 1.0, 0.05, 5.0, xtol=1e-15, rtol=1e-15))


def _log_word_sum(f: float, beta: float) -> float:
    # log sum_{t>=1} exp((f - log 2) t - beta t^2); the summand peaks near t*
    a = f - LOG2
    t_star = max(a / (2.0 * beta), 0.0)
    t_max = ceil(t_star + sqrt(60.0 / beta)) + 1
    t = np.arange(1, t_max + 1, dtype=np.float64)
    return float(logsumexp(a * t - beta * t * t))


def wsaw_fe(beta: float) -> float:
    """``F_+(beta)``: the ``f`` at which the word generating function equals 1.

    ``(1/n) log Zbar_n^{beta,+} -> -F_+(beta)``.
    """
    beta = _check(beta)
    h = lambda f: _log_word_sum(f, beta)
    lo, hi = LOG2 - 1.0, LOG2 + 1.0
    while h(lo) > 0:
        lo -= 2.0 * (hi - lo)
    while h(hi) < 0:
        hi += 2.0 * (hi - lo)
    return float(brentq(h, lo, hi, xtol=1e-14, rtol=1e-15))


def collapse_rate(beta: float) -> float:
    """``C(beta) = 2 exp(-F_+(beta))``, in ``(0, 1)`` exactly when ``beta > beta_0``."""
    return 2.0 * exp(-wsaw_fe(beta))
