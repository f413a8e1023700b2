"""Annealed free energy from the renewal generating function.

``Fann(beta) = -sup{f >= 0 : sum_l (e^f / 2)^l g_beta(l) < 1}`` where
``g_beta(l) = E exp(-beta Omega_l^2)``.
"""

from __future__ import annotations

from functools import lru_cache
from math import exp, log

import numpy as np
from scipy.special import gammaln

LOG2 = log(2.0)
TAIL_TOL = 1e-12
F_TOL = 1e-10
F_MAX = LOG2 - 1e-12


def _g_binary_single(ell: int, beta: float) -> float:
    k = np.arange(ell + 1)
    logc = gammaln(ell + 1) - gammaln(k + 1) - gammaln(ell - k + 1) - ell * LOG2
    return float(np.sum(np.exp(logc - beta * (2 * k - ell) ** 2.0)))


@lru_cache(maxsize=64)
def _g_binary_block(beta: float, start: int, stop: int) -> np.ndarray:
    return np.array([_g_binary_single(ell, beta) for ell in range(start, stop)])


def g_beta_array(ells: np.ndarray, beta: float, dist: str) -> np.ndarray:
    ells = np.asarray(ells)
    if dist == "gaussian":
        return 1.0 / np.sqrt(1.0 + 2.0 * beta * ells)
    if dist == "binary":
        if len(ells) and np.all(np.diff(ells) == 1):
            return _g_binary_block(float(beta), int(ells[0]), int(ells[-1]) + 1)
        return np.array([_g_binary_single(int(e), beta) for e in ells])
    raise ValueError(f"unknown charge distribution {dist!r}")


def g_beta(ell: int, beta: float, dist: str = "binary") -> float:
    """``E exp(-beta * Omega_ell^2)`` for binary or standard Gaussian charges."""
    if ell < 1 or beta < 0:
        raise ValueError("need ell >= 1 and beta >= 0")
    return float(g_beta_array(np.array([ell]), beta, dist)[0])


def annealed_series(f: float, beta: float, dist: str = "binary", max_terms: int | None = None):
    """Partial sum of ``sum_l (e^f/2)^l g_beta(l)`` and the number of terms used.

    Summation stops once the geometric tail bound ``z^(L+1)/(1-z)`` falls
    below ``1e-12`` (valid since ``g_beta <= 1``), or as soon as the partial
    sum reaches 1, since only the comparison with 1 matters for the root.
    """
    log_z = f - LOG2
    z = exp(log_z)
    total, start, block = 0.0, 1, 256
    while True:
        stop = start + block
        if max_terms is not None:
            stop = min(stop, max_terms + 1)
        ells = np.arange(start, stop)
        terms = np.exp(ells * log_z) * g_beta_array(ells, beta, dist)
        total += float(np.sum(terms))
        start = stop
        if max_terms is not None and start > max_terms:
            return total, start - 1
        if total >= 1.0:
            return total, start - 1
        tail = exp(start * log_z) / (1.0 - z) if z < 1 else float("inf")
        if tail < TAIL_TOL or total + tail < 1.0:
            return total, start - 1
        block = min(2 * block, 1 << 16)


def _below_one(f: float, beta: float, dist: str) -> bool:
    return annealed_series(f, beta, dist)[0] < 1.0


def annealed_fe(beta: float, dist: str = "binary") -> float:
    """Bisection for ``-sup{f : series(f) < 1}`` on ``[0, log 2)``."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if beta == 0:
        return 0.0
    lo, hi = 0.0, F_MAX
    at_zero = annealed_series(lo, beta, dist)[0]
    if at_zero >= 1.0:
        # for tiny beta the series at f = 0 is 1 up to rounding: the root is 0
        if at_zero - 1.0 <= 1e-12:
            return 0.0
        raise ArithmeticError("annealed bisection does not bracket at f = 0")
    if _below_one(hi, beta, dist):
        return -hi
    while hi - lo > F_TOL:
        mid = 0.5 * (lo + hi)
        if _below_one(mid, beta, dist):
            lo = mid
        else:
            hi = mid
    return -0.5 * (lo + hi)


def annealed_partition(n: int, beta: float, dist: str = "binary") -> float:
    """``E Zbar_n = 2 sum over compositions of n of prod g_beta(l_i) 2^(-l_i)``."""
    if n < 1:
        raise ValueError("need n >= 1")
    ells = np.arange(1, n + 1)
    w = g_beta_array(ells, beta, dist) * np.exp2(-ells)
    a = np.zeros(n + 1)
    a[0] = 1.0
    for m in range(1, n + 1):
        a[m] = np.dot(a[m - 1::-1][:m], w[:m])
    return 2.0 * a[n]
