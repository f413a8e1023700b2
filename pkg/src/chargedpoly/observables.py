"""Observables of the polymer measure: bond probabilities and energy moments."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import exp, log, sqrt

import numpy as np

from .charges import ChargeSequence
from .partition import LOG2, forward_tables, logsumexp, suffix_log_partition

GOLDEN_BETA = log((1.0 + sqrt(5.0)) / 2.0)


class BoundPoleWarning(RuntimeWarning):
    """The bond lower bound was requested at or beyond its pole."""


@dataclass(frozen=True)
class BondProfile:
    beta: float
    p: np.ndarray  # p[i-1] = p_{i,n}, i = 1..n-1

    @property
    def n(self) -> int:
        return len(self.p) + 1


def bond_profile(omega: ChargeSequence, beta: float) -> BondProfile:
    """Stretch probabilities ``P(Delta S_i = 1)`` for ``1 <= i < n``.

    Uses ``Z_n(Delta S_i = 1) = Z_i * Z_(i,n]``, so one forward and one
    backward pass suffice.  ``beta`` is in the original convention.
    """
    if omega.n < 2:
        raise ValueError("bond profile needs n >= 2")
    fwd = forward_tables(omega.prefix, omega.sq_prefix, float(beta))
    bwd = suffix_log_partition(omega, beta)
    i = np.arange(1, omega.n)
    p = np.exp(fwd[i] + bwd[i] - fwd[-1])
    return BondProfile(float(beta), np.clip(p, 0.0, 1.0))


def empirical_cdf(profile: BondProfile, p: float) -> float:
    """Fraction of bonds with ``p_i <= p``."""
    if len(profile.p) == 0:
        raise ValueError("empty bond profile")
    return float(np.count_nonzero(profile.p <= p)) / len(profile.p)


def high_temp_slope(omega: ChargeSequence, i: int) -> float:
    """``sum_{0<u<=i<v<=n} w_u w_v 2^(u-v)``, evaluated in factored form."""
    n = omega.n
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got i={i}, n={n}")
    w = np.asarray(omega.values, dtype=np.float64)
    left = np.sum(w[:i] * np.exp2(np.arange(1, i + 1) - i))
    right = np.sum(w[i:] * np.exp2(i - np.arange(i + 1, n + 1)))
    return float(left * right)


def dgh2_bound(beta: float) -> float:
    """Uniform lower bound on every ``p_{i,n}`` (original convention).

    Returns 0 with a :class:`BoundPoleWarning` once ``beta`` reaches
    ``log((1+sqrt 5)/2)``, where the geometric series behind it diverges.
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    x = exp(beta) / (1.0 + exp(-beta))
    if beta >= GOLDEN_BETA or x >= 1.0:
        warnings.warn(f"dgh2_bound: beta={beta} is at or beyond the pole", BoundPoleWarning)
        return 0.0
    return 1.0 / (1.0 + (exp(0.5 * beta) + x) / (1.0 - x))


def energy_mean_var(omega: ChargeSequence, beta_bar: float) -> tuple[float, float]:
    """Mean and variance of ``sum_x Omega_n(x)^2`` under the bar polymer measure.

    The last word ``(k, m]`` is chosen with probability ``w_k`` and the part
    before it is an independent polymer of length ``k``, so the moments
    propagate as a mixture; the variance is a sum of nonnegative terms.
    """
    beta_bar = float(beta_bar)
    if beta_bar < 0:
        raise ValueError("beta must be nonnegative")
    P, n = omega.prefix, omega.n
    log_z = np.zeros(n + 1)
    log_z[0] = LOG2
    mean = np.zeros(n + 1)
    var = np.zeros(n + 1)
    for m in range(1, n + 1):
        k = np.arange(m)
        e = (P[m] - P[:m]).astype(np.float64) ** 2
        x = log_z[:m] + (k - m) * LOG2 - beta_bar * e
        log_z[m] = logsumexp(x)
        wk = np.exp(x - log_z[m])
        wk /= wk.sum()
        cm = mean[:m] + e
        mean[m] = np.dot(wk, cm)
        var[m] = np.dot(wk, var[:m]) + np.dot(wk, (cm - mean[m]) ** 2)
    return float(mean[n]), float(var[n])
