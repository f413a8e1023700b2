"""Quenched free energy: single-sample, Monte Carlo and exact charge averages."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from ..charges import ChargeSequence, derive_seed, make_charges
from ..partition import LOG2, all_charge_sequences, bar_from_original, forward_tables, log_partition_bar

# Replica batches have a fixed size so that the floating-point path of each
# replica does not depend on the thread count.
CHUNK = 16
MAX_EXACT_N = 12


def finite_fe(omega: ChargeSequence, beta_bar: float) -> float:
    """``(1/n) log Zbar_n`` in the bar convention."""
    if omega.n < 1:
        raise ValueError("need n >= 1")
    if beta_bar == 0:
        return 0.0
    return log_partition_bar(omega, beta_bar) / omega.n


def _batch_fe(seqs: list[ChargeSequence], beta_bar: float) -> np.ndarray:
    P = np.stack([s.prefix for s in seqs])
    Q = np.stack([s.sq_prefix for s in seqs])
    z = forward_tables(P, Q, 2.0 * beta_bar)
    n = P.shape[1] - 1
    return bar_from_original(z, Q, beta_bar)[:, n] / n


def sample_charges(n: int, m: int, seed: int, dist: str) -> list[ChargeSequence]:
    """Replica ``j`` uses the seed derived from ``(seed, j)``."""
    return [make_charges(dist, n, derive_seed(seed, j)) for j in range(m)]


def quenched_samples(n: int, beta_bar: float, m: int, seed: int, dist: str = "binary",
                     threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Per-replica ``(1/n) log Zbar_n`` and ``|Omega_n|`` for ``m`` replicas."""
    seqs = sample_charges(n, m, seed, dist)
    abs_total = np.array([abs(float(s.prefix[-1])) for s in seqs])
    if beta_bar == 0:
        return np.zeros(m), abs_total
    chunks = [seqs[a:a + CHUNK] for a in range(0, m, CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _batch_fe(c, beta_bar), chunks))
    else:
        parts = [_batch_fe(c, beta_bar) for c in chunks]
    return np.concatenate(parts), abs_total


def welford(values) -> tuple[float, float, int]:
    """One-pass mean and unbiased variance, reduced in index order."""
    count, mean, m2 = 0, 0.0, 0.0
    for x in values:
        count += 1
        d = float(x) - mean
        mean += d / count
        m2 += d * (float(x) - mean)
    var = m2 / (count - 1) if count > 1 else 0.0
    return mean, var, count


def mc_quenched_fe(n: int, beta_bar: float, m: int, seed: int, dist: str = "binary",
                   threads: int = 1) -> tuple[float, float]:
    """Mean and standard error of the finite-volume free energy over ``m`` replicas."""
    if m < 2:
        raise ValueError("need at least 2 samples")
    fe, _ = quenched_samples(n, beta_bar, m, seed, dist, threads)
    mean, var, count = welford(fe)
    return mean, sqrt(var / count)


def exact_avg_fe(n: int, beta_bar: float) -> float:
    """Exact average of ``(1/n) log Zbar_n`` over all ``2^n`` binary sequences."""
    if not 1 <= n <= MAX_EXACT_N:
        raise ValueError(f"exact charge average limited to 1 <= n <= {MAX_EXACT_N}")
    if beta_bar == 0:
        return 0.0
    W = all_charge_sequences(n)
    P = np.zeros((len(W), n + 1), dtype=np.int64)
    np.cumsum(W, axis=1, out=P[:, 1:])
    Q = np.broadcast_to(np.arange(n + 1), P.shape)
    z = forward_tables(P, Q, 2.0 * beta_bar)
    return float(np.mean(bar_from_original(z, Q, beta_bar)[:, n]) / n)


def exact_annealed_partition(n: int, beta_bar: float) -> float:
    """``E Zbar_n`` by averaging over all ``2^n`` binary sequences."""
    if not 1 <= n <= MAX_EXACT_N:
        raise ValueError(f"exact charge average limited to 1 <= n <= {MAX_EXACT_N}")
    W = all_charge_sequences(n)
    P = np.zeros((len(W), n + 1), dtype=np.int64)
    np.cumsum(W, axis=1, out=P[:, 1:])
    Q = np.broadcast_to(np.arange(n + 1), P.shape)
    z = bar_from_original(forward_tables(P, Q, 2.0 * beta_bar), Q, beta_bar)[:, n]
    return float(np.mean(np.exp(z)))


@dataclass(frozen=True)
class FreeEnergyPoint:
    beta_bar: float
    n: int
    samples: int
    fe_mean: float
    fe_stderr: float
    lb_elementary: float
    lb_variational: float
    ub_annealed: float


def free_energy_point(n: int, beta_bar: float, m: int, seed: int, dist: str = "binary",
                      threads: int = 1) -> FreeEnergyPoint:
    """MC estimate together with every analytic bound at one temperature.

    ``lb_elementary`` is ``max(-beta, -log 2 - beta * mean|Omega_n| / n)``
    for +-1 charges (the folding bound needs unit charges) and ``-beta``
    otherwise.  Bounds that do not apply to ``dist`` are NaN.
    """
    from .annealed import annealed_fe
    from .variational import variational_lb

    fe, abs_total = quenched_samples(n, beta_bar, m, seed, dist, threads)
    mean, var, count = welford(fe)
    binary_like = dist in ("binary", "diblock")
    lb = -beta_bar
    if binary_like:
        lb = max(lb, -LOG2 - beta_bar * float(np.mean(abs_total)) / n)
    nan = float("nan")
    return FreeEnergyPoint(
        beta_bar=float(beta_bar),
        n=n,
        samples=m,
        fe_mean=mean,
        fe_stderr=sqrt(var / count),
        lb_elementary=lb,
        lb_variational=(variational_lb(beta_bar) if beta_bar > 0 else 0.0) if dist == "binary" else nan,
        ub_annealed=annealed_fe(beta_bar, dist) if dist in ("binary", "gaussian") else nan,
    )
