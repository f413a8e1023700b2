"""Log-domain partition functions of the directed charged polymer.

All tables hold natural logarithms; a zero partition function would be
``-inf`` but never occurs for finite ``beta``.  Two conventions are supported:

* ``original``: ``Z_n = sum_s exp(-beta * sum_{i<j} w_i w_j 1{s_i = s_j})``
* ``bar``: ``Zbar_n = E[exp(-beta * sum_x Omega_n(x)^2)]`` with ``Zbar_0 = 2``

For charges of modulus one they are related by
``Zbar_n = 2^(1-n) e^(-beta n) Z_n(2 beta)``; for general charges ``n`` is
replaced by ``sum_i w_i^2``, which is what the code uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import log
from typing import Callable

import numpy as np

from .charges import ChargeSequence

LOG2 = log(2.0)
MAX_ORACLE_N = 20


def logsumexp(x: np.ndarray, axis: int = -1) -> np.ndarray:
    """``log(sum(exp(x)))`` as ``max + log1p(sum of the other terms)``.

    Excluding the largest term keeps two-term sums like ``log(1 + e^-b)``
    accurate to the last bit, so equalities between tables survive rounding.
    """
    x = np.asarray(x, dtype=np.float64)
    x = np.moveaxis(x, axis, -1)
    if x.shape[-1] == 0:
        return np.full(x.shape[:-1], -np.inf)
    arg = np.argmax(x, axis=-1)[..., None]
    mx = np.take_along_axis(x, arg, axis=-1)
    finite = np.isfinite(mx)
    shift = np.where(finite, mx, 0.0)
    e = np.exp(x - shift)
    np.put_along_axis(e, arg, 0.0, axis=-1)
    out = np.log1p(np.sum(e, axis=-1)) + mx[..., 0]
    return np.where(finite[..., 0], out, mx[..., 0])


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not beta >= 0.0:
        raise ValueError(f"inverse temperature must be >= 0, got {beta}")
    return beta


def forward_tables(prefix: np.ndarray, sq_prefix: np.ndarray, beta: float) -> np.ndarray:
    """Batched forward recursion, original convention.

    ``prefix`` and ``sq_prefix`` have shape ``(..., n+1)``.  Row ``k`` of the
    result is ``log Z_k``; every row is computed independently of the others,
    so results do not depend on how sequences are batched.
    """
    prefix = np.asarray(prefix)
    sq_prefix = np.asarray(sq_prefix)
    n = prefix.shape[-1] - 1
    half_beta = 0.5 * beta
    out = np.zeros(prefix.shape, dtype=np.float64)
    for m in range(1, n + 1):
        d = prefix[..., m, None] - prefix[..., :m]
        # Q_(k,m] - Omega_(k,m]^2, exact for integer charges
        e = (sq_prefix[..., m, None] - sq_prefix[..., :m]) - d * d
        out[..., m] = logsumexp(out[..., :m] + half_beta * e)
    return out


def prefix_log_partition(omega: ChargeSequence, beta: float) -> np.ndarray:
    """``log Z_k`` for ``k = 0..n`` in the original convention."""
    beta = _check_beta(beta)
    return forward_tables(omega.prefix, omega.sq_prefix, beta)


def suffix_log_partition(omega: ChargeSequence, beta: float) -> np.ndarray:
    """``log Z_(i,n]`` for ``i = 0..n`` via the first-renewal decomposition."""
    beta = _check_beta(beta)
    P, Q, n = omega.prefix, omega.sq_prefix, omega.n
    half_beta = 0.5 * beta
    out = np.zeros(n + 1)
    for i in range(n - 1, -1, -1):
        d = P[i + 1:] - P[i]
        e = (Q[i + 1:] - Q[i]) - d * d
        out[i] = logsumexp(half_beta * e + out[i + 1:])
    return out


@dataclass(frozen=True)
class PartitionTables:
    beta: float
    n: int
    prefix_logZ: np.ndarray
    suffix_logZ: np.ndarray
    convention: str = "original"


def partition_tables(omega: ChargeSequence, beta: float) -> PartitionTables:
    return PartitionTables(
        beta=float(beta),
        n=omega.n,
        prefix_logZ=prefix_log_partition(omega, beta),
        suffix_logZ=suffix_log_partition(omega, beta),
    )


def bar_from_original(log_z_orig: np.ndarray, sq_prefix: np.ndarray, beta_bar: float) -> np.ndarray:
    """Convert a table of ``log Z_k(2 beta_bar)`` to ``log Zbar_k(beta_bar)``."""
    k = np.arange(log_z_orig.shape[-1])
    out = (1 - k) * LOG2 - beta_bar * sq_prefix + log_z_orig
    out[..., 0] = LOG2
    return out


def log_partition_bar_table(omega: ChargeSequence, beta_bar: float) -> np.ndarray:
    """``log Zbar_k`` for ``k = 0..n`` (``Zbar_0 = 2``)."""
    beta_bar = _check_beta(beta_bar)
    if beta_bar == 0.0:
        out = np.zeros(omega.n + 1)
        out[0] = LOG2
        return out
    z = prefix_log_partition(omega, 2.0 * beta_bar)
    return bar_from_original(z, omega.sq_prefix, beta_bar)


def log_partition_bar(omega: ChargeSequence, beta_bar: float) -> float:
    return float(log_partition_bar_table(omega, beta_bar)[-1])


def wsaw_log_partition(beta: float, n: int) -> np.ndarray:
    """``log Zbar_k^{beta,+}`` (all charges +1) for ``k = 0..n``."""
    beta = _check_beta(beta)
    ones = ChargeSequence(np.ones(max(n, 0), dtype=np.int64), "binary")
    if n == 0:
        return np.array([LOG2])
    return log_partition_bar_table(ones, beta)


# ---------------------------------------------------------------------------
# exhaustive oracles


def iter_paths(n: int, chunk: int = 4096):
    """Yield blocks of directed paths ``s_0..s_n`` as int arrays ``(P, n+1)``.

    ``s_0 = 0`` and ``s_1 = 1``; the ``n-1`` free steps run over ``{0,1}``.
    """
    if n == 0:
        yield np.zeros((1, 1), dtype=np.int64)
        return
    free = n - 1
    total = 1 << free
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        steps = (codes[:, None] >> np.arange(free, dtype=np.int64)) & 1
        s = np.zeros((len(codes), n + 1), dtype=np.int64)
        s[:, 1] = 1
        if free:
            s[:, 2:] = 1 + np.cumsum(steps, axis=1)
        yield s


def path_energy(paths: np.ndarray, values: np.ndarray, convention: str) -> np.ndarray:
    """Energy of each path: pair Hamiltonian (original) or ``sum_x Omega_n(x)^2`` (bar)."""
    sites = paths[:, 1:]
    w = np.asarray(values, dtype=np.float64)
    same = sites[:, :, None] == sites[:, None, :]
    pair = w[:, None] * w[None, :]
    if convention == "original":
        iu = np.triu(np.ones((len(w), len(w)), dtype=bool), k=1)
        return np.sum(np.where(same & iu, pair, 0.0), axis=(1, 2))
    if convention == "bar":
        return np.sum(np.where(same, pair, 0.0), axis=(1, 2))
    raise ValueError(f"unknown convention {convention!r}")


def _check_oracle_n(n: int) -> None:
    if n > MAX_ORACLE_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {MAX_ORACLE_N}, got {n}")


def oracle_log_partition(omega: ChargeSequence, beta: float, convention: str = "original") -> float:
    """Direct sum over all ``2^(n-1)`` paths.

    The bar convention uses the renewal form: the walk cuts the chain into
    words at the stretched steps and each word contributes ``Omega(word)^2``.
    """
    n = omega.n
    _check_oracle_n(n)
    beta = _check_beta(beta)
    if convention == "original":
        logs = [logsumexp(-beta * path_energy(s, omega.values, "original")) for s in iter_paths(n)]
        return float(logsumexp(np.array(logs)))
    if convention == "bar":
        if n == 0:
            return LOG2
        w = np.asarray(omega.values, dtype=np.float64)
        logs = []
        for s in iter_paths(n):
            # word boundaries: monomer k closes a word iff Delta S_k = 1 or k = n
            closes = np.ones((len(s), n), dtype=bool)
            closes[:, :-1] = np.diff(s[:, 1:], axis=1) == 1
            energy = np.zeros(len(s))
            acc = np.zeros(len(s))
            for k in range(n):
                acc = acc + w[k]
                energy += np.where(closes[:, k], acc * acc, 0.0)
                acc = np.where(closes[:, k], 0.0, acc)
            logs.append(logsumexp(-beta * energy))
        return float(logsumexp(np.array(logs)) - (n - 1) * LOG2)
    raise ValueError(f"unknown convention {convention!r}")


def oracle_expectation(
    omega: ChargeSequence,
    beta: float,
    observable: Callable[[np.ndarray], np.ndarray],
    convention: str = "original",
) -> float:
    """Gibbs average of ``observable(paths)`` over all paths of length ``n``.

    ``observable`` maps an int array of paths ``(P, n+1)`` to ``P`` values.
    """
    n = omega.n
    _check_oracle_n(n)
    beta = _check_beta(beta)
    log_w, vals = [], []
    for s in iter_paths(n):
        log_w.append(-beta * path_energy(s, omega.values, convention))
        vals.append(np.asarray(observable(s), dtype=np.float64))
    log_w = np.concatenate(log_w)
    vals = np.concatenate(vals)
    w = np.exp(log_w - log_w.max())
    return float(np.sum(w * vals) / np.sum(w))


def all_charge_sequences(n: int) -> np.ndarray:
    """All ``2^n`` binary charge sequences as rows of an int array."""
    return np.array(list(product((-1, 1), repeat=n)), dtype=np.int64).reshape(-1, n)
