"""Simple-random-walk charged polymer on Z^d: enumeration and importance sampling.

The energy of a path is ``H(S) = sum_x (sum_i w_i 1{S_i = x})^2`` over
monomers ``1..n`` and the bar partition function is ``E[exp(-beta H(S))]``
under the uniform simple random walk.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log, sqrt, tanh

import numpy as np

from .charges import ChargeSequence, _rng, derive_seed, make_tilted
from .partition import logsumexp

MAX_PATHS = 20_000_000
CHUNK = 1 << 15


def unit_steps(d: int) -> np.ndarray:
    eye = np.eye(d, dtype=np.int64)
    return np.concatenate([eye, -eye])


@dataclass(frozen=True)
class LatticePath:
    steps: np.ndarray  # (n, d) unit vectors

    @property
    def sites(self) -> np.ndarray:
        """Positions ``S_1..S_n``."""
        return np.cumsum(self.steps, axis=0)

    @property
    def occupation(self) -> dict:
        out: dict = {}
        for x in map(tuple, self.sites):
            out[x] = out.get(x, 0) + 1
        return out

    @property
    def range(self) -> int:
        return len(self.occupation)


def undirected_hamiltonian(path: LatticePath, omega: ChargeSequence) -> float:
    n = len(path.steps)
    if omega.n < n:
        raise ValueError("charge sequence shorter than the path")
    charge: dict = {}
    for x, w in zip(map(tuple, path.sites), omega.values[:n]):
        charge[x] = charge.get(x, 0.0) + float(w)
    return float(sum(c * c for c in charge.values()))


@dataclass(frozen=True)
class PathStats:
    """Per-path statistics for a block of walks, all arrays of length ``P``."""

    energy: np.ndarray
    range: np.ndarray
    once: np.ndarray  # number of sites visited exactly once
    end_x: np.ndarray  # first coordinate of S_n


def _site_codes(pos: np.ndarray, n: int) -> np.ndarray:
    # pos: (P, n, d) with coordinates in [-n, n]
    base = 2 * n + 1
    code = np.zeros(pos.shape[:2], dtype=np.int64)
    for k in range(pos.shape[2]):
        code = code * base + (pos[:, :, k] + n)
    return code


def path_stats(steps: np.ndarray, values: np.ndarray) -> PathStats:
    """Energy, range, once-visited count and endpoint for a block of walks.

    ``steps`` has shape ``(P, n, d)``.  Sites are grouped per path by sorting
    their codes, which keeps memory linear in ``P * n``.
    """
    P, n, _ = steps.shape
    pos = np.cumsum(steps, axis=1)
    code = _site_codes(pos, n)
    order = np.argsort(code, axis=1, kind="stable")
    sc = np.take_along_axis(code, order, axis=1)
    sw = np.asarray(values, dtype=np.float64)[order]
    new = np.ones((P, n), dtype=bool)
    new[:, 1:] = sc[:, 1:] != sc[:, :-1]
    seg = np.cumsum(new.ravel()) - 1
    seg_charge = np.bincount(seg, weights=sw.ravel())
    seg_count = np.bincount(seg)
    seg_row = np.repeat(np.arange(P), n)[new.ravel()]
    energy = np.bincount(seg_row, weights=seg_charge ** 2, minlength=P)
    rng_ = np.bincount(seg_row, minlength=P)
    once = np.bincount(seg_row, weights=(seg_count == 1).astype(np.float64), minlength=P)
    return PathStats(energy, rng_, once.astype(np.int64), pos[:, -1, 0])


def _enumerate_block(start: int, stop: int, n: int, d: int, values: np.ndarray) -> PathStats:
    codes = np.arange(start, stop, dtype=np.int64)
    digits = (codes[:, None] // (2 * d) ** np.arange(n, dtype=np.int64)) % (2 * d)
    return path_stats(unit_steps(d)[digits], values)


@dataclass(frozen=True)
class UndirectedSummary:
    n: int
    d: int
    beta: float
    log_z: float
    p_range_small: float  # P(R_n <= c n)
    log_p_range_small: float
    c: float
    mean_speed_right: float  # E[S_n.e1 / n | S_n.e1 > 0]
    range_ineq_violations: int
    straight_path_lower: float
    paths: int


def enumerate_undirected(omega: ChargeSequence, beta: float, d: int = 1, c: float = 0.5,
                         n: int | None = None, threads: int = 1) -> UndirectedSummary:
    """Exact sums over all ``(2d)^n`` walks.

    The path space is split into fixed blocks of consecutive path codes;
    block results are reduced in index order.
    """
    n = omega.n if n is None else n
    if omega.n < n:
        raise ValueError("charge sequence shorter than n")
    total = (2 * d) ** n
    if total > MAX_PATHS:
        raise ValueError(f"(2d)^n = {total} exceeds the enumeration limit {MAX_PATHS}")
    values = np.asarray(omega.values[:n], dtype=np.float64)
    blocks = [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]
    work = lambda b: _enumerate_block(b[0], b[1], n, d, values)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(work, blocks))
    else:
        stats = [work(b) for b in blocks]
    energy = np.concatenate([s.energy for s in stats])
    rng_ = np.concatenate([s.range for s in stats])
    end_x = np.concatenate([s.end_x for s in stats])
    log_w = -beta * energy
    log_sum = float(logsumexp(log_w))
    w = np.exp(log_w - log_sum)
    mask = rng_ <= c * n
    small = float(np.sum(w[mask]))
    log_small = float(logsumexp(log_w[mask]) - log_sum) if mask.any() else float("-inf")
    right = end_x > 0
    mean_speed = float(np.sum(w[right] * end_x[right] / n) / np.sum(w[right])) if right.any() else float("nan")
    omega_n = float(np.sum(values))
    violations = int(np.count_nonzero(energy * rng_ < omega_n ** 2 - 1e-9 * max(1.0, omega_n ** 2)))
    return UndirectedSummary(
        n=n, d=d, beta=float(beta),
        log_z=log_sum - n * log(2 * d),
        p_range_small=small, log_p_range_small=log_small, c=c,
        mean_speed_right=mean_speed,
        range_ineq_violations=violations,
        straight_path_lower=-n * log(2 * d) - beta * float(np.sum(values ** 2)),
        paths=total,
    )


def range_trend(ns, delta: float, beta: float, replicas: int = 16, seed: int = 0,
                d: int = 1, c: float = 0.5, dist: str = "gaussian") -> np.ndarray:
    """Disorder average of ``log P(R_n <= c n)`` for each ``n`` in ``ns``.

    A single charge sequence gives a noisy sequence in ``n``; averaging the
    log probability over tilted replicas shows the decay trend.
    """
    ns = [int(n) for n in ns]
    out = np.zeros((replicas, len(ns)))
    for r in range(replicas):
        w = make_tilted(max(ns), delta, derive_seed(seed, r), dist)
        out[r] = [enumerate_undirected(w, beta, d, c, n=n).log_p_range_small for n in ns]
    return out.mean(axis=0)


def ballistic_condition(delta: float, beta: float, dist: str = "gaussian") -> tuple[bool, float]:
    """``m(delta)^2 - m'(delta) > log(2) / beta`` with its margin."""
    if not (delta > 0 and beta > 0):
        raise ValueError("need delta > 0 and beta > 0")
    if dist == "gaussian":
        m, dm = delta, 1.0
    elif dist == "binary":
        m = tanh(delta)
        dm = 1.0 - m * m
    else:
        raise ValueError(f"unknown charge distribution {dist!r}")
    margin = m * m - dm - log(2.0) / beta
    return margin > 0, margin


@dataclass(frozen=True)
class ISEstimate:
    n: int
    d: int
    beta: float
    samples: int
    ess: float
    reliable: bool
    p_range_small: float
    p_range_small_se: float
    once_fraction: float
    once_fraction_se: float
    range_ineq_fraction: float  # fraction of sampled paths with H * R_n >= Omega_n^2
    once_bound_fraction: float  # fraction with 2 R_n / n - 1 <= once / n


def _snis(log_w: np.ndarray, f: np.ndarray) -> tuple[float, float]:
    w = np.exp(log_w - log_w.max())
    w /= w.sum()
    mu = float(np.dot(w, f))
    se = float(sqrt(np.sum(w * w * (f - mu) ** 2)))
    return mu, se


def mc_undirected(n: int, beta: float, omega: ChargeSequence, d: int = 1, samples: int = 10_000,
                  seed: int = 0, c: float = 0.5) -> ISEstimate:
    """Self-normalized importance sampling with the uniform walk as proposal."""
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if omega.n < n:
        raise ValueError("charge sequence shorter than n")
    values = np.asarray(omega.values[:n], dtype=np.float64)
    rng = _rng(seed)
    dirs = rng.integers(0, 2 * d, size=(samples, n))
    st = path_stats(unit_steps(d)[dirs], values)
    log_w = -beta * st.energy
    w = np.exp(log_w - log_w.max())
    ess = float(w.sum() ** 2 / np.sum(w * w))
    p_small, p_se = _snis(log_w, (st.range <= c * n).astype(np.float64))
    once, once_se = _snis(log_w, st.once / n)
    omega_n = float(values.sum())
    range_ok = st.energy * st.range >= omega_n ** 2 - 1e-9 * max(1.0, omega_n ** 2)
    once_ok = 2 * st.range - n <= st.once
    return ISEstimate(
        n=n, d=d, beta=float(beta), samples=samples, ess=ess, reliable=ess >= 10,
        p_range_small=p_small, p_range_small_se=p_se,
        once_fraction=once, once_fraction_se=once_se,
        range_ineq_fraction=float(np.mean(range_ok)),
        once_bound_fraction=float(np.mean(once_ok)),
    )
