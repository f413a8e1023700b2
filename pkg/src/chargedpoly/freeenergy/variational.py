"""Closed-form variational lower bound from the nearest-neighbour folding law.

Under ``Q_u`` monomer ``i`` ends a word with probability
``exp(u * w_i * w_{i+1}) / 2`` (binary charges), independently given the
charges.  The bound is ``-beta + max_u phi(beta, u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import cosh, expm1, log, log1p, sinh, sqrt
from typing import Callable

import numpy as np

LOG2 = log(2.0)
INV_PHI = (sqrt(5.0) - 1.0) / 2.0
GRID_POINTS = 10_000


def _xlogx_one_minus(a: float) -> float:
    # (1 - a) log(1 - a), with 0 log 0 = 0
    if a >= 1.0:
        return 0.0
    return (1.0 - a) * log1p(-a)


def eta(u: float) -> float:
    """``[(2-e^u) log(2-e^u) + (2-e^-u) log(2-e^-u)] / 4`` on ``[0, log 2]``."""
    if not 0.0 <= u <= LOG2 + 1e-15:
        raise ValueError(f"eta is defined on [0, log 2], got {u}")
    return 0.25 * (_xlogx_one_minus(expm1(u)) + _xlogx_one_minus(expm1(-u)))


def objective(beta: float, u: float) -> float:
    s = sinh(u)
    return beta * s / (1.0 + 0.5 * s) - 0.5 * u * s - eta(u)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
                       max_iter: int = 200) -> tuple[float, float]:
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def variational_lb(beta: float, return_argmax: bool = False):
    """Lower bound on the quenched free energy (bar convention, binary charges).

    A dense grid on ``[0, log 2]`` locates the best cell, then golden-section
    refines inside its two neighbours; no unimodality is assumed globally.
    """
    if not beta > 0:
        raise ValueError("beta must be > 0")
    grid = np.linspace(0.0, LOG2, GRID_POINTS)
    vals = np.array([objective(beta, u) for u in grid])
    k = int(np.argmax(vals))
    best_u, best = float(grid[k]), float(vals[k])
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, GRID_POINTS - 1)]
    u, val = golden_section_max(lambda x: objective(beta, x), float(lo), float(hi))
    if val > best:
        best_u, best = u, val
    lb = -beta + best
    return (lb, best_u) if return_argmax else lb


def relative_entropy_qu(u: float) -> float:
    """Specific relative entropy of ``Q_u`` with respect to ``Q_0``."""
    return 2.0 / cosh(u) * (eta(u) + 0.5 * u * sinh(u))


def word_energy_qu(u: float) -> float:
    """``E_{Q_u}[(w_1 + ... + w_L)^2]``."""
    s = sinh(u)
    return 2.0 / cosh(u) * (1.0 - s / (1.0 + 0.5 * s))


# ---------------------------------------------------------------------------
# exact word moments by enumeration over the charges


@dataclass(frozen=True)
class QuMoments:
    u: float
    i: int
    j: int
    gt_enumerated: float
    gt_closed: float
    eq_enumerated: float
    eq_closed: float
    pair_enumerated: float
    pair_closed: float


def _stop_probs(u: float, omega: np.ndarray) -> np.ndarray:
    # theta_k = 1 with probability e^(u w_k w_{k+1}) / 2, k = 1..len-1
    return 0.5 * np.exp(u * omega[:, :-1] * omega[:, 1:])


def qu_word_moments(u: float, phi: Callable[[int], float], i: int, j: int) -> QuMoments:
    """Enumerated and closed-form values of three ``Q_u`` word moments.

    * ``E[phi(w_i w_{i+1}) 1{L > i}]``
    * ``E[phi(w_i w_{i+1}) 1{L = i}]``
    * ``E[w_i w_j 1{L >= j}]``

    Expectations run over all ``2^(j+1)`` charge prefixes.
    """
    if not 0.0 <= u <= LOG2 + 1e-15:
        raise ValueError("u must lie in [0, log 2]")
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    omega = np.array(list(product((-1, 1), repeat=j + 1)), dtype=np.float64)
    weight = 0.5 ** (j + 1)
    stop = _stop_probs(u, omega)  # column k-1 <-> theta_k
    go = 1.0 - stop
    x_i = omega[:, i - 1] * omega[:, i]
    phi_i = np.where(x_i > 0, phi(1), phi(-1))

    gt = weight * np.sum(phi_i * np.prod(go[:, :i], axis=1))
    eq = weight * np.sum(phi_i * np.prod(go[:, :i - 1], axis=1) * stop[:, i - 1])
    pair = weight * np.sum(omega[:, i - 1] * omega[:, j - 1] * np.prod(go[:, :j - 1], axis=1))

    r = 1.0 - cosh(u) / 2.0
    return QuMoments(
        u=u, i=i, j=j,
        gt_enumerated=float(gt),
        gt_closed=r ** (i - 1) * (phi(-1) * (2.0 - np.exp(-u)) + phi(1) * (2.0 - np.exp(u))) / 4.0,
        eq_enumerated=float(eq),
        eq_closed=r ** (i - 1) * (phi(-1) * np.exp(-u) + phi(1) * np.exp(u)) / 4.0,
        pair_enumerated=float(pair),
        pair_closed=r ** (i - 1) * (-sinh(u) / 2.0) ** (j - i),
    )


def qu_length_law(u: float, ell: int) -> tuple[float, float]:
    """``Q_u(L = ell)`` by enumeration and by the geometric closed form."""
    omega = np.array(list(product((-1, 1), repeat=ell + 1)), dtype=np.float64)
    stop = _stop_probs(u, omega)
    enum = np.mean(np.prod(1.0 - stop[:, :ell - 1], axis=1) * stop[:, ell - 1])
    q = cosh(u) / 2.0
    return float(enum), (1.0 - q) ** (ell - 1) * q
