"""Small analytic lemmas behind the annealed and high-temperature bounds."""

from __future__ import annotations

import numpy as np


def fourth_moment(ell: int) -> int:
    """``E Omega_ell^4 = 3 ell^2 - 2 ell`` for +-1 charges."""
    if ell < 1:
        raise ValueError("need ell >= 1")
    return 3 * ell * ell - 2 * ell


def cubic(u1: float, u2: float, z):
    return 2.0 * z ** 3 + (u1 - 5.0) * z ** 2 + (u2 + 4.0) * z - 1.0


def cubic_root_z0(u1: float, u2: float, tol: float = 1e-15, max_iter: int = 50) -> float:
    """Root of ``2z^3 + (u1-5)z^2 + (u2+4)z - 1`` continued from ``z = 1/2``."""
    z = 0.5
    for _ in range(max_iter):
        p = cubic(u1, u2, z)
        dp = 6.0 * z * z + 2.0 * (u1 - 5.0) * z + (u2 + 4.0)
        step = p / dp
        z -= step
        if abs(step) <= tol * max(1.0, abs(z)):
            return z
    raise ArithmeticError(f"Newton did not converge for u=({u1}, {u2})")


def cubic_root_derivatives(u1: float = 0.0, u2: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Gradient and Hessian of ``z0`` in ``(u1, u2)`` by implicit differentiation."""
    z = cubic_root_z0(u1, u2)
    p_z = 6.0 * z * z + 2.0 * (u1 - 5.0) * z + (u2 + 4.0)
    p_zz = 12.0 * z + 2.0 * (u1 - 5.0)
    p_u = np.array([z * z, z])  # dP/du1, dP/du2
    p_zu = np.array([2.0 * z, 1.0])
    grad = -p_u / p_z
    hess = -(np.outer(p_zu, grad) + np.outer(grad, p_zu) + p_zz * np.outer(grad, grad)) / p_z
    return grad, hess


def cubic_root_is_unique(u1: float, u2: float) -> bool:
    """True when ``cubic_root_z0`` is the only real root below 1.

    Since the cubic has positive leading coefficient and ``P(1) = u1 + u2``,
    with ``u1 + u2 > 0`` there is an odd number of real roots below 1; the
    check counts them directly.
    """
    roots = np.roots([2.0, u1 - 5.0, u2 + 4.0, -1.0])
    real = roots[np.abs(roots.imag) < 1e-9].real
    below = real[real < 1.0]
    z0 = cubic_root_z0(u1, u2)
    return len(below) == 1 and abs(below[0] - z0) < 1e-9


def ann_series_closed(c1: float, c2: float, z: float) -> float:
    """``sum_{l>=1} z^l (1 + c1 l + c2 l^2)`` for ``|z| < 1``."""
    w = 1.0 - z
    return z / w + (c1 + c2) * z / w ** 2 + 2.0 * c2 * z ** 2 / w ** 3


def ann_series_to_cubic(c1: float, c2: float, z: float) -> bool:
    """Whether ``series < 1`` and ``cubic(c2-c1, c1+c2, z) < 0`` agree."""
    if not abs(z) < 1:
        raise ValueError("need |z| < 1")
    return (ann_series_closed(c1, c2, z) < 1.0) == (cubic(c2 - c1, c1 + c2, z) < 0.0)


def high_temp_coeff_total(n: int) -> float:
    """``C_n = 4 sum_{1<=i<j<=n} (2^-(j-i) - 4^-(j-i))`` in closed form."""
    if n < 1:
        raise ValueError("need n >= 1")

    def gap_sum(x: float) -> float:
        # sum_{d=1}^{n-1} (n - d) x^d
        return (n - (n + 1) * x + x ** (n + 1)) / (1.0 - x) ** 2 - n

    return 4.0 * (gap_sum(0.5) - gap_sum(0.25))


def high_temp_coeff(n: int) -> float:
    """Second-order coefficient ``c_n = C_n / (2n)`` of ``(1/n) E log Zbar_n``."""
    if n < 2:
        raise ValueError("need n >= 2")
    return high_temp_coeff_total(n) / (2.0 * n)
