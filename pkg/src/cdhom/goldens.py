"""Hand-expanded m=1 and m=2 closed forms, kept as an independent path.

These transcribe the explicit one-block and two-block formulas for the
coefficient matrices, the shift blocks, and the kernels, written out
factor by factor exactly as they appear in closed form.  Nothing here
calls the general-m machinery; golden tests compare the two paths
entrywise.  Matrix entries whose basis slot is structurally zero (column
j of the degree-n coefficient or shift matrices with j > n, rows l > n
of the coefficient matrices) are set to zero, matching the convention
that those slots hold the zero vector.
"""

from __future__ import annotations

import math

import numpy as np

from .scalars import cpow_principal, pochhammer


def _poch_ratio_sqrt(x: float, y: float, n: int) -> float:
    """sqrt((x)_n / (y)_n)."""
    return math.sqrt(pochhammer(x, n) / pochhammer(y, n))


def g_matrix_m1(n: int, lam: float) -> np.ndarray:
    """Coefficient matrix of degree n for the one-block (m=1) family."""
    tl = 2.0 * lam
    out = np.zeros((2, 2))
    out[0, 0] = _poch_ratio_sqrt(tl - 1.0, 1.0, n)
    if n >= 1:
        out[1, 0] = math.sqrt(n / (tl - 1.0)) * _poch_ratio_sqrt(tl, 1.0, n - 1)
        out[1, 1] = _poch_ratio_sqrt(tl + 1.0, 1.0, n - 1)
    return out


def g_matrix_m2(n: int, lam: float) -> np.ndarray:
    """Coefficient matrix of degree n for the two-block (m=2) family."""
    tl = 2.0 * lam
    out = np.zeros((3, 3))
    out[0, 0] = _poch_ratio_sqrt(tl - 2.0, 1.0, n)
    if n >= 1:
        out[1, 0] = math.sqrt(n / (tl - 2.0)) * _poch_ratio_sqrt(tl - 1.0, 1.0, n - 1)
        out[1, 1] = _poch_ratio_sqrt(tl, 1.0, n - 1)
    if n >= 2:
        out[2, 0] = math.sqrt(n * (n - 1) / ((tl - 2.0) * (tl - 1.0))) * _poch_ratio_sqrt(tl, 1.0, n - 2)
        out[2, 1] = 2.0 * math.sqrt((n - 1) / tl) * _poch_ratio_sqrt(tl + 1.0, 1.0, n - 2)
        out[2, 2] = _poch_ratio_sqrt(tl + 2.0, 1.0, n - 2)
    return out


def shift_block_m1(n: int, lam: float, mu1: float) -> np.ndarray:
    """Shift block W(n) for m=1 with mu = (1, mu1)."""
    tl = 2.0 * lam
    out = np.zeros((2, 2))
    out[0, 0] = math.sqrt((n + 1) / (tl + n - 1.0))
    out[1, 0] = -(1.0 / mu1) * math.sqrt(tl / (tl - 1.0)) * math.sqrt(1.0 / ((tl + n - 1.0) * (tl + n)))
    if n >= 1:
        out[1, 1] = math.sqrt(n / (tl + n))
    return out


def shift_block_m2(n: int, lam: float, mu1: float, mu2: float) -> np.ndarray:
    """Shift block W(n) for m=2 with mu = (1, mu1, mu2)."""
    tl = 2.0 * lam
    out = np.zeros((3, 3))
    out[0, 0] = math.sqrt((n + 1) / (tl + n - 2.0))
    out[1, 0] = -(1.0 / mu1) * math.sqrt((tl - 1.0) / (tl - 2.0)) * math.sqrt(
        1.0 / ((tl + n - 1.0) * (tl + n - 2.0))
    )
    out[2, 0] = -(2.0 / mu2) * math.sqrt((tl + 1.0) / pochhammer(tl - 2.0, 3)) * math.sqrt(
        n / pochhammer(tl + n - 2.0, 3)
    )
    if n >= 1:
        out[1, 1] = math.sqrt(n / (tl + n - 1.0))
        out[2, 1] = -(2.0 * mu1 / mu2) * math.sqrt((tl + 1.0) / tl) * math.sqrt(
            1.0 / ((tl + n - 1.0) * (tl + n))
        )
    if n >= 2:
        out[2, 2] = math.sqrt((n - 1.0) / (tl + n))
    return out


def kernel_m1(z: complex, w: complex, lam: float, mu1: float) -> np.ndarray:
    """Kernel K(z, w) for m=1 with mu = (1, mu1)."""
    tl = 2.0 * lam
    s = 1.0 - w.conjugate() * z
    out = np.zeros((2, 2), dtype=complex)
    out[0, 0] = cpow_principal(s, -(tl - 1.0))
    out[0, 1] = z * cpow_principal(s, -tl)
    out[1, 0] = w.conjugate() * cpow_principal(s, -tl)
    out[1, 1] = (1.0 + (tl - 1.0) * w.conjugate() * z) / (tl - 1.0) * cpow_principal(s, -(tl + 1.0))
    out[1, 1] += mu1 ** 2 * cpow_principal(s, -(tl + 1.0))
    return out


def kernel_m2(z: complex, w: complex, lam: float, mu1: float, mu2: float) -> np.ndarray:
    """Kernel K(z, w) for m=2 with mu = (1, mu1, mu2)."""
    tl = 2.0 * lam
    wb = w.conjugate()
    s = 1.0 - wb * z

    def spow(e: float) -> complex:
        return cpow_principal(s, -e)

    first = np.array(
        [
            [spow(tl - 2.0), z * spow(tl - 1.0), z * z * spow(tl)],
            [
                wb * spow(tl - 1.0),
                (1.0 + (tl - 2.0) * wb * z) / (tl - 2.0) * spow(tl),
                z * (2.0 + (tl - 2.0) * wb * z) / (tl - 2.0) * spow(tl + 1.0),
            ],
            [
                wb * wb * spow(tl),
                wb * (2.0 + (tl - 2.0) * wb * z) / (tl - 2.0) * spow(tl + 1.0),
                (2.0 + 4.0 * (tl - 1.0) * wb * z + (tl - 1.0) * (tl - 2.0) * z * z * wb * wb)
                / ((tl - 1.0) * (tl - 2.0))
                * spow(tl + 2.0),
            ],
        ],
        dtype=complex,
    )
    second = np.zeros((3, 3), dtype=complex)
    second[1, 1] = spow(tl)
    second[1, 2] = 2.0 * z * spow(tl + 1.0)
    second[2, 1] = 2.0 * wb * spow(tl + 1.0)
    second[2, 2] = (4.0 / tl) * (1.0 + tl * wb * z) * spow(tl + 2.0)
    third = np.zeros((3, 3), dtype=complex)
    third[2, 2] = spow(tl + 2.0)
    return first + mu1 ** 2 * second + mu2 ** 2 * third
