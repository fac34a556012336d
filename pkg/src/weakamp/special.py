"""Associated Laguerre and Hermite polynomials via three-term recurrences.

Only the upward recurrences are used (no series, no gamma-function ratios), so
values stay exact to rounding for the moderate degrees the Fock-space code
needs.
"""

from __future__ import annotations

import numpy as np


def laguerre(n: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_n^k(x).

    Upward recurrence in n:
        m * L_m^k = (2m - 1 + k - x) * L_{m-1}^k - (m - 1 + k) * L_{m-2}^k
    """
    if n < 0 or k < 0:
        raise ValueError("laguerre requires n >= 0 and k >= 0")
    prev = 1.0
    if n == 0:
        return prev
    cur = 1.0 + k - x
    for m in range(2, n + 1):
        prev, cur = cur, ((2 * m - 1 + k - x) * cur - (m - 1 + k) * prev) / m
    return cur


def laguerre_sequence(nmax: int, k: int, x: float) -> np.ndarray:
    """All of L_0^k(x) .. L_nmax^k(x) in one upward sweep."""
    if nmax < 0 or k < 0:
        raise ValueError("laguerre_sequence requires nmax >= 0 and k >= 0")
    out = np.empty(nmax + 1)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + k - x
    for m in range(2, nmax + 1):
        out[m] = ((2 * m - 1 + k - x) * out[m - 1] - (m - 1 + k) * out[m - 2]) / m
    return out


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial H_n(x).

    Upward recurrence H_m = 2x H_{m-1} - 2(m-1) H_{m-2}.
    """
    if n < 0:
        raise ValueError("hermite requires n >= 0")
    prev = 1.0
    if n == 0:
        return prev
    cur = 2.0 * x
    for m in range(2, n + 1):
        prev, cur = cur, 2.0 * x * cur - 2.0 * (m - 1) * prev
    return cur


def hermite_scaled_sequence(nmax: int, x: float) -> np.ndarray:
    """Orthonormal-scaled Hermite values h_n(x) = H_n(x) / sqrt(2^n n!).

    The scaling keeps every entry O(e^{x^2/2}) so products of two sequences can
    be summed to hundreds of terms without overflowing, which plain H_n cannot
    do past n ~ 170.  Recurrence:
        h_m = sqrt(2/m) x h_{m-1} - sqrt((m-1)/m) h_{m-2}
    """
    if nmax < 0:
        raise ValueError("hermite_scaled_sequence requires nmax >= 0")
    out = np.empty(nmax + 1)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * x
    for m in range(2, nmax + 1):
        out[m] = np.sqrt(2.0 / m) * x * out[m - 1] - np.sqrt((m - 1) / m) * out[m - 2]
    return out
