"""Small dense-polynomial helpers on ascending coefficient arrays."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "poly_eval",
    "poly_derivative",
    "poly_mul",
    "poly_add",
    "poly_reflect01",
    "poly_shift_pow",
    "poly_derivative_table",
]


def poly_eval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    if len(c) <= 1:
        return np.zeros(1)
    return c[1:] * np.arange(1, len(c))


def poly_mul(a, b) -> np.ndarray:
    return np.convolve(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def poly_add(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return out


def poly_reflect01(coeffs) -> np.ndarray:
    """Coefficients of p(1 - x) given those of p(x)."""
    c = np.asarray(coeffs, dtype=float)
    n = len(c)
    out = np.zeros(n)
    for i, ci in enumerate(c):
        # (1-x)^i expanded
        for j in range(i + 1):
            out[j] += ci * math.comb(i, j) * (-1.0) ** j
    return out


def poly_shift_pow(k: int, shift: float) -> np.ndarray:
    """Coefficients of (x + shift)^k."""
    return np.array(
        [math.comb(k, j) * shift ** (k - j) for j in range(k + 1)], dtype=float
    )


def poly_derivative_table(coeffs, max_order: int) -> list[np.ndarray]:
    """[p, p', p'', ...] up to max_order (identically-zero tails included)."""
    table = [np.asarray(coeffs, dtype=float)]
    for _ in range(max_order):
        table.append(poly_derivative(table[-1]))
    return table
