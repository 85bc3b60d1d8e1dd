"""Two-point Hermite interpolation.

The unique polynomial of degree l + r + 1 matching derivatives 0..l of f
at the left endpoint and 0..r of g at the right endpoint can be written
as a two-point Taylor expansion whose terms are corrected by regularized
incomplete Beta steps:

    H(x) = sum_{j=0..l} f^(j)(a0)/j! (x-a0)^j B_{r, l-j}(1 - xi(x))
         + sum_{k=0..r} g^(k)(b0)/k! (x-b0)^k B_{l, r-k}(xi(x)),

with xi(x) = (x - a0)/(b0 - a0).  Internally the polynomial is expanded
in the xi variable (shifted and scaled onto [0, 1]) to control
conditioning, with raw derivative inputs rescaled by powers of the
interval width.

An independent oracle solves the confluent Vandermonde system for the
same coefficients; by uniqueness of the Hermite interpolant the two must
agree, which the test suite exploits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._poly import (
    poly_add,
    poly_derivative_table,
    poly_eval,
    poly_mul,
    poly_reflect01,
    poly_shift_pow,
)
from .functions import EndpointJet, Interval, SmoothFunction
from .jets import Jet
from .step_functions import beta_polynomial

__all__ = [
    "HermiteSpec",
    "hermite_xi_polynomial",
    "hermite_interpolant",
    "hermite_oracle",
    "polynomial_on",
]

_ORACLE_MAX_DEGREE = 12  # conditioning guard on l + r for the linear solve


@dataclass(frozen=True)
class HermiteSpec:
    """Prescribed endpoint derivative data for a two-point interpolant."""

    left: EndpointJet
    right: EndpointJet

    def __post_init__(self):
        if not self.left.point < self.right.point:
            raise ValueError("left endpoint must lie strictly left of the right one")

    @property
    def interval(self) -> Interval:
        return Interval(self.left.point, self.right.point)

    @property
    def left_order(self) -> int:
        return self.left.order

    @property
    def right_order(self) -> int:
        return self.right.order

    @property
    def degree(self) -> int:
        return self.left_order + self.right_order + 1


def hermite_xi_polynomial(spec: HermiteSpec) -> np.ndarray:
    """Ascending coefficients of H in the unit variable xi.

    Assembled term by term from the Beta-corrected two-point Taylor form;
    horizontal width w rescales the j-th left datum by w^j (and right
    data likewise) so everything lives on [0, 1].
    """
    l, r = spec.left_order, spec.right_order
    w = spec.interval.width
    total = np.zeros(spec.degree + 1)
    for j, deriv in enumerate(spec.left.derivatives):
        if deriv == 0.0:
            continue
        scale = deriv / math.factorial(j) * w**j
        term = poly_mul(poly_shift_pow(j, 0.0), poly_reflect01(beta_polynomial(r, l - j)))
        total = poly_add(total, scale * term)
    for k, deriv in enumerate(spec.right.derivatives):
        if deriv == 0.0:
            continue
        scale = deriv / math.factorial(k) * w**k
        term = poly_mul(poly_shift_pow(k, -1.0), beta_polynomial(l, r - k))
        total = poly_add(total, scale * term)
    out = np.zeros(spec.degree + 1)
    out[: len(total)] = total[: spec.degree + 1]
    return out


def polynomial_on(xi_coeffs, interval, label: str = "H",
                  flat_left: int = 0, flat_right: int = 0,
                  eta_coeffs=None) -> SmoothFunction:
    """Wrap xi-basis polynomial coefficients as a handle on an interval.

    Jets are exact polynomial differentiation in xi, chained through the
    affine map, so derivative entries beyond the degree vanish exactly.
    When a mirrored expansion in eta = 1 - xi is supplied, points right
    of the midpoint evaluate through it: high-order derivatives at the
    right endpoint then read off coefficients instead of cancelling large
    monomial terms.
    """
    interval = Interval.coerce(interval)
    coeffs = np.asarray(xi_coeffs, dtype=float)
    width = interval.width
    a0 = interval.a
    tables = poly_derivative_table(coeffs, len(coeffs))
    if eta_coeffs is not None:
        mirrored = np.asarray(eta_coeffs, dtype=float)
        mirrored_tables = poly_derivative_table(mirrored, len(mirrored))

    def value(x: float) -> float:
        xi = (x - a0) / width
        if eta_coeffs is not None and xi > 0.5:
            return poly_eval(mirrored, 1.0 - xi)
        return poly_eval(coeffs, xi)

    def jet(x: float, k: int) -> Jet:
        xi = (x - a0) / width
        out = []
        if eta_coeffs is not None and xi > 0.5:
            eta = 1.0 - xi
            for n in range(k + 1):
                table = mirrored_tables[min(n, len(mirrored_tables) - 1)]
                out.append(poly_eval(table, eta) / (math.factorial(n) * (-width) ** n))
        else:
            for n in range(k + 1):
                table = tables[min(n, len(tables) - 1)]
                out.append(poly_eval(table, xi) / (math.factorial(n) * width**n))
        return Jet(tuple(out), x)

    return SmoothFunction(interval, value, jet, flat_left, flat_right, label)


def _reflected_spec(spec: HermiteSpec) -> HermiteSpec:
    # mirror x -> a0 + b0 - x: endpoints swap and odd derivatives flip sign
    def flip(data: EndpointJet, new_point: float) -> EndpointJet:
        return EndpointJet(
            new_point,
            tuple(d * (-1.0) ** i for i, d in enumerate(data.derivatives)),
        )

    return HermiteSpec(
        left=flip(spec.right, -spec.right.point),
        right=flip(spec.left, -spec.left.point),
    )


def hermite_interpolant(spec: HermiteSpec) -> SmoothFunction:
    """The degree-(l+r+1) polynomial matching both endpoint jets."""
    coeffs = hermite_xi_polynomial(spec)
    mirrored = hermite_xi_polynomial(_reflected_spec(spec))
    return polynomial_on(
        coeffs,
        spec.interval,
        label=f"hermite({spec.left_order},{spec.right_order})",
        eta_coeffs=mirrored,
    )


def hermite_oracle(spec: HermiteSpec) -> np.ndarray:
    """Independent xi-basis coefficients from the confluent linear system.

    Derivative-matching conditions at xi = 0 and xi = 1 form a confluent
    Vandermonde system solved directly.  Guarded at l + r <= 12, beyond
    which the system grows too ill-conditioned to serve as an oracle.
    """
    l, r = spec.left_order, spec.right_order
    if l + r > _ORACLE_MAX_DEGREE:
        raise ValueError(
            f"oracle conditioning guard: l + r must stay <= {_ORACLE_MAX_DEGREE}"
        )
    n = spec.degree + 1
    w = spec.interval.width
    matrix = np.zeros((n, n))
    rhs = np.zeros(n)
    for j in range(l + 1):
        matrix[j, j] = math.factorial(j)
        rhs[j] = spec.left.derivatives[j] * w**j
    for k in range(r + 1):
        row = l + 1 + k
        for i in range(k, n):
            matrix[row, i] = math.perm(i, k)
        rhs[row] = spec.right.derivatives[k] * w**k
    return np.linalg.solve(matrix, rhs)
