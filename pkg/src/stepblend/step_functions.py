"""The five smooth step / blending families.

Each constructor returns a :class:`SmoothFunction` on [0, 1] mapping 0 to
0 and 1 to 1, strictly increasing, with declared flatness orders:

* ``beta_step``      -- the regularized incomplete Beta function, a
  polynomial of degree l + r + 1, flat of orders (l, r);
* ``rational_step``  -- x^(l+1) / (x^(l+1) + (1-x)^(r+1)), flat (l, r);
* ``expo_rational_step`` -- the logistic of 1/x - 1/(1-x), flat to every
  order but not analytic at the endpoints;
* ``fabius``         -- the self-similar Fabius function, computed by
  fixed-point iteration of its defining integral equation;
* ``trig_step``      -- the normalized integral of sin^(2m+1)(pi t),
  expressed as a finite cosine series with exact rational coefficients,
  flat of order 2m + 1 at both ends.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._poly import poly_derivative_table, poly_eval
from .functions import UNBOUNDED, Interval, SmoothFunction, StepOrders
from .jets import Jet, jet_div, jet_exp, jet_ipow
from .numerics import binomial_alternating_sum

__all__ = [
    "UNIT_INTERVAL",
    "TrigCoefficients",
    "beta_step",
    "beta_polynomial",
    "rational_step",
    "expo_rational_step",
    "fabius",
    "fabius_table",
    "trig_coefficients",
    "trig_step",
    "ode_residual",
    "ode_forcing_constant",
]

UNIT_INTERVAL = Interval(0.0, 1.0)

_LOG_MAX = math.log(sys.float_info.max)  # ~709.78


def _unit_step(value_fn, jet_fn, flat_left, flat_right, label) -> SmoothFunction:
    return SmoothFunction(
        domain=UNIT_INTERVAL,
        value_fn=value_fn,
        jet_fn=jet_fn,
        flat_left=flat_left,
        flat_right=flat_right,
        label=label,
    )


# ---------------------------------------------------------------------------
# Regularized incomplete Beta function


def _beta_integrand_coefficients(l: int, r: int) -> list[int]:
    """Exact ascending coefficients of the normalized integrand.

    The derivative of the Beta step is t^l (1-t)^r / B(l+1, r+1), a
    polynomial with integer coefficients once multiplied through by
    1/B(l+1, r+1) = (l+r+1) C(l+r, r).
    """
    norm = (l + r + 1) * math.comb(l + r, r)
    coeffs = [0] * (l + r + 1)
    for i in range(r + 1):
        coeffs[l + i] = norm * (-1) ** i * math.comb(r, i)
    return coeffs


def beta_polynomial(l: int, r: int) -> np.ndarray:
    """Ascending monomial coefficients of the degree-(l+r+1) Beta step."""
    w = _beta_integrand_coefficients(l, r)
    coeffs = [Fraction(0)] + [Fraction(c, n + 1) for n, c in enumerate(w)]
    return np.array([float(c) for c in coeffs])


def beta_step(orders) -> SmoothFunction:
    """Polynomial step: the regularized incomplete Beta function.

    Evaluated through the closed-form sum
    B(x) = x^(l+1) * sum_{i=0..r} C(l+i, i) (1-x)^i with compensated
    summation; jets come from exact differentiation of the integer-
    coefficient integrand polynomial.
    """
    l, r = StepOrders.coerce(orders).require_finite()
    binoms = [math.comb(l + i, i) for i in range(r + 1)]
    deriv_tables = poly_derivative_table(
        np.array(_beta_integrand_coefficients(l, r), dtype=float), l + r + 1
    )

    def value(x: float) -> float:
        return x ** (l + 1) * math.fsum(c * (1.0 - x) ** i for i, c in enumerate(binoms))

    def jet(x: float, k: int) -> Jet:
        coeffs = [value(x)]
        for j in range(1, k + 1):
            # j-th derivative of the step = (j-1)-th derivative of the integrand
            table = deriv_tables[min(j - 1, len(deriv_tables) - 1)]
            coeffs.append(poly_eval(table, x) / math.factorial(j))
        return Jet(tuple(coeffs), x)

    return _unit_step(value, jet, l, r, f"beta_step({l},{r})")


# ---------------------------------------------------------------------------
# Rational B-function


def rational_step(orders) -> SmoothFunction:
    """Rational step x^(l+1) / (x^(l+1) + (1-x)^(r+1)).

    The denominator is positive on all of [0, 1], so values and jets are
    regular everywhere; jets use power and quotient jet arithmetic.
    """
    l, r = StepOrders.coerce(orders).require_finite()

    def value(x: float) -> float:
        p = x ** (l + 1)
        return p / (p + (1.0 - x) ** (r + 1))

    def jet(x: float, k: int) -> Jet:
        if k == 0:
            return Jet((value(x),), x)
        u = Jet.variable(x, k)
        num = jet_ipow(u, l + 1)
        den = num + jet_ipow(1.0 - u, r + 1)
        return jet_div(num, den)

    return _unit_step(value, jet, l, r, f"rational_step({l},{r})")


# ---------------------------------------------------------------------------
# Logistic expo-rational step


def expo_rational_step() -> SmoothFunction:
    """Logistic expo-rational step 1 / (1 + exp(1/x - 1/(1-x))).

    Flat to every order at both endpoints (but not analytic there).
    Endpoint jets are identically flat by construction; interior jets use
    jet arithmetic on the exponent.  When the exponent magnitude exceeds
    what the floating-point range can represent (including the headroom
    its derivative factors need), the value saturates to exactly 0 or 1
    with a flat jet: the true values there are far below resolution.
    """

    def exponent(x: float) -> float:
        return 1.0 / x - 1.0 / (1.0 - x)

    def value(x: float) -> float:
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        z = exponent(x)
        if z >= _LOG_MAX:
            return 0.0
        if z <= -_LOG_MAX:
            return 1.0
        return 1.0 / (1.0 + math.exp(z))

    def jet(x: float, k: int) -> Jet:
        if 0.0 < x < 1.0:
            z0 = exponent(x)
            # Derivative factors grow like x^(-2k); keep exp(z) clear of
            # overflow for every coefficient of the requested jet.
            limit = _LOG_MAX - 30.0 * k
            if abs(z0) < limit:
                u = Jet.variable(x, k)
                z = jet_div(Jet.constant(1.0, k, x), u) - jet_div(
                    Jet.constant(1.0, k, x), 1.0 - u
                )
                return jet_div(Jet.constant(1.0, k, x), 1.0 + jet_exp(z))
            flat = 0.0 if z0 > 0 else 1.0
        else:
            flat = 0.0 if x <= 0.0 else 1.0
        return Jet.constant(flat, k, x)

    return _unit_step(value, jet, UNBOUNDED, UNBOUNDED, "expo_rational_step")


# ---------------------------------------------------------------------------
# Fabius function


def fabius_table(tolerance: float = 1e-10, grid_size: int = 2**14,
                 max_iterations: int = 500) -> tuple[np.ndarray, np.ndarray, int]:
    """Fixed-point iteration of the Fabius integral equation.

    On the dyadic grid x_i = i/N the defining branches
    T(x) = integral of T over [0, 2x]          for x <= 1/2,
    T(x) = integral of T over [2x-1, 1] + 2x-1 for x >  1/2,
    map grid values to grid values exactly (2*x_i is again a grid point),
    so one sweep is a cumulative trapezoid followed by an index shuffle.
    Iteration starts from the identity and stops when the sup-norm change
    drops below `tolerance`.

    Returns (grid, values, iterations).
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = int(grid_size)
    if n < 2 or n & (n - 1):
        raise ValueError("grid_size must be a power of two >= 2")
    x = np.arange(n + 1) / n
    v = x.copy()
    half = n // 2
    idx = np.arange(n + 1)
    for iteration in range(1, max_iterations + 1):
        seg = (v[:-1] + v[1:]) / (2 * n)
        cum = np.concatenate(([0.0], np.cumsum(seg)))
        new = np.empty_like(v)
        new[: half + 1] = cum[2 * idx[: half + 1]]
        new[half + 1 :] = cum[n] - cum[2 * idx[half + 1 :] - n] + 2 * idx[half + 1 :] / n - 1.0
        delta = float(np.max(np.abs(new - v)))
        v = new
        if delta < tolerance:
            return x, v, iteration
    raise RuntimeError(
        f"Fabius iteration did not reach tolerance {tolerance} within "
        f"{max_iterations} sweeps; the tolerance is too tight for a "
        f"{n}-interval grid"
    )


def fabius(tolerance: float = 1e-10, grid_size: int = 2**14) -> SmoothFunction:
    """The Fabius function as a smooth step of arbitrary order.

    Values interpolate the converged table with a monotone cubic
    (PCHIP).  Derivatives use the self-similarity the integral equation
    induces:  T'(x) = 2 T(2x) on [0, 1/2] and T'(x) = 2 - 2 T(2x - 1) on
    (1/2, 1], applied recursively for higher orders.
    """
    grid, table, _ = fabius_table(tolerance, grid_size)
    interp = PchipInterpolator(grid, table)

    def value(x: float) -> float:
        return float(interp(x))

    def raw_derivative(x: float, n: int) -> float:
        if n == 0:
            return value(x)
        if x <= 0.5:
            inner = raw_derivative(2.0 * x, n - 1)
            return 2.0**n * inner if n > 1 else 2.0 * inner
        inner = raw_derivative(2.0 * x - 1.0, n - 1)
        return -(2.0**n) * inner if n > 1 else 2.0 - 2.0 * inner

    def jet(x: float, k: int) -> Jet:
        return Jet.from_derivatives([raw_derivative(x, n) for n in range(k + 1)], x)

    return _unit_step(value, jet, UNBOUNDED, UNBOUNDED, "fabius")


# ---------------------------------------------------------------------------
# Trigonometric steps


@dataclass(frozen=True)
class TrigCoefficients:
    """Exact cosine-series data for the trigonometric step of index m.

    terms[j] = (-1)^(m-j) C(2m+1, m-j) / (2j+1) weights cos((2j+1) pi x);
    total is their sum (the normalization of the series).
    """

    m: int
    terms: tuple[Fraction, ...]
    total: Fraction

    def cosine_weights(self) -> tuple[Fraction, ...]:
        """Weights alpha_j with T(x) = 1/2 + sum alpha_j cos((2j+1) pi x)."""
        return tuple(-t / (2 * self.total) for t in self.terms)


def trig_coefficients(m: int) -> TrigCoefficients:
    """Exact rational coefficients of the cosine expansion.

    The alternating binomial sums that make the expansion flat at the
    endpoints are re-checked exactly before returning; a failure would be
    an implementation bug, not a numerical artifact.  Exercised up to
    m = 30; arbitrary-precision integers carry it much further.
    """
    if m < 0:
        raise ValueError("m must be a non-negative integer")
    terms = tuple(
        Fraction((-1) ** (m - j) * math.comb(2 * m + 1, m - j), 2 * j + 1)
        for j in range(m + 1)
    )
    for k in range(1, m + 1):
        if binomial_alternating_sum(m, k) != 0:
            raise RuntimeError(f"coefficient identity failed at m={m}, k={k}")
    return TrigCoefficients(m=m, terms=terms, total=sum(terms))


def _sinpi(u: float) -> float:
    """sin(pi*u), exact at integers (folds the argument to [-1/2, 1/2])."""
    u = math.fmod(u, 2.0)
    if u < 0.0:
        u += 2.0
    if u < 0.5:
        return math.sin(math.pi * u)
    if u < 1.5:
        return math.sin(math.pi * (1.0 - u))
    return math.sin(math.pi * (u - 2.0))


def _cospi(u: float) -> float:
    """cos(pi*u), exact at half-integers."""
    u = math.fmod(u, 2.0)
    if u < 0.0:
        u += 2.0
    if u <= 1.0:
        return math.sin(math.pi * (0.5 - u))
    return math.sin(math.pi * (u - 1.5))


_QUARTER_CYCLE = ((1.0, _cospi), (-1.0, _sinpi), (-1.0, _cospi), (1.0, _sinpi))


def trig_step(m: int) -> SmoothFunction:
    """Trigonometric step: normalized integral of sin^(2m+1)(pi t).

    Evaluated through its finite cosine expansion; derivatives of every
    order are term-wise exact (d^n cos(w x) = w^n cos(w x + n pi/2)).
    The pi-scaled trig helpers keep endpoint and midpoint phases exact,
    which the flatness pattern at x = 1 relies on.  Flat of order 2m+1
    at both endpoints.
    """
    coeffs = trig_coefficients(m)
    weights = [float(a) for a in coeffs.cosine_weights()]
    multiples = list(range(1, 2 * m + 2, 2))

    def value(x: float) -> float:
        return 0.5 + math.fsum(w * _cospi(q * x) for w, q in zip(weights, multiples))

    def raw_derivative(x: float, n: int) -> float:
        if n == 0:
            return value(x)
        sign, trig = _QUARTER_CYCLE[n % 4]
        return math.fsum(
            sign * w * (q * math.pi) ** n * trig(q * x)
            for w, q in zip(weights, multiples)
        )

    def jet(x: float, k: int) -> Jet:
        return Jet.from_derivatives([raw_derivative(x, n) for n in range(k + 1)], x)

    return _unit_step(value, jet, 2 * m + 1, 2 * m + 1, f"trig_step({m})")


def ode_forcing_constant(m: int) -> float:
    """(1 * 3 * ... * (2m+1) * pi^(m+1))^2 / 2."""
    odd_product = math.prod(range(1, 2 * m + 2, 2))
    return (odd_product * math.pi ** (m + 1)) ** 2 / 2.0


def ode_residual(m: int, x_samples) -> float:
    """Max residual of the factored oscillator equation the step satisfies.

    Applies the product of the operators D^2 + ((2j+1) pi)^2, j = 0..m, to
    the step's order-(2m+2) jets and compares with the constant forcing
    term; the trigonometric step is that problem's unique solution with
    fully flat data at 0.
    """
    step = trig_step(m)
    forcing = ode_forcing_constant(m)
    worst = 0.0
    for x in x_samples:
        derivs = list(step.jet(float(x), 2 * m + 2).derivatives())
        for j in range(m + 1):
            omega2 = ((2 * j + 1) * math.pi) ** 2
            derivs = [derivs[n + 2] + omega2 * derivs[n] for n in range(len(derivs) - 2)]
        worst = max(worst, abs(derivs[0] - forcing))
    return worst
