"""Built-in function handles for the CLI and the test batteries."""

from __future__ import annotations

import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._poly import poly_derivative_table, poly_eval
from .functions import UNBOUNDED, Interval, SmoothFunction
from .jets import Jet, jet_cos, jet_exp, jet_ipow, jet_sin
from .numerics import finite_difference_jet, sampled_to_jet
from .step_functions import beta_step, expo_rational_step, fabius, rational_step, trig_step

__all__ = [
    "make_constant",
    "make_polynomial",
    "make_sin",
    "make_cos",
    "make_exp",
    "make_ripple",
    "make_staircase_demo",
    "from_samples",
    "make_step",
]


def make_constant(c: float, interval) -> SmoothFunction:
    interval = Interval.coerce(interval)
    c = float(c)
    return SmoothFunction(
        domain=interval,
        value_fn=lambda x: c,
        jet_fn=lambda x, k: Jet.constant(c, k, x),
        flat_left=UNBOUNDED,
        flat_right=UNBOUNDED,
        label=f"const({c})",
    )


def make_polynomial(coefficients, interval) -> SmoothFunction:
    """Polynomial from ascending monomial coefficients in x."""
    interval = Interval.coerce(interval)
    coeffs = np.asarray(coefficients, dtype=float)
    tables = poly_derivative_table(coeffs, len(coeffs))

    def value(x: float) -> float:
        return poly_eval(coeffs, x)

    def jet(x: float, k: int) -> Jet:
        out = []
        for n in range(k + 1):
            table = tables[min(n, len(tables) - 1)]
            out.append(poly_eval(table, x) / math.factorial(n))
        return Jet(tuple(out), x)

    return SmoothFunction(interval, value, jet, 0, 0, f"poly{list(coeffs)}")


def _trig(kind: str, frequency: float, amplitude: float, interval) -> SmoothFunction:
    interval = Interval.coerce(interval)
    w = float(frequency)
    amp = float(amplitude)
    base = math.sin if kind == "sin" else math.cos
    jet_base = jet_sin if kind == "sin" else jet_cos

    def value(x: float) -> float:
        return amp * base(w * x)

    def jet(x: float, k: int) -> Jet:
        return amp * jet_base(w * Jet.variable(x, k))

    return SmoothFunction(interval, value, jet, 0, 0, f"{amp}*{kind}({w}x)")


def make_sin(frequency: float = 1.0, interval=(0.0, 1.0), amplitude: float = 1.0) -> SmoothFunction:
    return _trig("sin", frequency, amplitude, interval)


def make_cos(frequency: float = 1.0, interval=(0.0, 1.0), amplitude: float = 1.0) -> SmoothFunction:
    return _trig("cos", frequency, amplitude, interval)


def make_exp(interval=(0.0, 1.0), rate: float = 1.0) -> SmoothFunction:
    interval = Interval.coerce(interval)
    r = float(rate)
    return SmoothFunction(
        domain=interval,
        value_fn=lambda x: math.exp(r * x),
        jet_fn=lambda x, k: jet_exp(r * Jet.variable(x, k)),
        flat_left=0,
        flat_right=0,
        label=f"exp({r}x)",
    )


def make_ripple(interval=(2.0, 4.0)) -> SmoothFunction:
    """Oscillatory demo function 2 + (5 - x) cos^2(3 pi (5 - x))."""
    interval = Interval.coerce(interval)

    def value(x: float) -> float:
        return 2.0 + (5.0 - x) * math.cos(3.0 * math.pi * (5.0 - x)) ** 2

    def jet(x: float, k: int) -> Jet:
        u = Jet.variable(x, k)
        w = 5.0 - u
        return 2.0 + w * jet_ipow(jet_cos(3.0 * math.pi * w), 2)

    return SmoothFunction(interval, value, jet, 0, 0, "ripple")


def make_staircase_demo() -> SmoothFunction:
    """Symmetric staircase x - sin(20 pi x)/(20 pi) on [0, 1], order 2."""
    w = 20.0 * math.pi

    def value(x: float) -> float:
        return x - math.sin(w * x) / w

    def jet(x: float, k: int) -> Jet:
        u = Jet.variable(x, k)
        return u - jet_sin(w * u) * (1.0 / w)

    return SmoothFunction(Interval(0.0, 1.0), value, jet, 2, 2, "staircase_demo")


def from_samples(values, interval, max_jet_order: int = 6) -> SmoothFunction:
    """Handle over uniformly gridded samples.

    Values interpolate with a monotone cubic; jets are finite-difference
    estimates from the grid, capped at the stencil capability.
    """
    interval = Interval.coerce(interval)
    v = np.asarray(values, dtype=float)
    grid = np.linspace(interval.a, interval.b, len(v))
    interp = PchipInterpolator(grid, v)
    dx = interval.width / (len(v) - 1)

    def value(x: float) -> float:
        return float(interp(x))

    def jet(x: float, k: int) -> Jet:
        if k > max_jet_order:
            raise ValueError(f"sampled data supports jets up to order {max_jet_order}")
        if abs(x - interval.a) < dx / 2:
            return sampled_to_jet(v, interval, "left", k).as_jet()
        if abs(x - interval.b) < dx / 2:
            return sampled_to_jet(v, interval, "right", k).as_jet()
        derivs = finite_difference_jet(value, x, k, scale=8.0, domain=interval)
        return Jet.from_derivatives(derivs, x)

    return SmoothFunction(interval, value, jet, 0, 0, f"samples[{len(v)}]")


_STEP_FAMILIES = ("beta", "rational", "expo", "fabius", "trig")


def make_step(family: str, orders=None, m: int | None = None,
              tolerance: float = 1e-10, grid_size: int = 2**14) -> SmoothFunction:
    """Step-family dispatch by name (used by the CLI and descriptors)."""
    if family == "beta":
        if orders is None:
            raise ValueError("beta needs orders")
        return beta_step(orders)
    if family == "rational":
        if orders is None:
            raise ValueError("rational needs orders")
        return rational_step(orders)
    if family == "expo":
        return expo_rational_step()
    if family == "fabius":
        return fabius(tolerance, grid_size)
    if family == "trig":
        if m is None:
            raise ValueError("trig needs m")
        return trig_step(m)
    raise ValueError(f"unknown step family {family!r}; expected one of {_STEP_FAMILIES}")
