"""Algebra of functions with flat ends.

A function is flat of orders (l, r) when derivatives 1..l vanish at the
left endpoint and 1..r at the right.  These families are closed under
products and linear combinations, survive composition with an
endpoint-matching change of interval, and behave predictably under affine
transforms (a y-axis reflection swaps the two orders).

Declared flatness metadata is set at construction from those closure
rules and verified by tests; it is never inferred from floating-point
jets.  The product/combination rule (componentwise minimum of the input
orders) is conservative: the true order of a specific product may be
higher.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import (
    UNBOUNDED,
    Interval,
    Order,
    SmoothFunction,
    StepOrders,
    min_order,
)
from .jets import Jet, jet_compose, jet_mul

__all__ = [
    "SymmetryReport",
    "MonotonicityReport",
    "StepValidationReport",
    "ExtendedStep",
    "product",
    "lincomb",
    "change_of_interval",
    "affine_transform",
    "to_staircase",
    "extend_step_to_line",
    "symmetry_check",
    "monotonicity_check",
    "validate_symmetric_step",
]

_ENDPOINT_TOL = 1e-12


def _require_same_domain(f: SmoothFunction, g: SmoothFunction) -> Interval:
    if not f.domain.close_to(g.domain):
        raise ValueError(
            f"domain mismatch: {f.label} on [{f.domain.a}, {f.domain.b}] vs "
            f"{g.label} on [{g.domain.a}, {g.domain.b}]"
        )
    return f.domain


def product(h: SmoothFunction, f: SmoothFunction) -> SmoothFunction:
    """Pointwise product with jets by the Leibniz convolution.

    When both inputs are flat, the product is flat at the componentwise
    minimum of the declared orders.
    """
    domain = _require_same_domain(h, f)

    def value(x: float) -> float:
        return h.value_fn(x) * f.value_fn(x)

    def jet(x: float, k: int) -> Jet:
        return jet_mul(h.jet_fn(x, k), f.jet_fn(x, k))

    return SmoothFunction(
        domain=domain,
        value_fn=value,
        jet_fn=jet,
        flat_left=min_order(h.flat_left, f.flat_left),
        flat_right=min_order(h.flat_right, f.flat_right),
        label=f"({h.label})*({f.label})",
    )


def lincomb(terms) -> SmoothFunction:
    """Linear combination sum_i c_i f_i on a common domain."""
    terms = [(float(c), f) for c, f in terms]
    if not terms:
        raise ValueError("need at least one term")
    domain = terms[0][1].domain
    for _, f in terms[1:]:
        _require_same_domain(terms[0][1], f)

    def value(x: float) -> float:
        return math.fsum(c * f.value_fn(x) for c, f in terms)

    def jet(x: float, k: int) -> Jet:
        coeffs = [
            math.fsum(c * f.jet_fn(x, k).coeffs[i] for c, f in terms)
            for i in range(k + 1)
        ]
        return Jet(tuple(coeffs), x)

    flat_left: Order = UNBOUNDED
    flat_right: Order = UNBOUNDED
    for _, f in terms:
        flat_left = min_order(flat_left, f.flat_left)
        flat_right = min_order(flat_right, f.flat_right)
    label = " + ".join(f"{c}*{f.label}" for c, f in terms)
    return SmoothFunction(domain, value, jet, flat_left, flat_right, label)


def change_of_interval(h: SmoothFunction, f: SmoothFunction,
                       grid_size: int = 1024) -> SmoothFunction:
    """Composition h∘f where f maps its interval onto h's domain.

    Requires f to match endpoints (f(a) = c, f(b) = d up to 1e-12) and to
    stay inside [c, d], checked on a sample grid only; exact range
    computation is impossible for opaque handles.  The result inherits
    h's flatness orders: every term of the chain rule at an endpoint
    carries a vanishing derivative of h.
    """
    c, d = h.domain.a, h.domain.b
    a, b = f.domain.a, f.domain.b
    scale = max(1.0, abs(c), abs(d))
    if abs(f.value(a) - c) > _ENDPOINT_TOL * scale or abs(f.value(b) - d) > _ENDPOINT_TOL * scale:
        raise ValueError(
            f"{f.label} must map [{a}, {b}] endpoints onto [{c}, {d}]: "
            f"got f(a)={f.value(a)}, f(b)={f.value(b)}"
        )
    slack = 1e-9 * scale
    for x in np.linspace(a, b, grid_size):
        y = f.value(float(x))
        if y < c - slack or y > d + slack:
            raise ValueError(f"{f.label} escapes [{c}, {d}] at x={x} (value {y})")

    def value(x: float) -> float:
        return h.value_fn(h.domain.clamp(f.value_fn(x)))

    def jet(x: float, k: int) -> Jet:
        inner = f.jet_fn(x, k)
        clamped = h.domain.clamp(inner.coeffs[0])
        outer = h.jet_fn(clamped, k)
        if clamped != inner.coeffs[0]:
            inner = Jet((clamped,) + inner.coeffs[1:], inner.basepoint)
        return jet_compose(outer, inner)

    return SmoothFunction(
        domain=f.domain,
        value_fn=value,
        jet_fn=jet,
        flat_left=h.flat_left,
        flat_right=h.flat_right,
        label=f"({h.label})o({f.label})",
    )


def affine_transform(h: SmoothFunction, vertical_scale: float = 1.0,
                     vertical_shift: float = 0.0, horizontal_scale: float = 1.0,
                     horizontal_shift: float = 0.0, reflect_x: bool = False,
                     reflect_y: bool = False) -> SmoothFunction:
    """Affine image of the graph of h.

    Pipeline: reflect over the y-axis (argument sign), reflect over the
    x-axis (value sign), stretch horizontally by `horizontal_scale` > 0,
    shift horizontally, scale vertically, shift vertically.  Flatness
    orders are preserved, with left and right swapped by the y-axis
    reflection.
    """
    if horizontal_scale <= 0:
        raise ValueError("horizontal_scale must be positive")
    hsign = -1.0 if reflect_y else 1.0
    vsign = -1.0 if reflect_x else 1.0
    vfac = vsign * vertical_scale

    lo = horizontal_scale * (hsign * (h.domain.b if reflect_y else h.domain.a)) + horizontal_shift
    hi = horizontal_scale * (hsign * (h.domain.a if reflect_y else h.domain.b)) + horizontal_shift
    domain = Interval(lo, hi)
    darg = hsign / horizontal_scale

    def pullback(x: float) -> float:
        return h.domain.clamp(hsign * (x - horizontal_shift) / horizontal_scale)

    def value(x: float) -> float:
        return vfac * h.value_fn(pullback(x)) + vertical_shift

    def jet(x: float, k: int) -> Jet:
        base = h.jet_fn(pullback(x), k)
        coeffs = [vfac * c * darg**i for i, c in enumerate(base.coeffs)]
        coeffs[0] += vertical_shift
        return Jet(tuple(coeffs), x)

    orders = StepOrders(h.flat_left, h.flat_right)
    if reflect_y:
        orders = orders.swapped()
    return SmoothFunction(
        domain, value, jet, orders.left, orders.right, f"affine({h.label})"
    )


def to_staircase(sigma: SmoothFunction, source, target) -> SmoothFunction:
    """Stretch a unit step onto arbitrary source and target intervals.

    s(x) = c + (d - c) * sigma((x - a)/(b - a)) maps [a, b] increasingly
    onto [c, d] with sigma's flatness orders.
    """
    source = Interval.coerce(source)
    target = Interval.coerce(target)
    if abs(sigma.value(sigma.domain.a)) > _ENDPOINT_TOL or abs(sigma.value(sigma.domain.b) - 1.0) > _ENDPOINT_TOL:
        raise ValueError(f"{sigma.label} is not a unit step: endpoints must map to 0 and 1")
    a, width = source.a, source.width
    c, rise = target.a, target.width

    def value(x: float) -> float:
        return c + rise * sigma.value_fn(sigma.domain.clamp((x - a) / width))

    def jet(x: float, k: int) -> Jet:
        base = sigma.jet_fn(sigma.domain.clamp((x - a) / width), k)
        coeffs = [rise * ci / width**i for i, ci in enumerate(base.coeffs)]
        coeffs[0] += c
        return Jet(tuple(coeffs), x)

    return SmoothFunction(
        domain=source,
        value_fn=value,
        jet_fn=jet,
        flat_left=sigma.flat_left,
        flat_right=sigma.flat_right,
        label=f"staircase({sigma.label}, {source.a}..{source.b} -> {target.a}..{target.b})",
    )


@dataclass(frozen=True)
class ExtendedStep:
    """A step extended to the whole real line by its endpoint constants.

    For a step of finite order r the extension is r-times continuously
    differentiable across the former endpoints; flatness of the step is
    exactly what makes the constant tails match.
    """

    step: SmoothFunction

    def _branch(self, x: float) -> tuple[str, float]:
        if x < self.step.domain.a:
            return "left", self.step.domain.a
        if x > self.step.domain.b:
            return "right", self.step.domain.b
        return "inside", x

    def value(self, x: float) -> float:
        _, at = self._branch(float(x))
        return self.step.value(at)

    def __call__(self, x: float) -> float:
        return self.value(x)

    def jet(self, x: float, order: int) -> Jet:
        branch, at = self._branch(float(x))
        if branch == "inside":
            return self.step.jet(at, order)
        return Jet.constant(self.step.value(at), order, float(x))


def extend_step_to_line(sigma: SmoothFunction) -> ExtendedStep:
    """Piecewise extension: constant left of the domain, constant right of it."""
    return ExtendedStep(sigma)


@dataclass(frozen=True)
class MonotonicityReport:
    """Grid-sampled monotonicity, honest about double-precision limits.

    Steps of high flatness order saturate to 0 or 1 near the endpoints,
    where the true increments fall below evaluation noise; there only the
    absence of a material decrease can be asserted.  Strictness is
    checked for pairs whose values both lie inside `strict_band`.
    """

    max_decrease: float
    strict_ok: bool
    grid_size: int
    strict_band: tuple

    def increasing(self, slack: float = 1e-13) -> bool:
        return self.max_decrease <= slack and self.strict_ok


def monotonicity_check(u: SmoothFunction, grid_size: int = 10_001,
                       strict_band: tuple = (1e-12, 1.0 - 1e-12)) -> MonotonicityReport:
    """Check that grid values never materially decrease and strictly
    increase wherever the increments are resolvable."""
    vals = [u.value(float(x)) for x in np.linspace(u.domain.a, u.domain.b, grid_size)]
    lo, hi = strict_band
    max_decrease = 0.0
    strict_ok = True
    for a, b in zip(vals, vals[1:]):
        max_decrease = max(max_decrease, a - b)
        if lo < a < hi and lo < b < hi and not b > a:
            strict_ok = False
    return MonotonicityReport(
        max_decrease=max_decrease,
        strict_ok=strict_ok,
        grid_size=grid_size,
        strict_band=strict_band,
    )


@dataclass(frozen=True)
class SymmetryReport:
    """Sampled defect of the point-symmetry identity
    u(x) + u(a+b-x) = u(a) + u(b)."""

    max_defect: float
    grid_size: int

    def symmetric(self, tol: float = 1e-10) -> bool:
        return self.max_defect <= tol


def symmetry_check(u: SmoothFunction, grid_size: int = 1001) -> SymmetryReport:
    """Max defect of the midpoint-symmetry identity over a uniform grid."""
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    a, b = u.domain.a, u.domain.b
    edge_sum = u.value(a) + u.value(b)
    defect = 0.0
    for x in np.linspace(a, b, grid_size):
        x = float(x)
        defect = max(defect, abs(u.value(x) + u.value(a + b - x) - edge_sum))
    return SymmetryReport(max_defect=defect, grid_size=grid_size)


@dataclass(frozen=True)
class StepValidationReport:
    """Outcome of the symmetric-step sufficient conditions on [0, 1].

    A symmetric function that is flat (value and derivatives) at 0 and
    strictly increasing inside must also be flat at 1 and map onto
    [0, 1]; the report confirms each hypothesis numerically and records
    that the implied right-end flatness indeed holds.
    """

    check_order: int
    symmetry: SymmetryReport
    left_flat_defect: float
    right_flat_defect: float
    min_interior_slope: float
    symmetry_tol: float
    flat_tol: float

    @property
    def symmetric(self) -> bool:
        return self.symmetry.max_defect <= self.symmetry_tol

    @property
    def left_flat(self) -> bool:
        return self.left_flat_defect <= self.flat_tol

    @property
    def right_flat(self) -> bool:
        return self.right_flat_defect <= self.flat_tol

    @property
    def increasing(self) -> bool:
        return self.min_interior_slope > 0.0

    @property
    def passed(self) -> bool:
        return self.symmetric and self.left_flat and self.right_flat and self.increasing


def validate_symmetric_step(sigma: SmoothFunction, check_order: int,
                            grid_size: int = 513, symmetry_tol: float = 1e-10,
                            flat_tol: float = 1e-8) -> StepValidationReport:
    """Check the sufficient conditions for a symmetric smooth step.

    Hypotheses checked: the symmetry identity on a grid, vanishing value
    and derivatives 1..check_order at 0 (via jets), and positive first
    derivative at interior grid points.  The right-endpoint flatness that
    follows from symmetry is verified as well.  A failing report is a
    valid result, not an error.
    """
    sym = symmetry_check(sigma, grid_size)
    left = sigma.jet(sigma.domain.a, check_order).derivatives()
    right = sigma.jet(sigma.domain.b, check_order).derivatives()
    left_defect = max(abs(d) for d in left[: check_order + 1])
    right_defect = max([abs(d) for d in right[1 : check_order + 1]], default=0.0)
    slope = math.inf
    for x in np.linspace(sigma.domain.a, sigma.domain.b, grid_size)[1:-1]:
        slope = min(slope, sigma.jet(float(x), 1).derivatives()[1])
    return StepValidationReport(
        check_order=check_order,
        symmetry=sym,
        left_flat_defect=left_defect,
        right_flat_defect=right_defect,
        min_interior_slope=slope,
        symmetry_tol=symmetry_tol,
        flat_tol=flat_tol,
    )
