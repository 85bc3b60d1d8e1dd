"""Smooth transitions assembled from blends or from Hermite data.

A transition from f to g over an inner interval [a0, b0] inside an outer
interval [a, b] equals f left of a0, g right of b0, and a core on
[a0, b0] that meets f with l matching derivatives at a0 and g with r
matching derivatives at b0.  Cores come from three constructors:

* the sum of a rightward blend of f and a leftward blend of g;
* a single leftward operator B, using I - B for the rightward part;
* the two-point Hermite interpolant of the endpoint jets directly.

Evaluation at exactly a0 or b0 dispatches to the core branch; seam
agreement makes the choice immaterial up to tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .functions import EndpointJet, Interval, SmoothFunction, StepOrders, restrict
from .hermite import HermiteSpec, hermite_interpolant
from .jets import Jet
from .numerics import finite_difference_jet
from .operators import BlendOperator, apply, complement
from .flat_ends import lincomb

__all__ = [
    "PiecewiseTransition",
    "SeamReport",
    "transition_from_blends",
    "transition_from_single",
    "transition_hermite",
    "seam_report",
]


@dataclass(frozen=True)
class PiecewiseTransition:
    """Three-branch transition with seam metadata."""

    outer: Interval
    inner: Interval
    left_branch: SmoothFunction
    core: SmoothFunction
    right_branch: SmoothFunction
    orders: StepOrders
    provenance: str = "unspecified"
    descriptor: Optional[dict] = field(default=None, repr=False)

    def __post_init__(self):
        if not (self.outer.a < self.inner.a and self.inner.b < self.outer.b):
            raise ValueError("inner interval must lie strictly inside the outer one")

    def _branch(self, x: float) -> SmoothFunction:
        if x < self.inner.a:
            return self.left_branch
        if x > self.inner.b:
            return self.right_branch
        return self.core

    def value(self, x: float) -> float:
        x = float(x)
        if not self.outer.contains(x):
            raise ValueError(f"{x} outside [{self.outer.a}, {self.outer.b}]")
        return self._branch(x).value(self.outer.clamp(x))

    def __call__(self, x: float) -> float:
        return self.value(x)

    def jet(self, x: float, order: int) -> Jet:
        x = float(x)
        if not self.outer.contains(x):
            raise ValueError(f"{x} outside [{self.outer.a}, {self.outer.b}]")
        return self._branch(x).jet(self.outer.clamp(x), order)

    def as_smooth_function(self, flat_left=0, flat_right=0) -> SmoothFunction:
        return SmoothFunction(
            domain=self.outer,
            value_fn=self.value,
            jet_fn=lambda x, k: self._branch(x).jet(x, k),
            flat_left=flat_left,
            flat_right=flat_right,
            label=f"transition[{self.provenance}]",
        )


def _check_branches(f: SmoothFunction, g: SmoothFunction, inner: Interval) -> Interval:
    tol_a = 1e-12 * max(1.0, abs(inner.a))
    tol_b = 1e-12 * max(1.0, abs(inner.b))
    if f.domain.a >= inner.a:
        raise ValueError("left branch must start strictly left of the inner interval")
    if g.domain.b <= inner.b:
        raise ValueError("right branch must end strictly right of the inner interval")
    if abs(f.domain.b - inner.b) > tol_b:
        raise ValueError("left branch must extend exactly to the inner right endpoint")
    if abs(g.domain.a - inner.a) > tol_a:
        raise ValueError("right branch must start exactly at the inner left endpoint")
    return Interval(f.domain.a, g.domain.b)


def transition_from_blends(BL: BlendOperator, BR: BlendOperator,
                           f: SmoothFunction, g: SmoothFunction) -> PiecewiseTransition:
    """Core = rightward blend of f plus leftward blend of g."""
    if BL.direction != "leftward" or BR.direction != "rightward":
        raise ValueError("expected a leftward and a rightward operator, in that order")
    if not BL.interval.close_to(BR.interval):
        raise ValueError("operators must share the inner interval")
    if BL.orders != BR.orders:
        raise ValueError("operators must share their orders")
    inner = BL.interval
    outer = _check_branches(f, g, inner)
    f0 = apply(BR, restrict(f, inner))
    g0 = apply(BL, restrict(g, inner))
    core = lincomb([(1.0, f0), (1.0, g0)])
    return PiecewiseTransition(
        outer=outer,
        inner=inner,
        left_branch=f,
        core=core,
        right_branch=g,
        orders=BL.orders,
        provenance=f"blends({BR.kind}+{BL.kind})",
    )


def transition_from_single(B: BlendOperator, f: SmoothFunction,
                           g: SmoothFunction) -> PiecewiseTransition:
    """Same contract with the rightward part taken as I - B."""
    if B.direction != "leftward":
        raise ValueError("expected a leftward operator")
    t = transition_from_blends(B, complement(B), f, g)
    return PiecewiseTransition(
        outer=t.outer,
        inner=t.inner,
        left_branch=t.left_branch,
        core=t.core,
        right_branch=t.right_branch,
        orders=t.orders,
        provenance=f"single({B.kind})",
    )


def transition_hermite(f: SmoothFunction, g: SmoothFunction, orders,
                       inner) -> PiecewiseTransition:
    """Core = two-point Hermite interpolant of the branch endpoint jets."""
    orders = StepOrders.coerce(orders)
    l, r = orders.require_finite()
    inner = Interval.coerce(inner)
    if not f.domain.contains(inner.a):
        raise ValueError("left branch cannot supply a jet at the inner left endpoint")
    if not g.domain.contains(inner.b):
        raise ValueError("right branch cannot supply a jet at the inner right endpoint")
    if f.domain.a >= inner.a or g.domain.b <= inner.b:
        raise ValueError("branches must extend strictly beyond the inner interval")
    spec = HermiteSpec(
        left=EndpointJet(inner.a, f.jet(inner.a, l).derivatives()),
        right=EndpointJet(inner.b, g.jet(inner.b, r).derivatives()),
    )
    core = hermite_interpolant(spec)
    return PiecewiseTransition(
        outer=Interval(f.domain.a, g.domain.b),
        inner=inner,
        left_branch=f,
        core=core,
        right_branch=g,
        orders=orders,
        provenance="hermite",
    )


@dataclass(frozen=True)
class SeamReport:
    """Per-seam derivative mismatches between adjacent branches.

    mismatches[k] is the absolute difference of the order-k derivative
    estimates taken from the two sides of the seam.  The "fd" method uses
    genuinely one-sided finite differences on each branch; the "jet"
    method compares the branches' exact derivative paths.
    """

    point: float
    method: str
    left_estimates: tuple
    right_estimates: tuple
    mismatches: tuple

    @property
    def max_mismatch(self) -> float:
        return max(self.mismatches)


def _one_side_estimates(branch: SmoothFunction, x: float, order: int,
                        method: str, fd_scale: float) -> tuple:
    if method == "jet":
        return branch.jet(x, order).derivatives()
    return finite_difference_jet(branch.value, x, order, fd_scale, branch.domain)


def seam_report(t: PiecewiseTransition, check_order: int, method: str = "fd",
                fd_scale: float = 1.0) -> dict[str, SeamReport]:
    """Derivative mismatch tables at both seams, orders 0..check_order."""
    if method not in ("fd", "jet"):
        raise ValueError("method must be 'fd' or 'jet'")
    reports = {}
    for name, x, outside in (
        ("left", t.inner.a, t.left_branch),
        ("right", t.inner.b, t.right_branch),
    ):
        a = _one_side_estimates(outside, x, check_order, method, fd_scale)
        b = _one_side_estimates(t.core, x, check_order, method, fd_scale)
        reports[name] = SeamReport(
            point=x,
            method=method,
            left_estimates=a if name == "left" else b,
            right_estimates=b if name == "left" else a,
            mismatches=tuple(abs(u - v) for u, v in zip(a, b)),
        )
    return reports
