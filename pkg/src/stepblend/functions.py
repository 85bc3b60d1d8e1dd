"""Core handle types: intervals, flatness orders, differentiable functions.

A :class:`SmoothFunction` is an opaque handle over a closed interval that
can produce values and jets (derivatives of any requested order) and
carries declared flatness orders at its two endpoints.  Flatness of order
n at an endpoint means derivatives 1..n vanish there.  Orders are either
non-negative integers or the distinct :data:`UNBOUNDED` marker; an integer
sentinel is never used for "flat to every order".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .jets import Jet

__all__ = [
    "UNBOUNDED",
    "Order",
    "Interval",
    "StepOrders",
    "EndpointJet",
    "SmoothFunction",
    "min_order",
    "order_covers",
    "restrict",
]


class _UnboundedOrder:
    """Marker for arbitrary-order flatness (every finite order holds)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _UnboundedOrder()

Order = Union[int, _UnboundedOrder]


def _check_order(value: Order) -> Order:
    if value is UNBOUNDED:
        return value
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return value
    raise ValueError(f"order must be a non-negative integer or UNBOUNDED, got {value!r}")


def min_order(a: Order, b: Order) -> Order:
    if a is UNBOUNDED:
        return b
    if b is UNBOUNDED:
        return a
    return min(a, b)


def order_covers(declared: Order, requested: int) -> bool:
    """True when a declared flatness order implies flatness to `requested`."""
    return declared is UNBOUNDED or declared >= requested


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @classmethod
    def coerce(cls, value) -> "Interval":
        if isinstance(value, Interval):
            return value
        a, b = value
        return cls(a, b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def _slack(self) -> float:
        return 1e-12 * max(1.0, abs(self.a), abs(self.b))

    def contains(self, x: float) -> bool:
        s = self._slack()
        return self.a - s <= x <= self.b + s

    def clamp(self, x: float) -> float:
        return min(max(x, self.a), self.b)

    def close_to(self, other: "Interval", tol: float = 1e-12) -> bool:
        s = tol * max(1.0, abs(self.a), abs(self.b))
        return abs(self.a - other.a) <= s and abs(self.b - other.b) <= s


@dataclass(frozen=True)
class StepOrders:
    """Left/right flatness order pair (l, r)."""

    left: Order
    right: Order

    def __post_init__(self):
        _check_order(self.left)
        _check_order(self.right)

    @classmethod
    def coerce(cls, value) -> "StepOrders":
        if isinstance(value, StepOrders):
            return value
        left, right = value
        return cls(left, right)

    @property
    def both_finite(self) -> bool:
        return self.left is not UNBOUNDED and self.right is not UNBOUNDED

    def require_finite(self) -> tuple[int, int]:
        if not self.both_finite:
            raise ValueError(f"finite orders required, got {self}")
        return self.left, self.right

    def swapped(self) -> "StepOrders":
        return StepOrders(self.right, self.left)

    def componentwise_min(self, other: "StepOrders") -> "StepOrders":
        return StepOrders(
            min_order(self.left, other.left), min_order(self.right, other.right)
        )


@dataclass(frozen=True)
class EndpointJet:
    """Raw derivative data f, f', ..., f^(n) prescribed at a single point."""

    point: float
    derivatives: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", float(self.point))
        object.__setattr__(
            self, "derivatives", tuple(float(d) for d in self.derivatives)
        )
        if not self.derivatives:
            raise ValueError("endpoint data needs at least the function value")

    @property
    def order(self) -> int:
        return len(self.derivatives) - 1

    def as_jet(self) -> Jet:
        return Jet.from_derivatives(self.derivatives, self.point)


@dataclass(frozen=True)
class SmoothFunction:
    """Differentiable-function handle on a closed interval.

    value_fn and jet_fn must agree at order zero; jets must be available
    at any requested order unless the underlying data is sampled (those
    handles raise for orders beyond their stencil capability).
    """

    domain: Interval
    value_fn: Callable[[float], float] = field(repr=False)
    jet_fn: Callable[[float, int], Jet] = field(repr=False)
    flat_left: Order = 0
    flat_right: Order = 0
    label: str = "f"

    def __post_init__(self):
        _check_order(self.flat_left)
        _check_order(self.flat_right)

    def _locate(self, x: float) -> float:
        if not self.domain.contains(x):
            raise ValueError(f"{x} outside domain [{self.domain.a}, {self.domain.b}] of {self.label}")
        return self.domain.clamp(x)

    def value(self, x: float) -> float:
        return self.value_fn(self._locate(x))

    def __call__(self, x: float) -> float:
        return self.value(x)

    def jet(self, x: float, order: int) -> Jet:
        if order < 0:
            raise ValueError("jet order must be non-negative")
        return self.jet_fn(self._locate(x), order)

    def derivative(self, x: float, order: int) -> float:
        """Raw derivative f^(order)(x)."""
        return self.jet(x, order).derivatives()[order]

    @property
    def orders(self) -> StepOrders:
        return StepOrders(self.flat_left, self.flat_right)

    def __repr__(self):
        return (
            f"SmoothFunction({self.label!r} on [{self.domain.a}, {self.domain.b}], "
            f"flat=({self.flat_left!r}, {self.flat_right!r}))"
        )


def restrict(f: SmoothFunction, sub: Interval, label: str | None = None) -> SmoothFunction:
    """Restriction to a subinterval.

    Flatness declarations are dropped: the new endpoints are generally
    interior points of the original domain.
    """
    sub = Interval.coerce(sub)
    if not (f.domain.contains(sub.a) and f.domain.contains(sub.b)):
        raise ValueError(f"{sub} is not contained in the domain of {f.label}")
    return SmoothFunction(
        domain=sub,
        value_fn=f.value_fn,
        jet_fn=f.jet_fn,
        flat_left=0,
        flat_right=0,
        label=label or f"{f.label}|[{sub.a},{sub.b}]",
    )
