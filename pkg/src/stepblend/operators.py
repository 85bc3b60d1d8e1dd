"""Leftward and rightward blend-to-zero operators.

A leftward operator of orders (l, r) sends g to a function whose value
and derivatives 0..l vanish at the left endpoint while derivatives 0..r
at the right endpoint are reproduced exactly; a rightward operator does
the mirror image.  Adding a rightward blend of f and a leftward blend of
g produces the core of a smooth transition from f to g.

Two constructions are provided plus the complement:

* hermite kind        -- the blended function is the two-point Hermite
  interpolant with all data at the flattened end set to zero (a linear
  operator, polynomial output);
* multiplicative kind -- pointwise multiplication by a carrier with flat
  ends whose endpoint values are 0 and 1 (order comes from the carrier's
  flatness);
* complement          -- I minus an operator reverses its direction.

Operators act on function handles (values plus jets), never on raw
samples; estimate jets from sampled data first when needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .flat_ends import lincomb, to_staircase
from .functions import (
    EndpointJet,
    Interval,
    SmoothFunction,
    StepOrders,
    UNBOUNDED,
    min_order,
    order_covers,
)
from .hermite import HermiteSpec, hermite_interpolant
from .jets import jet_mul, Jet
from .numerics import finite_difference_jet

__all__ = [
    "BlendOperator",
    "BlendReport",
    "hermite_blend",
    "multiplicative_blend",
    "step_carrier",
    "complement",
    "apply",
    "linearity_check",
    "verify_blend",
]

_ENDPOINT_TOL = 1e-9


@dataclass(frozen=True)
class BlendOperator:
    """Immutable descriptor of a blend-to-zero operator."""

    direction: str  # "leftward" zeroes at a, "rightward" zeroes at b
    orders: StepOrders
    interval: Interval
    kind: str  # "hermite" | "multiplicative" | "complement"
    carrier: Optional[SmoothFunction] = None
    inner: Optional["BlendOperator"] = None

    def __post_init__(self):
        if self.direction not in ("leftward", "rightward"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.kind not in ("hermite", "multiplicative", "complement"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == "hermite":
            self.orders.require_finite()

    @property
    def zero_end(self) -> float:
        return self.interval.a if self.direction == "leftward" else self.interval.b

    @property
    def preserved_end(self) -> float:
        return self.interval.b if self.direction == "leftward" else self.interval.a


def hermite_blend(direction: str, orders, interval) -> BlendOperator:
    """Blend operator built from the two-point Hermite interpolant."""
    return BlendOperator(
        direction=direction,
        orders=StepOrders.coerce(orders),
        interval=Interval.coerce(interval),
        kind="hermite",
    )


def step_carrier(sigma: SmoothFunction, interval, direction: str) -> SmoothFunction:
    """Carrier for a multiplicative blend from a unit step.

    Leftward carriers rise 0 -> 1 across the interval (sigma composed
    with the affine chart), rightward carriers fall 1 -> 0 (the
    complement of the same composition); both inherit sigma's flatness.
    """
    interval = Interval.coerce(interval)
    rising = to_staircase(sigma, interval, (0.0, 1.0))
    if direction == "leftward":
        return rising
    one = SmoothFunction(
        domain=interval,
        value_fn=lambda x: 1.0,
        jet_fn=lambda x, k: Jet.constant(1.0, k, x),
        flat_left=UNBOUNDED,
        flat_right=UNBOUNDED,
        label="1",
    )
    falling = lincomb([(1.0, one), (-1.0, rising)])
    return SmoothFunction(
        domain=interval,
        value_fn=falling.value_fn,
        jet_fn=falling.jet_fn,
        flat_left=sigma.flat_left,
        flat_right=sigma.flat_right,
        label=f"1-({rising.label})",
    )


def multiplicative_blend(carrier: SmoothFunction, orders=None) -> BlendOperator:
    """Blend operator that multiplies by a flat-ended carrier.

    The direction is inferred from the carrier's endpoint values (0 at
    the zeroed end, 1 at the preserved end).  Orders default to the
    carrier's declared flatness and may be lowered, never raised.
    """
    va = carrier.value(carrier.domain.a)
    vb = carrier.value(carrier.domain.b)
    if abs(va) < _ENDPOINT_TOL and abs(vb - 1.0) < _ENDPOINT_TOL:
        direction = "leftward"
    elif abs(va - 1.0) < _ENDPOINT_TOL and abs(vb) < _ENDPOINT_TOL:
        direction = "rightward"
    else:
        raise ValueError(
            f"carrier endpoint values ({va}, {vb}) are not a 0/1 pattern"
        )
    declared = StepOrders(carrier.flat_left, carrier.flat_right)
    if orders is not None:
        orders = StepOrders.coerce(orders)
        if declared.componentwise_min(orders) != orders:
            raise ValueError(
                f"requested orders {orders} exceed carrier flatness {declared}"
            )
        declared = orders
    return BlendOperator(
        direction=direction,
        orders=declared,
        interval=carrier.domain,
        kind="multiplicative",
        carrier=carrier,
    )


def complement(op: BlendOperator) -> BlendOperator:
    """I - B: reverses the direction, keeps the orders.

    The complement of a complement unwraps to the original operator, so
    the involution holds exactly.
    """
    if op.kind == "complement":
        return op.inner
    return BlendOperator(
        direction="rightward" if op.direction == "leftward" else "leftward",
        orders=op.orders,
        interval=op.interval,
        kind="complement",
        inner=op,
    )


def _zero_data(point: float, order: int) -> EndpointJet:
    return EndpointJet(point, (0.0,) * (order + 1))


def _result_orders(op: BlendOperator) -> tuple:
    # The blended function is flat (value and derivatives) at the zeroed
    # end up to that end's order; nothing is guaranteed at the other end.
    if op.direction == "leftward":
        return op.orders.left, 0
    return 0, op.orders.right


def apply(op: BlendOperator, f: SmoothFunction) -> SmoothFunction:
    """Blend f: zero it out at one end, reproduce it at the other."""
    if not f.domain.close_to(op.interval):
        raise ValueError(
            f"{f.label} lives on [{f.domain.a}, {f.domain.b}], "
            f"operator on [{op.interval.a}, {op.interval.b}]"
        )
    if op.kind == "complement":
        blended = apply(op.inner, f)
        result = lincomb([(1.0, f), (-1.0, blended)])
        fl, fr = _result_orders(op)
        return SmoothFunction(
            domain=op.interval,
            value_fn=result.value_fn,
            jet_fn=result.jet_fn,
            flat_left=fl,
            flat_right=fr,
            label=f"(I-B)({f.label})",
        )
    if op.kind == "hermite":
        l, r = op.orders.require_finite()
        a0, b0 = op.interval.a, op.interval.b
        if op.direction == "leftward":
            spec = HermiteSpec(
                left=_zero_data(a0, l),
                right=EndpointJet(b0, f.jet(b0, r).derivatives()),
            )
        else:
            spec = HermiteSpec(
                left=EndpointJet(a0, f.jet(a0, l).derivatives()),
                right=_zero_data(b0, r),
            )
        core = hermite_interpolant(spec)
        fl, fr = _result_orders(op)
        return SmoothFunction(
            domain=op.interval,
            value_fn=core.value_fn,
            jet_fn=core.jet_fn,
            flat_left=fl,
            flat_right=fr,
            label=f"B_{op.direction[0].upper()}({f.label})",
        )
    # multiplicative
    carrier = op.carrier

    def value(x: float) -> float:
        return carrier.value_fn(x) * f.value_fn(x)

    def jet(x: float, k: int):
        return jet_mul(carrier.jet_fn(x, k), f.jet_fn(x, k))

    fl, fr = _result_orders(op)
    return SmoothFunction(
        domain=op.interval,
        value_fn=value,
        jet_fn=jet,
        flat_left=fl,
        flat_right=fr,
        label=f"({carrier.label})*({f.label})",
    )


def linearity_check(op: BlendOperator, f: SmoothFunction, g: SmoothFunction,
                    alpha: float, beta: float, grid: int = 256) -> float:
    """Sup-norm defect of B(alpha f + beta g) - alpha B(f) - beta B(g)."""
    combo = apply(op, lincomb([(alpha, f), (beta, g)]))
    bf = apply(op, f)
    bg = apply(op, g)
    defect = 0.0
    for x in np.linspace(op.interval.a, op.interval.b, grid):
        x = float(x)
        defect = max(
            defect, abs(combo.value(x) - alpha * bf.value(x) - beta * bg.value(x))
        )
    return defect


# Larger one-sided steps at high derivative orders trade truncation
# headroom against the steep round-off amplification of 1/h^k.
_FD_ORDER_BOOST = {3: 2.0, 4: 4.0, 5: 4.0, 6: 4.0}


def _fd_by_order(fn, x: float, order: int, base_scale: float, domain) -> tuple:
    out = [float(fn(x))]
    for k in range(1, order + 1):
        scale = base_scale * _FD_ORDER_BOOST.get(k, 1.0)
        out.append(finite_difference_jet(fn, x, k, scale, domain)[k])
    return tuple(out)


@dataclass(frozen=True)
class BlendReport:
    """Endpoint behaviour of a blended function.

    flatten_defects[k] is |result^(k)| at the zeroed end, and
    preserve_defects[k] is |result^(k) - f^(k)| at the preserved end,
    both normalized by max(1, |f^(k)|) at that end.  The jet route is
    exact differentiation; the finite-difference route is an independent
    sampled estimate (one-sided at the endpoints).
    """

    direction: str
    check_order: int
    zero_end: float
    preserved_end: float
    result_jet_zero_end: tuple
    result_jet_preserved_end: tuple
    flatten_defects: tuple
    preserve_defects: tuple
    fd_flatten_defects: Optional[tuple] = None
    fd_preserve_defects: Optional[tuple] = None

    @property
    def max_flatten_defect(self) -> float:
        return max(self.flatten_defects)

    @property
    def max_preserve_defect(self) -> float:
        return max(self.preserve_defects)


def verify_blend(op: BlendOperator, f: SmoothFunction, check_order: int,
                 use_fd: bool = False, fd_scale: float = 1.0) -> BlendReport:
    """Report how well the blended function realizes the endpoint pattern.

    Failures are report content, never exceptions.  check_order should
    not exceed the operator's declared order at either end when finite.
    """
    for declared in (op.orders.left, op.orders.right):
        if not order_covers(declared, check_order):
            raise ValueError(
                f"check_order {check_order} exceeds declared orders {op.orders}"
            )
    result = apply(op, f)
    z, p = op.zero_end, op.preserved_end
    rz = result.jet(z, check_order).derivatives()
    rp = result.jet(p, check_order).derivatives()
    fz = f.jet(z, check_order).derivatives()
    fp = f.jet(p, check_order).derivatives()

    def scales(data):
        return [max(1.0, abs(d)) for d in data]

    flatten = tuple(abs(d) / s for d, s in zip(rz, scales(fz)))
    preserve = tuple(abs(d - e) / s for d, e, s in zip(rp, fp, scales(fp)))
    fd_flatten = fd_preserve = None
    if use_fd:
        rz_fd = _fd_by_order(result.value, z, check_order, fd_scale, op.interval)
        rp_fd = _fd_by_order(result.value, p, check_order, fd_scale, op.interval)
        fp_fd = _fd_by_order(f.value, p, check_order, fd_scale, op.interval)
        fd_flatten = tuple(abs(d) / s for d, s in zip(rz_fd, scales(fz)))
        fd_preserve = tuple(
            abs(d - e) / s for d, e, s in zip(rp_fd, fp_fd, scales(fp))
        )
    return BlendReport(
        direction=op.direction,
        check_order=check_order,
        zero_end=z,
        preserved_end=p,
        result_jet_zero_end=rz,
        result_jet_preserved_end=rp,
        flatten_defects=flatten,
        preserve_defects=preserve,
        fd_flatten_defects=fd_flatten,
        fd_preserve_defects=fd_preserve,
    )
