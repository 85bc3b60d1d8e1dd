"""Truncated Taylor-series (jet) arithmetic.

A jet of order k at a basepoint x0 is the tuple of normalized Taylor
coefficients c_i = f^(i)(x0) / i!, i = 0..k.  Storing divided-by-factorial
coefficients keeps high-order arithmetic well scaled; raw derivatives are
recovered with :meth:`Jet.derivatives`.

Products use the Cauchy convolution (the general Leibniz rule in
normalized form), quotients the standard recurrence, and composition a
truncated Horner substitution.  Operands of different orders are rejected
rather than silently truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Jet",
    "jet_add",
    "jet_sub",
    "jet_scale",
    "jet_mul",
    "jet_div",
    "jet_compose",
    "jet_sin",
    "jet_cos",
    "jet_exp",
    "jet_ipow",
    "jet_elementary",
    "differentiate",
]


@dataclass(frozen=True)
class Jet:
    """Normalized Taylor data of a function at a single point.

    coeffs[i] = f^(i)(basepoint) / i!.  The basepoint is informational;
    arithmetic never inspects it except in :func:`jet_compose`.
    """

    coeffs: tuple[float, ...]
    basepoint: float = 0.0

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a jet needs at least the order-0 coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    @classmethod
    def constant(cls, c: float, order: int, basepoint: float = 0.0) -> "Jet":
        return cls((float(c),) + (0.0,) * order, basepoint)

    @classmethod
    def variable(cls, x0: float, order: int) -> "Jet":
        """Jet of the identity map x -> x at x0."""
        if order == 0:
            return cls((float(x0),), x0)
        return cls((float(x0), 1.0) + (0.0,) * (order - 1), x0)

    @classmethod
    def from_derivatives(cls, derivatives: Sequence[float], basepoint: float = 0.0) -> "Jet":
        """Build a jet from raw derivative values f, f', f'', ..."""
        return cls(
            tuple(d / math.factorial(i) for i, d in enumerate(derivatives)),
            basepoint,
        )

    def derivatives(self) -> tuple[float, ...]:
        """Raw derivative values f^(i)(basepoint), i = 0..order."""
        return tuple(c * math.factorial(i) for i, c in enumerate(self.coeffs))

    def truncated(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot extend a jet of order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1], self.basepoint)

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, float)):
            return Jet.constant(other, self.order, self.basepoint)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else jet_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else jet_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else jet_sub(other, self)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return jet_scale(other, self)
        other = self._coerce(other)
        return other if other is NotImplemented else jet_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else jet_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else jet_div(other, self)

    def __neg__(self):
        return jet_scale(-1.0, self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        return jet_ipow(self, exponent)


def _check_orders(a: Jet, b: Jet) -> None:
    if a.order != b.order:
        raise ValueError(f"jet order mismatch: {a.order} != {b.order}")


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_orders(a, b)
    return Jet(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.basepoint)


def jet_sub(a: Jet, b: Jet) -> Jet:
    _check_orders(a, b)
    return Jet(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.basepoint)


def jet_scale(alpha: float, a: Jet) -> Jet:
    return Jet(tuple(alpha * c for c in a.coeffs), a.basepoint)


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Cauchy product of normalized coefficients, truncated at the order."""
    _check_orders(a, b)
    k = a.order
    ca, cb = a.coeffs, b.coeffs
    out = [
        math.fsum(ca[i] * cb[n - i] for i in range(n + 1))
        for n in range(k + 1)
    ]
    return Jet(tuple(out), a.basepoint)


def jet_div(a: Jet, b: Jet) -> Jet:
    """Quotient a/b; requires b to have a nonzero constant term."""
    _check_orders(a, b)
    if b.coeffs[0] == 0.0:
        raise ZeroDivisionError("jet division by a jet with zero constant term")
    k = a.order
    ca, cb = a.coeffs, b.coeffs
    q = [0.0] * (k + 1)
    for n in range(k + 1):
        acc = ca[n] - math.fsum(cb[i] * q[n - i] for i in range(1, n + 1))
        q[n] = acc / cb[0]
    return Jet(tuple(q), a.basepoint)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of outer∘inner via truncated power-series substitution.

    The outer jet must be taken at the inner jet's value (its constant
    term); this is checked up to a small relative tolerance.
    """
    _check_orders(outer, inner)
    v = inner.coeffs[0]
    if abs(outer.basepoint - v) > 1e-9 * max(1.0, abs(v)):
        raise ValueError(
            f"outer jet basepoint {outer.basepoint} does not match "
            f"inner jet value {v}"
        )
    k = outer.order
    # Horner on the zero-constant shift of the inner jet.
    shifted = Jet((0.0,) + inner.coeffs[1:], inner.basepoint)
    result = Jet.constant(outer.coeffs[k], k, inner.basepoint)
    for i in range(k - 1, -1, -1):
        result = jet_mul(result, shifted)
        result = Jet(
            (result.coeffs[0] + outer.coeffs[i],) + result.coeffs[1:],
            inner.basepoint,
        )
    return result


def _sin_cos(inner: Jet) -> tuple[Jet, Jet]:
    # s' = u' cos(u), c' = -u' sin(u) expressed on normalized coefficients:
    # n*s_n = sum_{j=1..n} j*u_j*c_{n-j},  n*c_n = -sum_{j=1..n} j*u_j*s_{n-j}.
    k = inner.order
    u = inner.coeffs
    s = [0.0] * (k + 1)
    c = [0.0] * (k + 1)
    s[0] = math.sin(u[0])
    c[0] = math.cos(u[0])
    for n in range(1, k + 1):
        s[n] = math.fsum(j * u[j] * c[n - j] for j in range(1, n + 1)) / n
        c[n] = -math.fsum(j * u[j] * s[n - j] for j in range(1, n + 1)) / n
    return Jet(tuple(s), inner.basepoint), Jet(tuple(c), inner.basepoint)


def jet_sin(inner: Jet) -> Jet:
    return _sin_cos(inner)[0]


def jet_cos(inner: Jet) -> Jet:
    return _sin_cos(inner)[1]


def jet_exp(inner: Jet) -> Jet:
    # n*e_n = sum_{j=1..n} j*u_j*e_{n-j}
    k = inner.order
    u = inner.coeffs
    e = [0.0] * (k + 1)
    e[0] = math.exp(u[0])
    for n in range(1, k + 1):
        e[n] = math.fsum(j * u[j] * e[n - j] for j in range(1, n + 1)) / n
    return Jet(tuple(e), inner.basepoint)


def jet_ipow(inner: Jet, exponent: int) -> Jet:
    """Non-negative integer power by binary exponentiation."""
    if exponent < 0:
        raise ValueError("negative exponents: divide by jet_ipow(x, -n) explicitly")
    result = Jet.constant(1.0, inner.order, inner.basepoint)
    base = inner
    n = exponent
    while n:
        if n & 1:
            result = jet_mul(result, base)
        base = jet_mul(base, base)
        n >>= 1
    return result


def jet_elementary(kind: str, inner: Jet, exponent: int | None = None) -> Jet:
    """Jet of an elementary function composed with an inner jet.

    kind is one of "sin", "cos", "exp", "ipow" (the last needs
    ``exponent``).
    """
    if kind == "sin":
        return jet_sin(inner)
    if kind == "cos":
        return jet_cos(inner)
    if kind == "exp":
        return jet_exp(inner)
    if kind == "ipow":
        if exponent is None:
            raise ValueError("integer power needs an exponent")
        return jet_ipow(inner, exponent)
    raise ValueError(f"unknown elementary function kind: {kind!r}")


def differentiate(a: Jet) -> Jet:
    """Jet of the derivative; the order drops by one."""
    if a.order == 0:
        raise ValueError("cannot differentiate an order-0 jet")
    return Jet(
        tuple((i + 1) * c for i, c in enumerate(a.coeffs[1:])),
        a.basepoint,
    )
