"""Shared verification machinery.

Composite Gauss-Legendre quadrature, finite-difference derivative
estimation (Fornberg weights on central or one-sided stencils), a
sampled-data-to-endpoint-jet adapter, and exact big-integer checks of the
alternating binomial sums behind the trigonometric step coefficients.

Exact rational arithmetic is delegated to :class:`fractions.Fraction`,
re-exported here as :data:`Rational`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .functions import EndpointJet, Interval

__all__ = [
    "Rational",
    "QuadratureRule",
    "DEFAULT_QUADRATURE",
    "integrate",
    "fornberg_weights",
    "finite_difference_jet",
    "sampled_to_jet",
    "fd_tolerance",
    "binomial_alternating_sum",
    "binomial_identity_check",
]

Rational = Fraction

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule: `panels` equal panels, fixed node count."""

    panels: int = 32
    nodes_per_panel: int = 16

    def __post_init__(self):
        if self.panels < 1:
            raise ValueError("need at least one panel")
        if not 2 <= self.nodes_per_panel <= 64:
            raise ValueError("nodes per panel must be in [2, 64]")


#: Rule used by every oracle integral so tolerances are reproducible.
DEFAULT_QUADRATURE = QuadratureRule(panels=32, nodes_per_panel=16)


@lru_cache(maxsize=None)
def _gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def integrate(f, interval, rule: QuadratureRule = DEFAULT_QUADRATURE) -> float:
    """Composite Gauss-Legendre estimate of the integral of f.

    f may be vectorized over numpy arrays; scalar-only callables are
    handled with a fallback loop.
    """
    interval = Interval.coerce(interval)
    base_x, base_w = _gauss_nodes(rule.nodes_per_panel)
    edges = np.linspace(interval.a, interval.b, rule.panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    try:
        values = np.asarray(f(nodes), dtype=float)
        if values.shape != nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([float(f(x)) for x in nodes])
    if not np.all(np.isfinite(values)):
        raise ValueError("non-finite integrand samples")
    return float(np.dot(weights, values))


def fornberg_weights(z: float, nodes, order: int) -> np.ndarray:
    """Finite-difference weights at point z for derivatives 0..order.

    Fornberg's recursion; returns an array of shape (order+1, len(nodes))
    whose row m gives the weights of the m-th derivative.
    """
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    if order >= n:
        raise ValueError("need more nodes than the derivative order")
    c = np.zeros((order + 1, n))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - z
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


@lru_cache(maxsize=None)
def _unit_stencil(order: int, offsets: tuple[int, ...]) -> np.ndarray:
    return fornberg_weights(0.0, np.array(offsets, dtype=float), order)[order]


def _fd_step(k: int, scale: float) -> float:
    # Optimal-order balancing of truncation against round-off for the
    # k-th derivative of a second-order stencil.
    return scale * _EPS ** (1.0 / (k + 2))


def finite_difference_jet(f, x: float, order: int, scale: float = 1.0,
                          domain: Interval | None = None) -> tuple[float, ...]:
    """Raw derivative estimates f, f', ..., f^(order) at x.

    Interior points use central stencils with steps h_k = scale*eps^(1/(k+2)).
    Near a domain endpoint the stencil switches to a one-sided one (accuracy
    order 6 there, to offset the larger round-off amplification).  Raises if
    the domain cannot hold any stencil.
    """
    if order > 6:
        raise ValueError("finite differences support derivative orders <= 6")
    if scale <= 0:
        raise ValueError("scale must be positive")
    x = float(x)
    out = [float(f(x))]
    for k in range(1, order + 1):
        h = _fd_step(k, scale)
        p = (k + 1) // 2 + 1  # central half-width, second-order accurate
        if domain is None:
            offsets = tuple(range(-p, p + 1))
        else:
            npts = k + 6  # one-sided, sixth-order accurate
            if x - p * h >= domain.a and x + p * h <= domain.b:
                offsets = tuple(range(-p, p + 1))
            elif x + (npts - 1) * h <= domain.b:
                offsets = tuple(range(npts))
            elif x - (npts - 1) * h >= domain.a:
                offsets = tuple(range(-(npts - 1), 1))
            else:
                raise ValueError(
                    f"domain [{domain.a}, {domain.b}] too small for an "
                    f"order-{k} stencil with step {h}"
                )
        w = _unit_stencil(k, offsets)
        samples = [float(f(x + o * h)) for o in offsets]
        out.append(math.fsum(wi * si for wi, si in zip(w, samples)) / h**k)
    return tuple(out)


def sampled_to_jet(values, interval, endpoint: str, order: int) -> EndpointJet:
    """One-sided derivative estimates from uniformly gridded samples.

    Packages the estimates as an :class:`EndpointJet` so blend operators
    and interpolants can act on sampled data.  Needs at least
    2*order + 2 samples.
    """
    interval = Interval.coerce(interval)
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a one-dimensional sample array")
    n = len(v)
    if n < 2 * order + 2:
        raise ValueError(f"need at least {2 * order + 2} samples for order {order}")
    dx = interval.width / (n - 1)
    npts = min(n, order + 4)
    if endpoint == "left":
        offsets = tuple(range(npts))
        window = v[:npts]
        point = interval.a
    elif endpoint == "right":
        offsets = tuple(range(-(npts - 1), 1))
        window = v[-npts:]
        point = interval.b
    else:
        raise ValueError("endpoint must be 'left' or 'right'")
    derivs = [float(window[0] if endpoint == "left" else window[-1])]
    for k in range(1, order + 1):
        w = _unit_stencil(k, offsets)
        derivs.append(float(np.dot(w, window)) / dx**k)
    return EndpointJet(point, tuple(derivs))


def fd_tolerance(order: int, one_sided: bool = False, relax: float = 1.0) -> float:
    """Documented tolerance schedule for finite-difference checks.

    Base 10^-(8-k) at derivative order k, relaxed by 100 for one-sided
    endpoint stencils; callers pass an extra relaxation for families whose
    extreme endpoint flatness amplifies round-off.
    """
    tol = 10.0 ** (-(8 - order))
    if one_sided:
        tol *= 100.0
    return tol * relax


def binomial_alternating_sum(m: int, k: int) -> int:
    """Exact value of  sum_j (-1)^(m-j) (2j+1)^(2k-1) C(2m+1, m-j)."""
    return sum(
        (-1) ** (m - j) * (2 * j + 1) ** (2 * k - 1) * math.comb(2 * m + 1, m - j)
        for j in range(m + 1)
    )


def binomial_identity_check(m: int) -> dict[int, bool]:
    """Exact pass/fail of the alternating binomial sums for k = 1..m.

    Every sum must vanish; a False entry indicates an implementation bug
    upstream, not a numerical failure.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    return {k: binomial_alternating_sum(m, k) == 0 for k in range(1, m + 1)}
