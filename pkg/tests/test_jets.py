"""Jet arithmetic against independent oracles.

High-order derivative oracles use mpmath's arbitrary-precision
differentiation; polynomial composition is cross-checked with exact
coefficient convolution.
"""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stepblend.jets import (
    Jet,
    differentiate,
    jet_compose,
    jet_cos,
    jet_div,
    jet_elementary,
    jet_exp,
    jet_ipow,
    jet_mul,
    jet_sin,
)

finite_coeff = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def jets(order, min_const=None):
    def build(coeffs):
        if min_const is not None and abs(coeffs[0]) < min_const:
            coeffs = (coeffs[0] + (1.0 if coeffs[0] >= 0 else -1.0),) + coeffs[1:]
        return Jet(coeffs)

    return st.tuples(*[finite_coeff] * (order + 1)).map(build)


def test_mul_by_one_is_identity():
    one = Jet((1.0, 0.0, 0.0))
    a = Jet((2.5, -1.0, 0.75))
    assert jet_mul(one, a).coeffs == a.coeffs


def test_mul_square_of_identity_at_one():
    x = Jet.variable(1.0, 2)
    assert jet_mul(x, x).coeffs == (1.0, 2.0, 1.0)


def test_div_geometric_series():
    # 1 / (1 + x) at 0: alternating signs, exact coefficient oracle
    order = 7
    one = Jet.constant(1.0, order)
    denom = Jet((1.0, 1.0) + (0.0,) * (order - 1))
    q = jet_div(one, denom)
    assert q.coeffs == tuple((-1.0) ** i for i in range(order + 1))


def test_div_by_zero_constant_term():
    with pytest.raises(ZeroDivisionError):
        jet_div(Jet((1.0, 0.0)), Jet((0.0, 1.0)))


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        jet_mul(Jet((1.0, 2.0)), Jet((1.0, 2.0, 3.0)))


def test_compose_with_identity_outer():
    inner = Jet((0.3, 1.5, -0.25, 0.125), basepoint=2.0)
    outer = Jet.variable(0.3, 3)
    assert jet_compose(outer, inner).coeffs == pytest.approx(inner.coeffs, abs=1e-15)


def test_compose_affine_inner_scales_derivatives():
    # inner = (x - a)/(b - a): derivative i of the composite picks up (b-a)^-i
    a, b = 1.0, 3.0
    order = 4
    x0 = 2.2
    xi0 = (x0 - a) / (b - a)
    outer = jet_sin(Jet.variable(xi0, order))
    inner = Jet((xi0, 1.0 / (b - a)) + (0.0,) * (order - 1), x0)
    composed = jet_compose(outer, inner)
    for i, c in enumerate(composed.coeffs):
        assert c == pytest.approx(outer.coeffs[i] / (b - a) ** i, rel=1e-14)


def _poly_compose_exact(p, q, order):
    # coefficients of p(q(x)) by direct convolution of q powers, truncated
    out = [0.0] * (order + 1)
    power = [1.0] + [0.0] * order  # q^j, ascending
    for pj in p:
        for i, c in enumerate(power):
            out[i] += pj * c
        nxt = [0.0] * (order + 1)
        for i1, c1 in enumerate(power):
            if c1 == 0.0:
                continue
            for i2, c2 in enumerate(q):
                if i1 + i2 <= order:
                    nxt[i1 + i2] += c1 * c2
        power = nxt
    return out


def test_compose_random_polynomials_matches_symbolic(rng):
    # expand p(q(x)) exactly by coefficient convolution, then differentiate
    order = 4
    for _ in range(20):
        p = list(rng.uniform(-2, 2, 4))
        q = list(rng.uniform(-2, 2, 4))
        # jets of p at q(0) and q at 0
        q0 = q[0]
        outer = Jet(
            tuple(
                sum(math.comb(n, i) * q0 ** (n - i) * p[n] for n in range(i, 4))
                for i in range(order + 1)
            ),
            basepoint=q0,
        )
        inner = Jet(tuple(q) + (0.0,) * (order - 3))
        composed = jet_compose(outer, inner)
        expected = _poly_compose_exact(p, q, order)
        assert composed.coeffs == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_sin_of_pi_x_at_zero():
    inner = Jet((0.0, math.pi, 0.0, 0.0))
    s = jet_sin(inner)
    assert s.coeffs == pytest.approx((0.0, math.pi, 0.0, -math.pi**3 / 6), rel=1e-15)


def test_exp_of_zero_jet():
    assert jet_exp(Jet.constant(0.0, 3)).coeffs == (1.0, 0.0, 0.0, 0.0)


def test_cos_against_finite_differences():
    from stepblend.numerics import finite_difference_jet

    x0 = 0.25
    jet = jet_cos(3 * math.pi * Jet.variable(x0, 4))
    fd = finite_difference_jet(lambda x: math.cos(3 * math.pi * x), x0, 4)
    for k in range(5):
        assert jet.derivatives()[k] == pytest.approx(fd[k], abs=10.0 ** -(6 - k))


@pytest.mark.parametrize("kind,fn", [
    ("sin", mpmath.sin),
    ("cos", mpmath.cos),
    ("exp", mpmath.exp),
    ("ipow", lambda u: u**7),
])
@pytest.mark.parametrize("order", [1, 3, 5, 8])
def test_elementary_jets_match_mpmath(kind, fn, order, rng):
    # arbitrary-precision derivative oracle, valid beyond what float
    # finite differences can resolve
    for _ in range(3):
        x0 = float(rng.uniform(0.1, 0.9))
        w = float(rng.uniform(0.5, 4.0))
        jet = jet_elementary(kind, w * Jet.variable(x0, order), exponent=7)
        with mpmath.workdps(40):
            for k in range(order + 1):
                exact = float(mpmath.diff(lambda t: fn(w * t), x0, k))
                scale = max(1.0, abs(exact))
                assert abs(jet.derivatives()[k] - exact) / scale < 1e-12


def test_ipow_matches_repeated_mul():
    a = Jet((1.5, -0.5, 0.25, 0.0, 1.0))
    by_mul = a
    for _ in range(3):
        by_mul = jet_mul(by_mul, a)
    assert jet_ipow(a, 4).coeffs == pytest.approx(by_mul.coeffs, rel=1e-14)


def test_elementary_integer_power_dispatch():
    a = Jet((2.0, 1.0))
    assert jet_elementary("ipow", a, exponent=2).coeffs == (4.0, 4.0)
    with pytest.raises(ValueError):
        jet_elementary("ipow", a)
    with pytest.raises(ValueError):
        jet_elementary("sinh", a)


def test_differentiate_shifts_coefficients():
    a = Jet((1.0, 2.0, 3.0, 4.0))
    assert differentiate(a).coeffs == (2.0, 6.0, 12.0)


def test_from_derivatives_round_trip():
    derivs = (1.0, -2.0, 6.0, 12.0)
    assert Jet.from_derivatives(derivs).derivatives() == pytest.approx(derivs)


@settings(max_examples=60, deadline=None)
@given(a=jets(5), b=jets(5))
def test_mul_commutative(a, b):
    left = jet_mul(a, b).coeffs
    right = jet_mul(b, a).coeffs
    assert left == pytest.approx(right, rel=1e-13, abs=1e-13)


@settings(max_examples=60, deadline=None)
@given(a=jets(4), b=jets(4), c=jets(4))
def test_mul_associative(a, b, c):
    left = jet_mul(jet_mul(a, b), c).coeffs
    right = jet_mul(a, jet_mul(b, c)).coeffs
    scale = max(1.0, *(abs(v) for v in left))
    assert all(abs(l - r) <= 1e-11 * scale for l, r in zip(left, right))


@settings(max_examples=60, deadline=None)
@given(a=jets(5), b=jets(5, min_const=1.0))
def test_div_undoes_mul(a, b):
    recovered = jet_div(jet_mul(a, b), b).coeffs
    scale = max(1.0, *(abs(v) for v in a.coeffs))
    assert all(abs(x - y) <= 1e-12 * scale for x, y in zip(recovered, a.coeffs))


@settings(max_examples=40, deadline=None)
@given(inner=jets(5))
def test_compose_identity_outer_is_identity(inner):
    outer = Jet.variable(inner.coeffs[0], 5)
    composed = jet_compose(outer, inner)
    assert composed.coeffs == pytest.approx(inner.coeffs, rel=1e-13, abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(a=jets(6), b=jets(6))
def test_arithmetic_stays_finite(a, b):
    for result in (jet_mul(a, b), a + b, a - b, jet_sin(a), jet_exp(a)):
        assert all(math.isfinite(c) for c in result.coeffs)
