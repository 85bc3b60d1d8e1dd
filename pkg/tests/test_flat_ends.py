"""Closure, symmetry, and transform properties of flat-ended functions."""

import math

import numpy as np
import pytest

from stepblend import catalog
from stepblend.flat_ends import (
    affine_transform,
    change_of_interval,
    extend_step_to_line,
    lincomb,
    monotonicity_check,
    product,
    symmetry_check,
    to_staircase,
    validate_symmetric_step,
)
from stepblend.functions import Interval
from stepblend.numerics import finite_difference_jet
from stepblend.step_functions import beta_step, rational_step, trig_step

UNIT = Interval(0.0, 1.0)


class TestProduct:
    def test_one_times_f_keeps_jets(self, rng):
        one = catalog.make_constant(1.0, UNIT)
        f = catalog.make_sin(3.0, UNIT)
        p = product(one, f)
        for x in rng.uniform(0, 1, 5):
            assert p.jet(float(x), 3).coeffs == pytest.approx(
                f.jet(float(x), 3).coeffs, rel=1e-15
            )

    def test_step_squared_is_step_of_same_orders(self):
        r = rational_step((1, 1))
        p = product(r, r)
        assert (p.flat_left, p.flat_right) == (1, 1)
        assert p.value(0.0) == 0.0
        assert p.value(1.0) == 1.0
        assert all(abs(d) < 1e-10 for d in p.jet(0.0, 1).derivatives()[1:])
        assert all(abs(d) < 1e-10 for d in p.jet(1.0, 1).derivatives()[1:])

    def test_leibniz_boundary_value(self):
        # (hf)'(1) = h(1) f'(1) when h is flat at 1: here -5 sin 5
        h = beta_step((2, 2))
        f = catalog.make_cos(5.0, UNIT)
        p = product(h, f)
        assert p.jet(1.0, 1).derivatives()[1] == pytest.approx(-5 * math.sin(5.0), abs=1e-9)

    def test_domain_mismatch(self):
        with pytest.raises(ValueError):
            product(beta_step((1, 1)), catalog.make_sin(1.0, (0.0, 2.0)))

    @pytest.mark.parametrize("make_a", [lambda o: beta_step(o), lambda o: rational_step(o)])
    @pytest.mark.parametrize("make_b", [lambda o: beta_step(o), lambda o: rational_step(o)])
    @pytest.mark.parametrize("orders", [(1, 1), (2, 4), (4, 3)])
    def test_closure_under_multiplication(self, make_a, make_b, orders, rng):
        l, r = orders
        p = product(make_a(orders), make_b(orders))
        assert all(abs(d) < 1e-8 for d in p.jet(0.0, l).derivatives()[1:])
        assert all(abs(d) < 1e-8 for d in p.jet(1.0, r).derivatives()[1:])
        assert monotonicity_check(p, 2001).increasing()


class TestLincomb:
    def test_single_term_identity(self):
        f = catalog.make_exp(UNIT)
        g = lincomb([(1.0, f)])
        assert g.value(0.3) == f.value(0.3)

    def test_f_minus_f_is_flat_zero(self):
        f = catalog.make_sin(2.0, UNIT)
        z = lincomb([(1.0, f), (-1.0, f)])
        for x in (0.0, 0.4, 1.0):
            assert z.value(x) == 0.0
            assert z.jet(x, 4).coeffs == (0.0,) * 5

    def test_mixture_of_symmetric_steps(self):
        g = lincomb([(0.5, beta_step((1, 1))), (0.5, rational_step((1, 1)))])
        assert g.value(0.5) == pytest.approx(0.5, abs=1e-15)
        assert (g.flat_left, g.flat_right) == (1, 1)

    def test_flatness_is_componentwise_minimum(self):
        g = lincomb([(1.0, beta_step((3, 1))), (2.0, rational_step((2, 4)))])
        assert (g.flat_left, g.flat_right) == (2, 1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            lincomb([])


class TestChangeOfInterval:
    def test_identity_inner(self):
        h = beta_step((1, 1))
        ident = catalog.make_polynomial([0.0, 1.0], UNIT)
        c = change_of_interval(h, ident)
        for x in (0.0, 0.3, 1.0):
            assert c.value(x) == pytest.approx(h.value(x), abs=1e-15)

    def test_affine_change_keeps_orders(self):
        h = beta_step((1, 1))
        f = catalog.make_polynomial([0.0, 0.5], (0.0, 2.0))  # [0,2] onto [0,1]
        c = change_of_interval(h, f)
        assert (c.flat_left, c.flat_right) == (1, 1)
        assert c.domain == Interval(0.0, 2.0)
        assert all(abs(d) < 1e-10 for d in c.jet(0.0, 1).derivatives()[1:])
        assert all(abs(d) < 1e-10 for d in c.jet(2.0, 1).derivatives()[1:])

    def test_step_composition_flat_at_minimum_orders(self):
        # outer orders (3,3), inner (1,1): flat at least to the minimum
        c = change_of_interval(trig_step(1), beta_step((1, 1)))
        est = finite_difference_jet(c.value, 0.0, 1, domain=UNIT)
        assert abs(est[1]) < 1e-6
        assert all(abs(d) < 1e-10 for d in c.jet(0.0, 1).derivatives()[1:])
        assert all(abs(d) < 1e-10 for d in c.jet(1.0, 1).derivatives()[1:])

    def test_endpoint_mapping_enforced(self):
        h = beta_step((1, 1))
        bad = catalog.make_polynomial([0.1, 0.8], UNIT)  # f(0)=0.1
        with pytest.raises(ValueError):
            change_of_interval(h, bad)

    def test_range_escape_detected(self):
        h = beta_step((1, 1))
        # 3x - 2x^2 maps endpoints correctly but peaks at 1.125 inside
        bump = catalog.make_polynomial([0.0, 3.0, -2.0], UNIT)
        assert bump.value(0.0) == 0.0 and bump.value(1.0) == 1.0
        assert max(bump.value(x) for x in np.linspace(0, 1, 101)) > 1.05
        with pytest.raises(ValueError):
            change_of_interval(h, bump)


class TestAffineTransform:
    def test_identity_transform(self):
        h = beta_step((1, 2))
        t = affine_transform(h)
        for x in (0.0, 0.25, 1.0):
            assert t.value(x) == h.value(x)

    def test_y_reflection_swaps_orders(self):
        h = beta_step((1, 4))
        shifted = affine_transform(h, horizontal_shift=0.0, horizontal_scale=2.0,
                                   reflect_y=False)
        base = affine_transform(
            catalog.make_polynomial([0.0, 1.0], (-1.0, 1.0)), vertical_scale=1.0
        )
        assert base.domain == Interval(-1.0, 1.0)
        refl = affine_transform(
            to_staircase(h, (-1.0, 1.0), (0.0, 1.0)), reflect_y=True
        )
        assert refl.domain == Interval(-1.0, 1.0)
        assert (refl.flat_left, refl.flat_right) == (4, 1)
        assert shifted.domain == Interval(0.0, 2.0)

    def test_y_reflection_values(self):
        h = beta_step((2, 1))
        refl = affine_transform(h, reflect_y=True)
        assert refl.domain == Interval(-1.0, 0.0)
        for x in (-1.0, -0.3, 0.0):
            assert refl.value(x) == h.value(-x)
        # derivative picks up the sign
        assert refl.jet(-0.3, 1).derivatives()[1] == pytest.approx(
            -h.jet(0.3, 1).derivatives()[1], rel=1e-14
        )

    def test_vertical_map(self):
        h = beta_step((1, 1))
        t = affine_transform(h, vertical_scale=2.0, vertical_shift=1.0)
        assert t.value(0.0) == pytest.approx(1.0, abs=1e-15)
        assert t.value(1.0) == pytest.approx(3.0, abs=1e-15)

    def test_x_reflection_negates(self):
        h = trig_step(0)
        t = affine_transform(h, reflect_x=True)
        assert t.value(0.7) == -h.value(0.7)

    def test_positive_scale_required(self):
        with pytest.raises(ValueError):
            affine_transform(beta_step((1, 1)), horizontal_scale=0.0)


class TestToStaircase:
    def test_endpoint_mapping(self):
        s = to_staircase(beta_step((1, 1)), (0.0, 2.0), (1.0, 3.0))
        assert s.value(0.0) == pytest.approx(1.0, abs=1e-14)
        assert s.value(2.0) == pytest.approx(3.0, abs=1e-14)

    def test_midpoint_by_symmetry(self):
        s = to_staircase(beta_step((1, 1)), (0.0, 2.0), (1.0, 3.0))
        assert s.value(1.0) == pytest.approx(2.0, abs=1e-14)

    def test_flatness_carries_over(self):
        s = to_staircase(rational_step((4, 2)), (2.0, 4.0), (0.0, 1.0))
        assert (s.flat_left, s.flat_right) == (4, 2)
        est = finite_difference_jet(s.value, 2.0, 2, domain=s.domain)
        assert all(abs(d) < 1e-4 for d in est[1:])
        est = finite_difference_jet(s.value, 4.0, 2, domain=s.domain)
        assert all(abs(d) < 1e-4 for d in est[1:])

    def test_increasing(self):
        s = to_staircase(trig_step(1), (-1.0, 1.0), (5.0, 7.0))
        vals = [s.value(float(x)) for x in np.linspace(-1, 1, 201)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_non_step_rejected(self):
        not_step = catalog.make_constant(0.25, UNIT)
        with pytest.raises(ValueError):
            to_staircase(not_step, (0.0, 1.0), (0.0, 1.0))

    def test_reflected_staircase_swaps_orders_and_decreases(self):
        s = to_staircase(rational_step((4, 2)), (2.0, 4.0), (0.0, 1.0))
        r = affine_transform(s, reflect_y=True)
        assert (r.flat_left, r.flat_right) == (2, 4)
        vals = [r.value(float(x)) for x in np.linspace(-4, -2, 101)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))


class TestExtendStepToLine:
    def test_constant_tails(self):
        ext = extend_step_to_line(beta_step((1, 1)))
        assert ext.value(-5.0) == 0.0
        assert ext.value(7.0) == 1.0
        assert ext.value(0.0) == 0.0  # both branches agree at the seam

    def test_tail_jets_are_flat(self):
        ext = extend_step_to_line(beta_step((1, 1)))
        assert ext.jet(-2.0, 3).coeffs == (0.0,) * 4
        assert ext.jet(3.0, 3).coeffs == (1.0, 0.0, 0.0, 0.0)

    def test_seam_smoothness_matches_order(self):
        # beta(1,1): first derivative continuous across 0 and 1, second jumps
        ext = extend_step_to_line(beta_step((1, 1)))
        h = 1e-6
        for seam in (0.0, 1.0):
            inside = ext.jet(seam, 1).derivatives()[1]
            outside = 0.0
            assert abs(inside - outside) < 1e-9
        # second derivative of beta(1,1) = 6 - 12x jumps by 6 at both seams
        d2_inside_left = ext.jet(1e-9, 2).derivatives()[2]
        assert d2_inside_left == pytest.approx(6.0, abs=1e-6)
        assert ext.jet(-1e-9, 2).derivatives()[2] == 0.0

    def test_extension_of_unbounded_step_is_smooth_everywhere(self):
        from stepblend.step_functions import expo_rational_step

        ext = extend_step_to_line(expo_rational_step())
        for seam, sign in ((0.0, -1), (1.0, 1)):
            fd = finite_difference_jet(ext.value, seam + sign * 1e-3, 3, scale=1.0)
            assert all(abs(d) < 1e-4 for d in fd[1:])


class TestSymmetryCheck:
    def test_staircase_demo_is_symmetric(self):
        rep = symmetry_check(catalog.make_staircase_demo(), 1001)
        assert rep.max_defect < 1e-12

    def test_trig_steps_are_symmetric(self):
        for m in range(4):
            assert symmetry_check(trig_step(m), 1001).max_defect < 1e-12

    def test_square_defect_is_half(self):
        u = catalog.make_polynomial([0.0, 0.0, 1.0], UNIT)
        rep = symmetry_check(u, 1001)  # odd grid hits the midpoint
        assert rep.max_defect == pytest.approx(0.5, abs=1e-12)

    def test_grid_size_validation(self):
        with pytest.raises(ValueError):
            symmetry_check(trig_step(0), 2)


class TestValidateSymmetricStep:
    def test_trig_step_passes(self):
        rep = validate_symmetric_step(trig_step(1), check_order=3)
        assert rep.passed
        assert rep.symmetric and rep.left_flat and rep.right_flat and rep.increasing

    def test_asymmetric_rational_fails(self):
        rep = validate_symmetric_step(rational_step((4, 2)), check_order=2)
        assert not rep.symmetric
        assert not rep.passed
        # the defect is visible at the quarter point
        s = rational_step((4, 2))
        assert abs(s.value(0.25) + s.value(0.75) - 1.0) > 1e-3

    def test_symmetric_beta_passes(self):
        rep = validate_symmetric_step(beta_step((2, 2)), check_order=2)
        assert rep.passed


class TestInclusionProperty:
    def test_higher_flatness_implies_lower(self):
        f = beta_step((3, 2))
        # passing at (3,2) means passing at (2,2) as well
        for l, r in ((3, 2), (2, 2), (1, 1), (0, 0)):
            assert all(abs(d) < 1e-9 for d in f.jet(0.0, l).derivatives()[1:])
            assert all(abs(d) < 1e-9 for d in f.jet(1.0, r).derivatives()[1:])


class TestFlatEndedComposite:
    """A three-piece C^4 function whose outer pieces use rational-step
    carriers (flat orders (1,4) and (4,2)) to grow in and out of a
    cosine: seam continuity follows from the carrier flatness alone."""

    def _pieces(self):
        middle = catalog.make_cos(5.0, (1.0, 5.0))
        left_carrier = to_staircase(rational_step((1, 4)), (-1.0, 1.0), (0.0, 1.0))
        left = lincomb([
            (1.0, product(left_carrier, catalog.make_polynomial([3.0], (-1.0, 1.0)))),
            (1.0, product(left_carrier, catalog.make_cos(5.0, (-1.0, 1.0)))),
            (-3.0, catalog.make_constant(1.0, (-1.0, 1.0))),
        ])
        right_carrier = to_staircase(rational_step((4, 2)), (5.0, 8.0), (0.0, 1.0))
        two_minus_cos = lincomb([
            (2.0, catalog.make_constant(1.0, (5.0, 8.0))),
            (-1.0, catalog.make_cos(5.0, (5.0, 8.0))),
        ])
        right = lincomb([
            (1.0, product(right_carrier, two_minus_cos)),
            (1.0, catalog.make_cos(5.0, (5.0, 8.0))),
        ])
        return left, middle, right

    def test_outer_values(self):
        left, middle, right = self._pieces()
        assert left.value(-1.0) == pytest.approx(-3.0, abs=1e-12)
        assert right.value(8.0) == pytest.approx(2.0, abs=1e-12)

    def test_seam_jets_match_to_carrier_orders(self):
        left, middle, right = self._pieces()
        # right end of the first carrier is flat of order 4: C^4 seam at 1
        a = left.jet(1.0, 4).derivatives()
        b = middle.jet(1.0, 4).derivatives()
        for k, (u, v) in enumerate(zip(a, b)):
            assert u == pytest.approx(v, abs=1e-9), k
        # left end of the second carrier is flat of order 4: C^4 seam at 5
        a = right.jet(5.0, 4).derivatives()
        b = middle.jet(5.0, 4).derivatives()
        for k, (u, v) in enumerate(zip(a, b)):
            assert u == pytest.approx(v, abs=1e-9), k

    def test_seam_sharpness(self):
        # the first carrier is flat only to order 1 at its left end, so
        # nothing forces a fifth-derivative match at the C^4 seams
        left, middle, right = self._pieces()
        gap = abs(left.jet(1.0, 5).derivatives()[5] - middle.jet(1.0, 5).derivatives()[5])
        assert gap > 1.0


class TestDeclaredFlatnessIsTruthful:
    """Every constructed handle must actually be flat at its declared
    orders (the metadata comes from closure rules, never measurement)."""

    def handles(self):
        base = beta_step((2, 3))
        other = rational_step((3, 2))
        yield product(base, other)
        yield lincomb([(0.25, base), (0.75, other)])
        yield change_of_interval(trig_step(1), base)
        yield to_staircase(base, (-2.0, 1.0), (0.0, 5.0))
        yield affine_transform(base, vertical_scale=2.0, reflect_y=True)
        yield affine_transform(other, horizontal_scale=3.0, horizontal_shift=1.0)

    def test_declared_orders_hold_via_jets(self):
        for f in self.handles():
            a, b = f.domain.a, f.domain.b
            if isinstance(f.flat_left, int) and f.flat_left:
                derivs = f.jet(a, f.flat_left).derivatives()[1:]
                assert all(abs(d) < 1e-8 for d in derivs), f.label
            if isinstance(f.flat_right, int) and f.flat_right:
                derivs = f.jet(b, f.flat_right).derivatives()[1:]
                assert all(abs(d) < 1e-8 for d in derivs), f.label


class TestSymmetryComposition:
    def test_composition_of_symmetric_steps_is_symmetric(self):
        pairs = [
            (trig_step(1), beta_step((2, 2))),
            (beta_step((1, 1)), trig_step(0)),
            (rational_step((2, 2)), beta_step((3, 3))),
        ]
        for u, v in pairs:
            assert symmetry_check(u, 513).max_defect < 1e-12
            assert symmetry_check(v, 513).max_defect < 1e-12
            composed = change_of_interval(u, v)
            assert symmetry_check(composed, 513).max_defect < 1e-10

    def test_symmetric_step_onto_shifted_interval(self):
        # affine charts are symmetric, so the staircase stays symmetric
        s = to_staircase(trig_step(1), (2.0, 5.0), (0.0, 1.0))
        assert symmetry_check(s, 513).max_defect < 1e-12
