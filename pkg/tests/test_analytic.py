"""Closed-form field contracts: boundary identities, appendix terms, trends."""

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freeconv import (
    EvalPoint,
    FlowParameters,
    ParameterError,
    SingularPrandtl,
    SingularSchmidt,
    appendix_terms,
    coefficients,
    concentration,
    i2erfc,
    profile,
    temperature,
    velocity,
)

# frozen offline: erfc(sqrt(0.71)), erfc(sqrt(0.6)) at 30 digits
ERFC_SQRT_071 = 0.23340340307438693
ERFC_SQRT_06 = 0.27332167829229815


def params(gr=15.0, gc=5.0, pr=0.71, sc=0.78, alpha_deg=30.0) -> FlowParameters:
    return FlowParameters(gr=gr, gc=gc, pr=pr, sc=sc,
                          alpha=math.radians(alpha_deg))


class TestCoefficients:
    def test_zero_buoyancy(self):
        coef = coefficients(params(gr=0.0, gc=0.0))
        assert coef.a == 0.0 and coef.b == 0.0

    def test_reference_arithmetic(self):
        # -15 * cos(60deg) / (0.71 - 1)
        coef = coefficients(params(gr=15.0, alpha_deg=60.0, pr=0.71))
        assert coef.a == pytest.approx(25.862068965517241, rel=1e-12)

    def test_singular_prandtl(self):
        with pytest.raises(SingularPrandtl):
            coefficients(params(pr=1.0))
        with pytest.raises(SingularPrandtl):
            coefficients(params(pr=1.0 + 1e-10))

    def test_singular_schmidt(self):
        with pytest.raises(SingularSchmidt):
            coefficients(params(sc=1.0))

    def test_just_outside_guard_band_is_accepted(self):
        assert math.isfinite(coefficients(params(pr=1.0 + 1e-6)).a)


class TestAppendixTerms:
    def test_at_the_wall(self):
        terms = appendix_terms(0.0, pr=0.71, sc=0.78)
        assert terms.l00 == 0.0
        assert (terms.l01, terms.l04, terms.l05) == (1.0, 10.0, 3.0)
        assert (terms.l1, terms.l2, terms.l3) == (1.0, 1.0, 1.0)
        assert (terms.l4, terms.l5, terms.l6) == (1.0, 1.0, 1.0)

    def test_direct_substitution(self):
        assert appendix_terms(1.0, pr=2.0, sc=0.78).l02 == 5.0
        assert appendix_terms(0.5, pr=0.71, sc=0.78).l05 == 6.25

    def test_ranges_for_positive_eta(self):
        for eta in (0.0, 0.3, 1.0, 2.5, 5.0):
            terms = appendix_terms(eta, pr=0.71, sc=2.01)
            for v in (terms.l1, terms.l2, terms.l3):
                assert 0.0 <= v <= 1.0
            for v in (terms.l4, terms.l5, terms.l6):
                assert 0.0 < v <= 1.0
            assert terms.l05 >= 3.0 and terms.l04 >= 10.0 and terms.l01 >= 1.0

    def test_rejects_negative_eta(self):
        with pytest.raises(ParameterError):
            appendix_terms(-0.1, pr=0.71, sc=0.78)


class TestTemperature:
    def test_wall_boundary(self):
        for pr in (0.17, 0.71, 5.0):
            assert temperature(params(pr=pr), EvalPoint(0.0, 0.2)) == 1.0

    def test_initial_condition(self):
        assert temperature(params(), EvalPoint(0.7, 0.0)) == 0.0
        assert temperature(params(), EvalPoint(0.7, -1.0)) == 0.0

    def test_reference_value(self):
        # eta = 1/(2*sqrt(0.25)) = 1, argument sqrt(0.71)
        value = temperature(params(pr=0.71), EvalPoint(1.0, 0.25))
        assert value == pytest.approx(ERFC_SQRT_071, abs=1e-14)

    def test_far_field_decay(self):
        assert temperature(params(), EvalPoint(12.0, 0.2)) < 1e-10


class TestConcentration:
    def test_wall_boundary(self):
        assert concentration(params(), EvalPoint(0.0, 0.3)) == 1.0

    def test_reference_value(self):
        # eta = 0.8/(2*sqrt(0.16)) = 1, argument sqrt(0.6)
        value = concentration(params(sc=0.6), EvalPoint(0.8, 0.16))
        assert value == pytest.approx(ERFC_SQRT_06, abs=1e-14)

    def test_structural_identity_with_temperature(self):
        # same erfc argument when Sc here equals Pr there; velocity is still
        # rejected at Sc=1, which is a separate guard
        pt = EvalPoint(0.9, 0.4)
        assert concentration(params(sc=1.0), pt) == temperature(params(pr=1.0), pt)
        with pytest.raises(SingularSchmidt):
            velocity(params(sc=1.0), pt)


class TestVelocity:
    def test_wall_identity_reference_case(self):
        assert velocity(params(), EvalPoint(0.0, 0.4)) == 0.4 * 0.4

    @settings(max_examples=200)
    @given(
        gr=st.floats(-100.0, 100.0),
        gc=st.floats(-100.0, 100.0),
        pr=st.floats(0.1, 10.0),
        sc=st.floats(0.1, 10.0),
        alpha=st.floats(0.0, math.radians(89.0)),
        t=st.floats(1e-6, 2.0),
    )
    def test_wall_identity_property(self, gr, gc, pr, sc, alpha, t):
        if abs(pr - 1.0) <= 1e-9 or abs(sc - 1.0) <= 1e-9:
            pr += 1e-3
            sc += 2e-3
        p = FlowParameters(gr=gr, gc=gc, pr=pr, sc=sc, alpha=alpha)
        assert abs(velocity(p, EvalPoint(0.0, t)) - t * t) <= 1e-10

    def test_plate_driven_profile_independent_of_pr_sc(self):
        pt = EvalPoint(0.8, 0.3)
        base = velocity(params(gr=0.0, gc=0.0, pr=0.71, sc=0.78), pt)
        other = velocity(params(gr=0.0, gc=0.0, pr=5.0, sc=0.16), pt)
        assert base == other

    def test_far_field_decay(self):
        assert abs(velocity(params(), EvalPoint(12.0, 0.2))) < 1e-12

    def test_zero_for_nonpositive_time(self):
        assert velocity(params(), EvalPoint(1.0, 0.0)) == 0.0
        assert velocity(params(), EvalPoint(1.0, -3.0)) == 0.0

    def test_matches_printed_term_layout(self):
        # same value as the literal composition
        # (t^2/3)[L1 L05 - L4 L00 L04] - (a+b) t [L1 L01 - 2 L4 L00]
        #   + a t [L2 L02 - 2 L5 L00 sqrt(Pr)] + b t [L3 L03 - 2 L6 L00 sqrt(Sc)]
        p = params()
        coef = coefficients(p)
        for y, t in ((0.3, 0.2), (1.0, 0.2), (0.5, 0.6), (2.0, 1.0)):
            eta = y / (2.0 * math.sqrt(t))
            lt = appendix_terms(eta, p.pr, p.sc)
            literal = (
                (t * t / 3.0) * (lt.l1 * lt.l05 - lt.l4 * lt.l00 * lt.l04)
                - (coef.a + coef.b) * t * (lt.l1 * lt.l01 - 2.0 * lt.l4 * lt.l00)
                + coef.a * t * (lt.l2 * lt.l02 - 2.0 * lt.l5 * lt.l00 * math.sqrt(p.pr))
                + coef.b * t * (lt.l3 * lt.l03 - 2.0 * lt.l6 * lt.l00 * math.sqrt(p.sc))
            )
            assert velocity(p, EvalPoint(y, t)) == pytest.approx(literal, rel=1e-12)

    def test_buoyancy_block_regrouping_identity(self):
        # t*[L1*L01 - 2*L4*L00] == 4*t*i2erfc(eta)
        t = 0.7
        for eta in np.linspace(0.0, 3.0, 20):
            lt = appendix_terms(float(eta), 0.71, 0.78)
            block = t * (lt.l1 * lt.l01 - 2.0 * lt.l4 * lt.l00)
            assert abs(block - 4.0 * t * i2erfc(float(eta))) <= 1e-10

    def test_buoyancy_scales_linearly(self):
        pt = EvalPoint(0.6, 0.25)
        plate = velocity(params(gr=0.0, gc=0.0), pt)
        base = velocity(params(gr=12.0, gc=7.0), pt)
        doubled = velocity(params(gr=24.0, gc=14.0), pt)
        assert doubled - plate == pytest.approx(2.0 * (base - plate), rel=1e-12)
        scaled = velocity(params(gr=12.0 * 3.7, gc=7.0 * 3.7), pt)
        assert scaled - plate == pytest.approx(3.7 * (base - plate), rel=1e-12)

    def test_singularities_propagate(self):
        with pytest.raises(SingularPrandtl):
            velocity(params(pr=1.0), EvalPoint(0.5, 0.2))


class TestProfileOperation:
    def test_single_wall_point(self):
        prof = profile(params(), 0.2, [0.0], "temperature")
        assert prof.samples == [(0.0, 1.0)]

    def test_velocity_profile_boundary_and_finiteness(self):
        y = np.linspace(0.0, 4.0, 100)
        prof = profile(params(), 0.3, y, "velocity")
        assert prof.values.size == 100
        assert np.all(np.isfinite(prof.values))
        assert prof.values[0] == 0.3 * 0.3

    def test_matches_scalar_evaluators(self):
        y = np.linspace(0.0, 3.0, 31)
        for kind, fn in (("velocity", velocity), ("temperature", temperature),
                         ("concentration", concentration)):
            prof = profile(params(), 0.4, y, kind)
            scalars = [fn(params(), EvalPoint(float(v), 0.4)) for v in y]
            assert np.array_equal(prof.values, np.array(scalars))

    def test_temperature_ordering_in_prandtl(self):
        y = np.linspace(0.05, 4.0, 80)
        profiles = [profile(params(pr=pr), 0.2, y, "temperature").values
                    for pr in (0.17, 0.5, 0.71)]
        assert np.all(profiles[0] > profiles[1])
        assert np.all(profiles[1] > profiles[2])

    def test_rejects_bad_grid_and_field(self):
        with pytest.raises(ParameterError):
            profile(params(), 0.2, [1.0, 0.5], "velocity")
        with pytest.raises(ParameterError):
            profile(params(), 0.2, [-1.0, 0.5], "velocity")
        with pytest.raises(ParameterError):
            profile(params(), 0.2, [0.0, 1.0], "pressure")

    def test_zero_time_profile_is_zero(self):
        prof = profile(params(), 0.0, np.linspace(0, 4, 11), "velocity")
        assert np.all(prof.values == 0.0)


class TestAnalyticResiduals:
    """Central-difference residuals of the closed form vanish at second order."""

    @staticmethod
    def _residual(kind, p, y, t, h):
        cos_a = math.cos(p.alpha)
        fns = {"temperature": temperature, "concentration": concentration,
               "velocity": velocity}
        f = fns[kind]
        df_dt = (f(p, EvalPoint(y, t + h)) - f(p, EvalPoint(y, t - h))) / (2 * h)
        d2f = (f(p, EvalPoint(y + h, t)) - 2 * f(p, EvalPoint(y, t))
               + f(p, EvalPoint(y - h, t))) / (h * h)
        if kind == "temperature":
            return p.pr * df_dt - d2f
        if kind == "concentration":
            return p.sc * df_dt - d2f
        return (df_dt - p.gr * cos_a * temperature(p, EvalPoint(y, t))
                - p.gc * cos_a * concentration(p, EvalPoint(y, t)) - d2f)

    @pytest.mark.parametrize("kind", ["temperature", "concentration", "velocity"])
    def test_second_order_residual_decay(self, kind):
        p = params()
        res = [max(abs(self._residual(kind, p, y, 0.2, h))
                   for y in (0.4, 0.8, 1.2))
               for h in (1e-2, 5e-3, 2.5e-3)]
        for coarse, fine in zip(res, res[1:]):
            assert 3.0 <= coarse / fine <= 5.0
