import numpy as np
import pytest

from entconc.cascade import (
    CascadeParams,
    cascade_filter,
    closed_form_concurrence,
    closed_form_state,
    coefficients,
    filtered_concurrence,
    filtered_success_prob,
    simulate_cascade,
)
from entconc.errors import DegenerateCouplingError, EntconcError
from entconc.metrics import concurrence
from entconc.protocol import p2_closed_form, sigma2_closed_form


def _cumulative(trace):
    prod = 1.0
    for step in trace.steps:
        prod *= step.step_prob
    return prod


class TestCoefficients:
    def test_two_stage_example(self):
        coeffs = coefficients(CascadeParams((0.4, 0.4)))
        assert coeffs.a == pytest.approx(0.0256, abs=1e-12)
        assert coeffs.b == pytest.approx(0.0016, abs=1e-12)
        assert coeffs.c == pytest.approx(0.072, abs=1e-12)
        assert coeffs.p_success == pytest.approx((0.0256 + 0.0016 + 0.072) / 8, abs=1e-12)

    def test_single_stage_matches_protocol(self):
        for T in (0.1, 0.4, 0.8):
            coeffs = coefficients(CascadeParams((T,)))
            assert coeffs.p_success == pytest.approx(p2_closed_form(T), abs=1e-12)
            state = closed_form_state(coeffs)
            assert np.abs(state.mat - sigma2_closed_form(T).mat).max() < 1e-12

    def test_cross_magnitude(self):
        rng = np.random.default_rng(50)
        for _ in range(10):
            ts = tuple(rng.uniform(0.05, 0.95, rng.integers(1, 6)))
            coeffs = coefficients(CascadeParams(ts))
            assert abs(coeffs.cross_signed) == pytest.approx(
                np.sqrt(coeffs.a * coeffs.b), abs=1e-12
            )

    def test_transparent_chain(self):
        coeffs = coefficients(CascadeParams((1.0, 1.0, 1.0)))
        assert (coeffs.a, coeffs.b, coeffs.c) == (1.0, 1.0, 0.0)
        assert closed_form_concurrence(coeffs) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_empty_and_bad_eps(self):
        with pytest.raises(EntconcError):
            CascadeParams(())
        with pytest.raises(EntconcError):
            CascadeParams((0.4,), eps=0.0)


class TestClosedFormAgainstSimulation:
    def test_random_chains(self):
        rng = np.random.default_rng(51)
        for _ in range(15):
            n = int(rng.integers(1, 5))
            ts = tuple(float(t) for t in rng.uniform(0.05, 0.95, n))
            eps = float(rng.uniform(0.05, 1.0))
            params = CascadeParams(ts, eps=eps)
            coeffs = coefficients(params)
            trace = simulate_cascade(params)

            measured = next(s.state for s in reversed(trace.steps) if s.name.startswith("meas"))
            assert np.abs(measured.mat - closed_form_state(coeffs).mat).max() < 1e-10
            assert abs(concurrence(measured).value - closed_form_concurrence(coeffs)) < 1e-10

            assert abs(
                concurrence(trace.final_state).value - filtered_concurrence(coeffs, eps)
            ) < 1e-10
            assert abs(_cumulative(trace) - filtered_success_prob(coeffs, eps)) < 1e-10

    def test_majority_side_swap(self):
        # T < 1/2 makes B_N > A_N for a single stage with strong reflection.
        params = CascadeParams((0.1,), eps=0.3)
        coeffs = coefficients(params)
        assert coeffs.b > coeffs.a
        trace = simulate_cascade(params)
        assert abs(
            concurrence(trace.final_state).value - filtered_concurrence(coeffs, 0.3)
        ) < 1e-10

    def test_filter_side_irrelevant_to_concurrence(self):
        coeffs = coefficients(CascadeParams((0.7, 0.6)))
        state = closed_form_state(coeffs)
        out = cascade_filter(state, coeffs, 0.4)
        assert concurrence(out.rho).value == pytest.approx(
            filtered_concurrence(coeffs, 0.4), abs=1e-12
        )


class TestFilteredScaling:
    def test_concurrence_improves_with_smaller_eps(self):
        coeffs = coefficients(CascadeParams((0.4, 0.4)))
        values = [filtered_concurrence(coeffs, e) for e in np.linspace(0.01, 1.0, 20)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_asymptotically_maximal(self):
        coeffs = coefficients(CascadeParams((0.4, 0.6, 0.3)))
        assert filtered_concurrence(coeffs, 1e-9) > 1 - 1e-6

    def test_success_prob_scales_linearly_for_small_eps(self):
        # For small eps the 2 eps min(A,B) term dominates P_III.
        coeffs = coefficients(CascadeParams((0.4, 0.4)))
        p1 = filtered_success_prob(coeffs, 1e-6)
        p2 = filtered_success_prob(coeffs, 2e-6)
        assert p2 / p1 == pytest.approx(2.0, rel=1e-3)
        assert p1 == pytest.approx(2e-6 * min(coeffs.a, coeffs.b) / 8, rel=1e-3)

    def test_degenerate_chain_rejected(self):
        coeffs = coefficients(CascadeParams((0.0,)))
        with pytest.raises(DegenerateCouplingError):
            cascade_filter(closed_form_state(coeffs), coeffs, 0.5)


class TestPartialIndistinguishability:
    def test_p_one_matches_default(self):
        params = CascadeParams((0.4, 0.7), eps=0.5)
        a = simulate_cascade(params)
        b = simulate_cascade(params, p=1.0)
        assert np.abs(a.final_state.mat - b.final_state.mat).max() < 1e-12

    def test_partial_overlap_degrades(self):
        params = CascadeParams((0.4, 0.4), eps=0.2)
        full = concurrence(simulate_cascade(params).final_state).value
        partial = concurrence(simulate_cascade(params, p=0.85).final_state).value
        assert partial < full
