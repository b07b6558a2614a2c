"""N sequential couplings with fresh mixed environments.

Closed forms, with R_i = 1 - T_i:

    A_N = prod T_i^2
    B_N = prod (T_i - R_i)^2
    C_N = R_N^2 B_{N-1} + T_N^2 C_{N-1},   C_1 = R_1^2
    P_N = (A_N + B_N + C_N) / 2^(N+1)

The post-measurement state is X-form with populations (A_N, B_N, C_N) and
coherence -sqrt(A_N B_N); its concurrence is sqrt(A_N B_N) / (2^N P_N).
The final joint filtration attenuates V on both modes by sqrt(eps) and the
H component on the majority side by sqrt(min(A,B)/max(A,B)), giving
concurrence 2 B_N / (2 B_N + eps C_N) when B_N <= A_N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import (
    CouplingParams,
    IndistinguishabilityModel,
    PostSelectedState,
    couple_mixed_indistinguishability,
)
from .errors import DegenerateCouplingError, EntconcError, ZeroProbabilityError
from .protocol import FilterSpec, ProtocolTrace, apply_filter, measure_env, outcome_probabilities
from .qmath import DensityMatrix
from .states import mixed_env, singlet_standard


@dataclass(frozen=True)
class CascadeParams:
    transmittivities: tuple[float, ...]
    eps: float = 1.0

    def __post_init__(self):
        if len(self.transmittivities) < 1:
            raise EntconcError("cascade needs at least one coupling")
        for t in self.transmittivities:
            CouplingParams(t)
        if not 0.0 < self.eps <= 1.0:
            raise EntconcError(f"epsilon {self.eps} outside (0, 1]")

    @property
    def n(self) -> int:
        return len(self.transmittivities)


@dataclass(frozen=True)
class CascadeCoefficients:
    a: float
    b: float
    c: float
    n: int
    # Signed product prod T_i (T_i - R_i); its magnitude is sqrt(a*b).  The
    # N=1 state carries the signed coherence -T(T-R), so the general
    # coherence is -cross_signed (writing it as -sqrt(A B) assumes the
    # product is positive).
    cross_signed: float = 0.0

    @property
    def p_success(self) -> float:
        return (self.a + self.b + self.c) / 2 ** (self.n + 1)


def coefficients(params: CascadeParams) -> CascadeCoefficients:
    a = b = 1.0
    c = 0.0
    cross = 1.0
    for i, t in enumerate(params.transmittivities):
        r = 1.0 - t
        if i == 0:
            c = r**2
        else:
            c = r**2 * b + t**2 * c
        a *= t**2
        b *= (t - r) ** 2
        cross *= t * (t - r)
    return CascadeCoefficients(a, b, c, params.n, cross)


def closed_form_state(coeffs: CascadeCoefficients) -> DensityMatrix:
    total = coeffs.a + coeffs.b + coeffs.c
    if total <= 0.0:
        raise ZeroProbabilityError("cascade state has zero weight")
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = coeffs.a
    m[2, 2] = coeffs.b
    m[1, 2] = m[2, 1] = -coeffs.cross_signed
    m[3, 3] = coeffs.c
    return DensityMatrix(m / total, (2, 2))


def closed_form_concurrence(coeffs: CascadeCoefficients) -> float:
    return np.sqrt(coeffs.a * coeffs.b) / (2**coeffs.n * coeffs.p_success)


def filtered_concurrence(coeffs: CascadeCoefficients, eps: float) -> float:
    m = min(coeffs.a, coeffs.b)
    if m == 0.0:
        return 0.0
    return 2.0 * m / (2.0 * m + eps * coeffs.c)


def filtered_success_prob(coeffs: CascadeCoefficients, eps: float) -> float:
    """P_III for the cascade: eps (2 B_N + eps C_N) / 2^(N+1) when B <= A."""
    m = min(coeffs.a, coeffs.b)
    return eps * (2.0 * m + eps * coeffs.c) / 2 ** (coeffs.n + 1)


def cascade_filter(
    state: DensityMatrix, coeffs: CascadeCoefficients, eps: float
) -> PostSelectedState:
    """Joint filtration after all couplings.

    V is attenuated by sqrt(eps) on both modes; the H component of the side
    holding the larger central population absorbs sqrt(min/max) so the
    amplitude factor stays physical.  Which side absorbs it does not change
    the resulting concurrence.
    """
    if not 0.0 < eps <= 1.0:
        raise EntconcError(f"epsilon {eps} outside (0, 1]")
    if coeffs.a <= 0.0:
        raise DegenerateCouplingError("cascade filter needs A_N > 0")
    root = np.sqrt(eps)
    if coeffs.b <= coeffs.a:
        h_factor = np.sqrt(coeffs.b / coeffs.a)
        spec = FilterSpec(alice=("H", h_factor), bob=("V", root))
        first = apply_filter(state, spec)
        second = apply_filter(first.rho, FilterSpec(alice=("V", root)))
    else:
        h_factor = np.sqrt(coeffs.a / coeffs.b)
        spec = FilterSpec(alice=("V", root), bob=("H", h_factor))
        first = apply_filter(state, spec)
        second = apply_filter(first.rho, FilterSpec(bob=("V", root)))
    return PostSelectedState(second.rho, first.success_prob * second.success_prob)


def simulate_cascade(params: CascadeParams, p: float = 1.0) -> ProtocolTrace:
    """Step-by-step simulation: N couplings, each followed by an H-outcome
    measurement of the fresh environment, then one joint filtration."""
    model = IndistinguishabilityModel(p)
    trace = ProtocolTrace()
    state = singlet_standard()
    trace.record("input", state, 1.0)
    for i, t in enumerate(params.transmittivities):
        coupled = couple_mixed_indistinguishability(state, mixed_env(), CouplingParams(t), model)
        trace.record(f"coupled_{i + 1}", coupled.rho, coupled.success_prob)
        prob_h, _ = outcome_probabilities(coupled)
        measured = measure_env(coupled, "H")
        trace.record(f"measured_{i + 1}", measured.rho, prob_h)
        state = measured.rho
    coeffs = coefficients(params)
    filtered = cascade_filter(state, coeffs, params.eps)
    trace.record("filtered", filtered.rho, filtered.success_prob)
    return trace
