"""Measurement of the environment and local filtration for a single coupling.

Closed forms implemented here (checked against the simulator):

    sigma_II  = {T^2, -T(T-R), (T-R)^2, R^2} / (4 P_II),
    P_II      = (T^2 + (T-R)^2 + R^2) / 4,
    C_II      = T |T-R| / (2 P_II),

and after the rebalancing + epsilon filters

    sigma_III = {eps*alpha, -eps*alpha, eps*alpha, eps^2*delta} / (4 P_III),
    C_III     = 2 eps alpha / (2 eps alpha + eps^2 delta),
    P_III     = (2 eps alpha + eps^2 delta) / 4,

with (alpha, delta) = ((2T-1)^2, R^2) for T > |2T-1| and
(T^2, (TR/(R-T))^2) otherwise.

Note on the rebalancing filter: balancing the central populations T^2 and
(2T-1)^2 while leaving the VV corner at R^2 (which the sigma_III form above
requires) forces the H-attenuation onto Alice's mode in the T > |2T-1|
branch, matching the N-coupling rule |H>_A -> sqrt(B_N/A_N) |H>_A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .channel import (
    CouplingParams,
    IndistinguishabilityModel,
    PostSelectedState,
    couple_mixed_indistinguishability,
)
from .errors import DegenerateCouplingError, DimensionError, EntconcError
from .qmath import DensityMatrix, kron, normalize
from .states import KET_H, KET_V, mixed_env, singlet_standard


@dataclass(frozen=True)
class MeasurementOutcome:
    result: str  # "H" or "V"
    probability: float
    basis: str = "HV"


@dataclass(frozen=True)
class FilterSpec:
    """Per-party polarization attenuations, as (axis, amplitude factor)."""

    alice: tuple[str, float] | None = None
    bob: tuple[str, float] | None = None

    def __post_init__(self):
        for party in (self.alice, self.bob):
            if party is None:
                continue
            axis, factor = party
            if axis not in ("H", "V"):
                raise EntconcError(f"filter axis {axis!r} not in {{H, V}}")
            if not 0.0 <= factor <= 1.0:
                raise EntconcError(f"filter factor {factor} outside [0, 1]")

    def kraus(self) -> np.ndarray:
        def local(party):
            k = np.eye(2, dtype=complex)
            if party is not None:
                axis, factor = party
                k[0 if axis == "H" else 1, 0 if axis == "H" else 1] = factor
            return k

        return kron(local(self.alice), local(self.bob))


def raw_attenuations(a_alice: float, a_bob: float) -> FilterSpec:
    """V-polarization attenuations given as intensity factors A_i
    (|V> -> sqrt(A_i) |V>)."""
    return FilterSpec(alice=("V", np.sqrt(a_alice)), bob=("V", np.sqrt(a_bob)))


@dataclass
class ProtocolStep:
    name: str
    state: DensityMatrix
    step_prob: float


@dataclass
class ProtocolTrace:
    steps: list[ProtocolStep] = field(default_factory=list)
    feed_forward_applied: bool = False

    def record(self, name: str, state: DensityMatrix, prob: float):
        self.steps.append(ProtocolStep(name, state, prob))

    @property
    def cumulative_prob(self) -> float:
        out = 1.0
        for s in self.steps:
            out *= s.step_prob
        return out

    @property
    def final_state(self) -> DensityMatrix:
        return self.steps[-1].state


_PROJ = {"H": np.outer(KET_H, KET_H.conj()), "V": np.outer(KET_V, KET_V.conj())}


def measure_env(state: PostSelectedState, result: str) -> PostSelectedState:
    """Project the environment qubit onto |H> or |V>, trace it out.

    The returned success probability is the input one multiplied by the
    outcome probability, so the H branch of the ideal chain carries exactly
    P_II.
    """
    if state.rho.dims != (2, 2, 2):
        raise DimensionError(f"measure_env: dims {state.rho.dims}, expected 3 qubits")
    proj = kron(np.eye(4, dtype=complex), _PROJ[result])
    unnorm = proj @ state.rho.mat @ proj
    from .qmath import partial_trace

    reduced = partial_trace(unnorm, (2, 2, 2), (0, 1))
    rho, prob = normalize(reduced, (2, 2))
    return PostSelectedState(rho, state.success_prob * prob)


def outcome_probabilities(state: PostSelectedState) -> tuple[float, float]:
    e_marginal = state.rho.ptrace((2,)).mat
    return float(e_marginal[0, 0].real), float(e_marginal[1, 1].real)


def apply_filter(state: DensityMatrix, spec: FilterSpec) -> PostSelectedState:
    """Local attenuation on a two-qubit state; trace-decreasing, probabilistic."""
    k = spec.kraus()
    unnorm = k @ state.mat @ k.conj().T
    rho, prob = normalize(unnorm, (2, 2))
    return PostSelectedState(rho, prob)


def _bloch_unitary(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=complex,
    )


def feed_forward(v_branch: DensityMatrix, h_branch: DensityMatrix) -> tuple[DensityMatrix, np.ndarray]:
    """Best local correction on Bob's qubit for the V measurement branch.

    The correcting unitary is found numerically by maximizing the fidelity
    between the corrected V-branch state and the H-branch one.  Concurrence
    is untouched by any such local unitary, so both branches contribute the
    same entanglement regardless of the residual infidelity.
    """
    from .metrics import fidelity

    def corrected(x):
        u = kron(np.eye(2, dtype=complex), _bloch_unitary(*x))
        return DensityMatrix(u @ v_branch.mat @ u.conj().T, (2, 2))

    def cost(x):
        return -fidelity(corrected(x), h_branch)

    best = None
    for x0 in ([0.0, 0.0, 0.0], [np.pi, 0.0, 0.0], [np.pi / 2, np.pi / 2, 0.0]):
        res = minimize(cost, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12})
        if best is None or res.fun < best.fun:
            best = res
    u = _bloch_unitary(*best.x)
    return corrected(best.x), u


def rebalance_branch(T: float) -> tuple[str, str, float]:
    """(party, axis, factor) of the population-balancing filter at this T."""
    if abs(T - 0.5) < 1e-12:
        raise DegenerateCouplingError("rebalance filter degenerates at T = 1/2")
    d = abs(2.0 * T - 1.0)
    if T > d:
        return "alice", "H", d / T
    return "alice", "V", T / d


def rebalance_filter(state: DensityMatrix, params: CouplingParams) -> PostSelectedState:
    """Balance the central populations of a sigma_II-form state."""
    party, axis, factor = rebalance_branch(params.T)
    assert party == "alice"
    return apply_filter(state, FilterSpec(alice=(axis, factor)))


def epsilon_filter(state: DensityMatrix, eps: float) -> PostSelectedState:
    """Attenuate the V component on both modes: |V> -> sqrt(eps) |V>."""
    if not 0.0 < eps <= 1.0:
        raise EntconcError(f"epsilon {eps} outside (0, 1]")
    root = np.sqrt(eps)
    return apply_filter(state, FilterSpec(alice=("V", root), bob=("V", root)))


# --- closed forms -----------------------------------------------------------


def p2_closed_form(T: float) -> float:
    R = 1.0 - T
    return (T**2 + (T - R) ** 2 + R**2) / 4.0


def sigma2_closed_form(T: float) -> DensityMatrix:
    R = 1.0 - T
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = T**2
    m[1, 2] = m[2, 1] = -T * (T - R)
    m[2, 2] = (T - R) ** 2
    m[3, 3] = R**2
    return DensityMatrix(m / (4.0 * p2_closed_form(T)), (2, 2))


def c2_closed_form(T: float) -> float:
    R = 1.0 - T
    return T * abs(T - R) / (2.0 * p2_closed_form(T))


def sigma3_params(T: float) -> tuple[float, float]:
    """(alpha, delta) of the filtered-state closed form at this T."""
    R = 1.0 - T
    d = abs(2.0 * T - 1.0)
    if T > d:
        return (2.0 * T - 1.0) ** 2, R**2
    if abs(R - T) < 1e-12:
        raise DegenerateCouplingError("filtered closed form degenerates at T = 1/2")
    return T**2, (T * R / (R - T)) ** 2


def sigma3_closed_form(T: float, eps: float) -> DensityMatrix:
    """Filtered-state closed form.

    The coherence keeps the sign inherited from sigma_II, -sign(T - R):
    writing it as -eps*alpha assumes T > 1/2.
    """
    alpha, delta = sigma3_params(T)
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = eps * alpha
    m[1, 2] = m[2, 1] = -np.sign(2.0 * T - 1.0) * eps * alpha
    m[3, 3] = eps**2 * delta
    return DensityMatrix(m / (2.0 * eps * alpha + eps**2 * delta), (2, 2))


def c3_closed_form(T: float, eps: float) -> float:
    alpha, delta = sigma3_params(T)
    return 2.0 * eps * alpha / (2.0 * eps * alpha + eps**2 * delta)


def p3_closed_form(T: float, eps: float) -> float:
    alpha, delta = sigma3_params(T)
    return (2.0 * eps * alpha + eps**2 * delta) / 4.0


# --- full protocol ----------------------------------------------------------


def run_protocol(
    T: float,
    eps: float | None = None,
    p: float = 1.0,
    feed_forward_enabled: bool = False,
    raw_filters: FilterSpec | None = None,
    input_state: DensityMatrix | None = None,
) -> ProtocolTrace:
    """Chain coupling, environment measurement and filtration.

    The filtered chain follows the H measurement branch.  With feed-forward
    enabled the V branch is corrected and kept for probability accounting;
    without it the branch is discarded and the cumulative probability is
    halved.  ``raw_filters`` replaces the derived (rebalance, eps) filter
    pair with explicit per-party attenuations.
    """
    if eps is not None and raw_filters is not None:
        raise EntconcError("run_protocol: give either eps or raw_filters, not both")
    if input_state is None:
        input_state = singlet_standard()
    trace = ProtocolTrace(feed_forward_applied=feed_forward_enabled)
    trace.record("input", input_state, 1.0)

    params = CouplingParams(T)
    coupled = couple_mixed_indistinguishability(
        input_state, mixed_env(), params, IndistinguishabilityModel(p)
    )
    trace.record("coupled", coupled.rho, coupled.success_prob)

    prob_h, prob_v = outcome_probabilities(coupled)
    h_branch = measure_env(coupled, "H")
    if feed_forward_enabled:
        v_branch = measure_env(coupled, "V")
        v_corrected, _ = feed_forward(v_branch.rho, h_branch.rho)
        mixed = prob_h * h_branch.rho.mat + prob_v * v_corrected.mat
        _, kept = normalize(mixed, (2, 2))
        trace.record("measured", h_branch.rho, kept)
    else:
        trace.record("measured", h_branch.rho, prob_h)
    state = h_branch.rho

    if raw_filters is not None:
        filtered = apply_filter(state, raw_filters)
        trace.record("filtered_raw", filtered.rho, filtered.success_prob)
    elif eps is not None:
        rebalanced = rebalance_filter(state, params)
        trace.record("rebalanced", rebalanced.rho, rebalanced.success_prob)
        filtered = epsilon_filter(rebalanced.rho, eps)
        trace.record("filtered", filtered.rho, filtered.success_prob)
    return trace
