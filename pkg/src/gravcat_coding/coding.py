"""Dense-coding capacity of a two-qubit resource state.

The capacity chi = S(rho_bar) - S(rho) measures, in bits, how much classical
information one transmitted qubit of the shared pair can carry; rho_bar is
the average over the four Pauli signal encodings applied to the sender's
qubit (the first tensor factor).  chi > 1 beats the classical single-qubit
limit and chi = 2 is the optimum.  Two routes are implemented: the general
numeric pipeline on any state, and the closed form for gravcat thermal
states, each serving as the other's oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import (
    DensityMatrix,
    InvalidStateError,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    as_density,
    eigh,
    entropy_bits,
    partial_trace_first,
    tensor,
)
from .thermal import GravcatParams, thermal_closed_form

ADVANTAGE_EPSILON = 1e-3  # chi within this of 2 counts as optimal


class Advantage(str, Enum):
    NONE = "none"        # chi <= 1: no quantum advantage
    VALID = "valid"      # 1 < chi < 2 - epsilon
    OPTIMAL = "optimal"  # chi >= 2 - epsilon


def classify_advantage(chi: float) -> Advantage:
    if chi >= 2.0 - ADVANTAGE_EPSILON:
        return Advantage.OPTIMAL
    if chi > 1.0:
        return Advantage.VALID
    return Advantage.NONE


@dataclass(frozen=True)
class CapacityReport:
    """chi plus the quantities it decomposes into.

    ``state_spectrum`` holds the four eigenvalues of the resource state in
    descending order.  ``strength`` and ``success_probability`` are filled
    only for weak-measurement capacities.
    """

    chi: float
    entropy_state: float
    entropy_average: float
    state_spectrum: tuple[float, float, float, float]
    advantage: Advantage
    strength: float | None = None
    success_probability: float | None = None

    def to_dict(self) -> dict:
        out = {
            "chi": self.chi,
            "entropy_state": self.entropy_state,
            "entropy_average": self.entropy_average,
            "state_spectrum": list(self.state_spectrum),
            "advantage": self.advantage.value,
        }
        if self.strength is not None:
            out["strength"] = self.strength
            out["success_probability"] = self.success_probability
        return out


def ensemble_average(rho) -> DensityMatrix:
    """Average of the four signal encodings: (1/4) sum_i (s_i (x) I) rho (s_i (x) I).

    This Pauli twirl of the sender's qubit is the definitional route; it
    equals (I/2) (x) tr_A(rho), which `ensemble_average_via_marginal`
    computes directly.
    """
    dm = as_density(rho, check_psd=False)
    if dm.dim != 4:
        raise InvalidStateError(f"expected a 4x4 two-qubit state, got dim {dm.dim}")
    acc = np.zeros_like(dm.matrix)
    for sigma in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z):
        u = tensor(sigma, PAULI_I)
        acc += u @ dm.matrix @ u  # each Pauli factor is Hermitian
    avg = 0.25 * acc
    return DensityMatrix(0.5 * (avg + avg.conj().T), validated=True)


def ensemble_average_via_marginal(rho) -> DensityMatrix:
    """Identity route: the twirl replaces the sender's qubit with I/2."""
    marginal = partial_trace_first(rho)
    return DensityMatrix(tensor(0.5 * PAULI_I, marginal.matrix), validated=True)


def capacity_numeric(rho) -> CapacityReport:
    """chi = S(ensemble_average(rho)) - S(rho) on an arbitrary two-qubit state."""
    dm = as_density(rho, check_psd=False)
    spectrum = eigh(dm.matrix).eigenvalues
    entropy_state = entropy_bits(spectrum)
    entropy_average = entropy_bits(eigh(ensemble_average(dm).matrix).eigenvalues)
    chi = entropy_average - entropy_state
    return CapacityReport(
        chi=chi,
        entropy_state=entropy_state,
        entropy_average=entropy_average,
        state_spectrum=tuple(float(v) for v in spectrum),
        advantage=classify_advantage(chi),
    )


def capacity_closed_form(params: GravcatParams) -> CapacityReport:
    """Analytic capacity of the gravcat thermal state.

    The state spectrum splits into the outer-block pair
    a_pm = [(alpha- + alpha+) +- sqrt((alpha- - alpha+)^2 + 4 kappa^2)]/2 and
    the inner pair b_pm = beta +- |eta|; the averaged state is diagonal with
    doubly degenerate halves (alpha_pm + beta)/2.
    """
    cf = thermal_closed_form(params)
    disc = math.hypot(cf.alpha_minus - cf.alpha_plus, 2.0 * abs(cf.kappa))
    outer = cf.alpha_minus + cf.alpha_plus
    a_plus = 0.5 * (outer + disc)
    a_minus = 0.5 * (outer - disc)  # can underflow to 0 at low T
    b_plus = cf.beta + abs(cf.eta)
    b_minus = cf.beta - abs(cf.eta)
    spectrum = tuple(sorted((a_plus, a_minus, b_plus, b_minus), reverse=True))
    entropy_state = entropy_bits(spectrum)
    half_minus = 0.5 * (cf.alpha_minus + cf.beta)
    half_plus = 0.5 * (cf.alpha_plus + cf.beta)
    entropy_average = entropy_bits((half_minus, half_minus, half_plus, half_plus))
    chi = entropy_average - entropy_state
    return CapacityReport(
        chi=chi,
        entropy_state=entropy_state,
        entropy_average=entropy_average,
        state_spectrum=spectrum,
        advantage=classify_advantage(chi),
    )
