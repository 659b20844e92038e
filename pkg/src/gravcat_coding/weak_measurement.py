"""Weak-measurement post-selection protocol for gravcat thermal states.

Both qubits are measured weakly toward |0> with strength p (a partial,
in-principle-reversible collapse), the joint no-click branch is kept, and
the capacity is evaluated on the surviving state.  The post-selected state
and its capacity have closed forms in the thermal entries; the Kraus
conjugation route provides the independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coding import CapacityReport, classify_advantage
from .linalg import DensityMatrix, as_density, entropy_bits, tensor
from .thermal import GravcatParams, ThermalClosedForm, thermal_closed_form

MIN_SUCCESS_PROBABILITY = 1e-300


class OutOfRangeError(ValueError):
    """Measurement strength outside [0, 1]."""


class ZeroSuccessProbabilityError(ValueError):
    """Post-selection branch has vanishing probability."""


@dataclass(frozen=True)
class PostSelectedState:
    """Normalized surviving state plus the probability of the kept branch."""

    state: DensityMatrix
    success_probability: float


def _check_strength(strength: float) -> None:
    if not (math.isfinite(strength) and 0.0 <= strength <= 1.0):
        raise OutOfRangeError(f"measurement strength must lie in [0, 1], got {strength!r}")


def qwm_operator(strength: float) -> np.ndarray:
    """Single-qubit measurement operator diag(1, sqrt(1 - p)).

    Leaves |0> untouched and damps |1>; p = 0 is the identity, p = 1 the
    projector onto |0>.
    """
    _check_strength(strength)
    return np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - strength)]], dtype=complex)


def apply_qwm(rho, strength: float) -> PostSelectedState:
    """Measure both qubits weakly and post-select: (Q(x)Q) rho (Q(x)Q)^dagger / P_s.

    P_s is the trace before renormalization.  p = 1 (full projection) is
    allowed as long as the surviving branch has nonzero probability.
    """
    _check_strength(strength)
    dm = as_density(rho, check_psd=False)
    k = tensor(qwm_operator(strength), qwm_operator(strength))
    unnormalized = k @ dm.matrix @ k.conj().T
    success = float(np.trace(unnormalized).real)
    if success < MIN_SUCCESS_PROBABILITY:
        raise ZeroSuccessProbabilityError(
            f"post-selection success probability {success:.3e} vanishes"
        )
    state = unnormalized / success
    return PostSelectedState(
        state=DensityMatrix(0.5 * (state + state.conj().T), validated=True),
        success_probability=success,
    )


def wm_state_closed_form(cf: ThermalClosedForm, strength: float) -> PostSelectedState:
    """Closed-form post-selected thermal state (dual route to `apply_qwm`).

    With q = 1 - p (sqrt((1-p)^2) simplifies to 1-p on p in [0, 1]) the
    surviving state keeps the X pattern: corners alpha_minus and
    alpha_plus q^2 with kappa q, middle block beta q with eta q, all over
    P_s = alpha_minus + 2 beta q + alpha_plus q^2.
    """
    _check_strength(strength)
    q = 1.0 - strength
    success = cf.alpha_minus + 2.0 * cf.beta * q + cf.alpha_plus * q * q
    if success < MIN_SUCCESS_PROBABILITY:
        raise ZeroSuccessProbabilityError(
            f"post-selection success probability {success:.3e} vanishes"
        )
    m = (
        np.array(
            [
                [cf.alpha_minus, 0.0, 0.0, cf.kappa * q],
                [0.0, cf.beta * q, cf.eta * q, 0.0],
                [0.0, cf.eta * q, cf.beta * q, 0.0],
                [cf.kappa * q, 0.0, 0.0, cf.alpha_plus * q * q],
            ],
            dtype=complex,
        )
        / success
    )
    return PostSelectedState(state=DensityMatrix(m, validated=True), success_probability=success)


def capacity_wm_closed_form(params: GravcatParams, strength: float) -> CapacityReport:
    """Analytic capacity after the weak measurement.

    The surviving state's spectrum is the corner pair
    c_pm = ([am + ap q^2] +- sqrt([am - ap q^2]^2 + 4 kappa^2 q^2)) / (2 P_s)
    plus the middle pair d_pm = (beta +- |eta|) q / P_s; the averaged state
    is diagonal with halves nu/2 and mu/2 where nu P_s = am + beta q and
    mu P_s = ap q^2 + beta q.  p = 1 exactly is excluded here (several terms
    need limits); use `apply_qwm` for the projective endpoint.
    """
    if not (math.isfinite(strength) and 0.0 <= strength < 1.0):
        raise OutOfRangeError(
            f"measurement strength must lie in [0, 1) for the closed-form capacity, got {strength!r}"
        )
    cf = thermal_closed_form(params)
    q = 1.0 - strength
    success = cf.alpha_minus + 2.0 * cf.beta * q + cf.alpha_plus * q * q
    corner_sum = cf.alpha_minus + cf.alpha_plus * q * q
    disc = math.hypot(cf.alpha_minus - cf.alpha_plus * q * q, 2.0 * abs(cf.kappa) * q)
    c_plus = 0.5 * (corner_sum + disc) / success
    c_minus = 0.5 * (corner_sum - disc) / success  # can underflow to 0
    d_plus = (cf.beta + abs(cf.eta)) * q / success
    d_minus = (cf.beta - abs(cf.eta)) * q / success
    nu = (cf.alpha_minus + cf.beta * q) / success
    mu = (cf.alpha_plus * q * q + cf.beta * q) / success
    spectrum = tuple(sorted((c_plus, c_minus, d_plus, d_minus), reverse=True))
    entropy_state = entropy_bits(spectrum)
    entropy_average = entropy_bits((0.5 * nu, 0.5 * nu, 0.5 * mu, 0.5 * mu))
    chi = entropy_average - entropy_state
    return CapacityReport(
        chi=chi,
        entropy_state=entropy_state,
        entropy_average=entropy_average,
        state_spectrum=spectrum,
        advantage=classify_advantage(chi),
        strength=strength,
        success_probability=success,
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_maximize(fn, lo: float, hi: float, tol: float = 1e-9) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal function on [lo, hi].

    The bracket shrinks to width <= tol with a fixed, precomputed iteration
    count, so identical inputs give bit-identical results.  Returns
    (x_best, fn(x_best)) for the best probed point.
    """
    span = hi - lo
    if span <= tol:
        mid = 0.5 * (lo + hi)
        return mid, fn(mid)
    steps = int(math.ceil(math.log(tol / span) / math.log(_INV_PHI)))
    c = lo + _INV_PHI_SQ * span
    d = lo + _INV_PHI * span
    fc, fd = fn(c), fn(d)
    for _ in range(steps):
        span *= _INV_PHI
        if fc >= fd:  # keep the left bracket on ties, for determinism
            hi, d, fd = d, c, fc
            c = lo + _INV_PHI_SQ * span
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * span
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


STRENGTH_GRID_POINTS = 1001
STRENGTH_MAX = 1.0 - 1e-9  # closed form needs p < 1


def optimize_strength(params: GravcatParams) -> tuple[float, float]:
    """Measurement strength maximizing the closed-form capacity.

    A 1001-point uniform grid on [0, 1 - 1e-9] locates the maximum, then a
    golden-section refinement on the bracketing interval narrows it to 1e-9.
    The capacity profile can be non-monotonic with plateaus, so the
    deterministic grid comes first; derivative-based search is deliberately
    avoided.  The result never falls below the p = 0 capacity.
    """

    def chi_at(p: float) -> float:
        return capacity_wm_closed_form(params, p).chi

    step = STRENGTH_MAX / (STRENGTH_GRID_POINTS - 1)
    grid = [i * step for i in range(STRENGTH_GRID_POINTS)]
    values = [chi_at(p) for p in grid]
    best = max(range(STRENGTH_GRID_POINTS), key=values.__getitem__)
    lo = grid[best - 1] if best > 0 else grid[0]
    hi = grid[best + 1] if best < STRENGTH_GRID_POINTS - 1 else grid[-1]
    p_refined, chi_refined = golden_section_maximize(chi_at, lo, hi, tol=1e-9)
    candidates = [
        (values[0], 0.0),
        (values[best], grid[best]),
        (chi_refined, p_refined),
    ]
    chi_star, p_star = max(candidates, key=lambda t: (t[0], -t[1]))  # ties -> smaller p
    return p_star, chi_star
