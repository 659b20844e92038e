"""Two-gravcat Hamiltonian and its thermal equilibrium state.

The model couples two double-well qubits: a level splitting ``omega`` on each
qubit plus a gravity-induced sigma_x (x) sigma_x exchange of strength
``gamma``, all in natural units with k_B = 1.  The Gibbs state at temperature
T has an X-shaped sparsity pattern whose entries have closed forms;
``gibbs_numeric`` provides the independent matrix-exponential route to the
same state, and every closed form in the package is tested against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    PAULI_I,
    PAULI_X,
    PAULI_Z,
    eigh,
    matrix_function,
    require_hermitian,
    tensor,
)

MIN_TEMPERATURE = 1e-6  # the Gibbs form is singular at T = 0


class InvalidParameterError(ValueError):
    """Model parameter outside its validity domain."""


class DegenerateGeometryError(ValueError):
    """Well geometry with no real inter-axis distance (L >= d_prime)."""


@dataclass(frozen=True)
class GravcatParams:
    """Model knobs in natural units (k_B = 1).

    ``omega`` is the qubit level splitting, ``gamma`` the gravitational
    exchange coupling, ``temperature`` the bath temperature.  ``omega = 0``
    makes two pairs of thermal levels cross; it is physically fine but must
    be opted into with ``allow_degenerate_omega``.
    """

    omega: float
    gamma: float
    temperature: float
    allow_degenerate_omega: bool = False

    def __post_init__(self) -> None:
        for name in ("omega", "gamma", "temperature"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if self.omega < 0.0 or (self.omega == 0.0 and not self.allow_degenerate_omega):
            raise InvalidParameterError(
                "omega must be positive (set allow_degenerate_omega=True to permit omega = 0)"
            )
        if self.gamma < 0.0:
            raise InvalidParameterError("gamma must be nonnegative")
        if self.temperature < MIN_TEMPERATURE:
            raise InvalidParameterError(
                f"temperature must be positive (minimum {MIN_TEMPERATURE:g} in natural units)"
            )

    @property
    def theta(self) -> float:
        """Energy scale sqrt(omega^2 + gamma^2) of the coupled outer block."""
        return math.hypot(self.omega, self.gamma)


@dataclass(frozen=True)
class GravcatGeometry:
    """Layout of the two double wells.

    Each well pair sits on its own axis; the axes are parallel.  ``d_prime``
    is the distance between two masses sitting in *different* relative
    minima, ``L`` the offset along the axes, and the same-minimum distance
    is d = sqrt(d_prime^2 - L^2).
    """

    G: float
    mass: float
    d_prime: float
    L: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.G) and self.G > 0.0):
            raise InvalidParameterError("G must be positive")
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise InvalidParameterError("mass must be positive")
        if not (math.isfinite(self.d_prime) and self.d_prime > 0.0):
            raise InvalidParameterError("d_prime must be positive")
        if not (math.isfinite(self.L) and self.L >= 0.0):
            raise InvalidParameterError("L must be nonnegative")
        if self.L >= self.d_prime:
            raise DegenerateGeometryError(
                f"axis offset L={self.L:g} must be smaller than d_prime={self.d_prime:g}"
            )


def coupling_from_geometry(geom: GravcatGeometry) -> float:
    """Gravitational coupling gamma = (G m^2 / 2)(1/d - 1/d_prime)."""
    d = math.sqrt(geom.d_prime**2 - geom.L**2)
    return 0.5 * geom.G * geom.mass**2 * (1.0 / d - 1.0 / geom.d_prime)


def build_hamiltonian(params: GravcatParams) -> np.ndarray:
    """4x4 Hamiltonian: (omega/2)(I(x)sz + sz(x)I) - gamma sx(x)sx."""
    splitting = 0.5 * params.omega * (tensor(PAULI_I, PAULI_Z) + tensor(PAULI_Z, PAULI_I))
    exchange = params.gamma * tensor(PAULI_X, PAULI_X)
    return splitting - exchange


@dataclass(frozen=True)
class ThermalClosedForm:
    """Nonzero entries of the thermal state, plus its scales.

    The state is diag(alpha_minus, beta, beta, alpha_plus) with kappa on the
    outer anti-diagonal corners and eta between the two middle basis states.
    ``partition_function`` is 2[cosh(theta/T) + cosh(gamma/T)]; it overflows
    to inf below T ~ theta/709, but the entries themselves are evaluated in
    shifted exponential form and stay finite for any valid temperature.
    """

    alpha_minus: float
    alpha_plus: float
    beta: float
    kappa: float
    eta: float
    partition_function: float
    theta: float


def thermal_closed_form(params: GravcatParams) -> ThermalClosedForm:
    """Closed-form thermal-state entries, evaluated overflow-safely.

    All cosh/sinh ratios are computed with the dominant exponential
    exp(theta/T) factored out, so only exp of non-positive arguments ever
    appears; a naive cosh evaluation would overflow near T ~ theta/700.
    """
    theta = params.theta
    x = theta / params.temperature
    y = params.gamma / params.temperature
    ex2 = math.exp(-2.0 * x)            # exp(-2 theta/T)
    exy = math.exp(-(x - y))            # exp(-(theta - gamma)/T)
    ey2 = math.exp(-2.0 * y)            # exp(-2 gamma/T)
    one_m_ex2 = -math.expm1(-2.0 * x)   # 1 - ex2 without cancellation
    one_m_ey2 = -math.expm1(-2.0 * y)
    z_shifted = (1.0 + ex2) + exy * (1.0 + ey2)   # Z * exp(-theta/T)
    # omega/theta and gamma/theta; both -> 0 in the fully degenerate
    # omega = gamma = 0 limit, where the state is exactly I/4
    rw = params.omega / theta if theta > 0.0 else 0.0
    rg = params.gamma / theta if theta > 0.0 else 0.0
    # grouped so that no difference of near-equal terms appears: at gamma = 0
    # (rw = 1) the naive (1+ex2) - rw (1-ex2) rounds to zero once ex2 drops
    # below machine epsilon, wiping out the alpha_minus tail
    alpha_minus = ((1.0 - rw) + ex2 * (1.0 + rw)) / (2.0 * z_shifted)
    alpha_plus = ((1.0 + rw) + ex2 * (1.0 - rw)) / (2.0 * z_shifted)
    kappa = rg * one_m_ex2 / (2.0 * z_shifted)
    beta = exy * (1.0 + ey2) / (2.0 * z_shifted)
    eta = exy * one_m_ey2 / (2.0 * z_shifted)
    if x <= 700.0:
        partition = 2.0 * (math.cosh(x) + math.cosh(y))
    else:
        partition = math.inf
    return ThermalClosedForm(
        alpha_minus=alpha_minus,
        alpha_plus=alpha_plus,
        beta=beta,
        kappa=kappa,
        eta=eta,
        partition_function=partition,
        theta=theta,
    )


def assemble_thermal_state(cf: ThermalClosedForm) -> DensityMatrix:
    """Build and validate the 4x4 thermal state from its closed-form entries."""
    m = np.array(
        [
            [cf.alpha_minus, 0.0, 0.0, cf.kappa],
            [0.0, cf.beta, cf.eta, 0.0],
            [0.0, cf.eta, cf.beta, 0.0],
            [cf.kappa, 0.0, 0.0, cf.alpha_plus],
        ],
        dtype=complex,
    )
    return DensityMatrix.from_array(m, check_psd=True)


def gibbs_numeric(hamiltonian, temperature: float) -> DensityMatrix:
    """Thermal state exp(-H/T)/Z via the spectral decomposition.

    The spectrum is shifted by its ground energy before exponentiating, so
    the computation is overflow-safe at any valid temperature.
    """
    if not (math.isfinite(temperature) and temperature >= MIN_TEMPERATURE):
        raise InvalidParameterError(
            f"temperature must be positive (minimum {MIN_TEMPERATURE:g} in natural units)"
        )
    h = require_hermitian(hamiltonian)
    ground = float(eigh(h).eigenvalues[-1])  # eigenvalues are descending
    shifted = -(h - ground * np.eye(h.shape[0], dtype=complex)) / temperature
    boltzmann = matrix_function(shifted, math.exp)
    rho = boltzmann / float(np.trace(boltzmann).real)
    return DensityMatrix(0.5 * (rho + rho.conj().T), validated=True)
