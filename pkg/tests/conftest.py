"""Shared strategies and state helpers for the test suite."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from gravcat_coding import GravcatParams

settings.register_profile(
    "gravcat",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gravcat")


def finite_floats(lo: float, hi: float):
    return st.floats(min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False)


@st.composite
def hermitian_matrices(draw, dim: int = 4, scale: float = 1.0):
    """Hermitian matrices with entries drawn in [-1, 1] and symmetrized."""
    n = dim * dim
    re = draw(st.lists(finite_floats(-1, 1), min_size=n, max_size=n))
    im = draw(st.lists(finite_floats(-1, 1), min_size=n, max_size=n))
    m = (np.array(re) + 1j * np.array(im)).reshape(dim, dim)
    return scale * 0.5 * (m + m.conj().T)


@st.composite
def density_matrices(draw, dim: int = 4):
    """Full-rank random density matrices (Ginibre plus a small ridge)."""
    n = dim * dim
    re = draw(st.lists(finite_floats(-1, 1), min_size=n, max_size=n))
    im = draw(st.lists(finite_floats(-1, 1), min_size=n, max_size=n))
    g = (np.array(re) + 1j * np.array(im)).reshape(dim, dim)
    gram = g @ g.conj().T + 1e-3 * np.eye(dim)
    return gram / np.trace(gram).real


@st.composite
def pure_states(draw, dim: int = 4):
    """Random pure-state projectors."""
    re = draw(st.lists(finite_floats(-1, 1), min_size=dim, max_size=dim))
    im = draw(st.lists(finite_floats(-1, 1), min_size=dim, max_size=dim))
    vec = np.array(re) + 1j * np.array(im)
    norm = float(np.linalg.norm(vec))
    assume(norm > 1e-3)
    vec = vec / norm
    return np.outer(vec, vec.conj())


@st.composite
def gravcat_params(draw, omega_lo: float = 0.05, t_lo: float = 0.05, t_hi: float = 10.0):
    return GravcatParams(
        omega=draw(finite_floats(omega_lo, 5.0)),
        gamma=draw(finite_floats(0.0, 5.0)),
        temperature=draw(finite_floats(t_lo, t_hi)),
    )


def bell_state() -> np.ndarray:
    """(|00> + |11>)/sqrt(2) as a projector."""
    vec = np.zeros(4, dtype=complex)
    vec[0] = vec[3] = 1.0 / math.sqrt(2.0)
    return np.outer(vec, vec.conj())


def basis_projector(index: int, dim: int = 4) -> np.ndarray:
    m = np.zeros((dim, dim), dtype=complex)
    m[index, index] = 1.0
    return m


def maximally_mixed(dim: int = 4) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def boltzmann_weights(omega: float, gamma: float, temperature: float) -> np.ndarray:
    """Thermal eigenvalues from the analytic level set {+-theta, +-gamma},
    computed independently of the package (shifted so nothing overflows)."""
    theta = math.hypot(omega, gamma)
    energies = np.array([-theta, -gamma, gamma, theta])
    weights = np.exp(-(energies - energies.min()) / temperature)
    weights = weights / weights.sum()
    return np.sort(weights)[::-1]
