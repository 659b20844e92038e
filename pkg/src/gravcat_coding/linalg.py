"""Dense complex Hermitian mini-kernel for the 2x2 / 4x4 problems in this package.

Hermitian matrices are plain complex numpy arrays.  The eigensolver is a
cyclic Jacobi iteration with complex plane rotations: dependency-free,
deterministic for identical input bits, and accurate to machine precision
at these sizes.  Everything downstream (entropies, Gibbs operators, state
oracles) is built on `eigh`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-8        # asymmetry beyond this is an error
TRACE_TOL = 1e-10
EIG_CLAMP_FLOOR = -1e-10    # eigenvalues in [floor, 0) are silent rounding noise
EIG_ERROR_FLOOR = -1e-8     # below this the state is genuinely invalid

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class NotHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NonFiniteResultError(ArithmeticError):
    """A scalar function overflowed or produced a non-finite value on the spectrum."""


class InvalidStateError(ValueError):
    """Matrix violates the density-matrix contract (trace, positivity, or shape)."""


class NumericalNoiseWarning(UserWarning):
    """An eigenvalue noticeably below zero was clamped; treat results with care."""


def require_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``m`` as a complex array, raising ``NotHermitianError`` if it is
    not square and Hermitian within ``tol`` (absolute, element-wise)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {a.shape}")
    dev = float(np.abs(a - a.conj().T).max()) if a.size else 0.0
    if not dev <= tol:  # also catches NaN
        raise NotHermitianError(
            f"matrix deviates from Hermitian symmetry by {dev:.3e} (tolerance {tol:.0e})"
        )
    return a


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in descending order, eigenvectors as matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


_JACOBI_MAX_SWEEPS = 100
_JACOBI_OFF_TOL = 1e-14


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((np.abs(off) ** 2).sum()))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """One Jacobi rotation zeroing a[p, q] (and its mirror) in place."""
    apq = complex(a[p, q])
    r = abs(apq)
    if r == 0.0:
        return
    # the pivot phase comes from atan2, not apq/r: dividing by a subnormal
    # |apq| overflows inside numpy's complex division
    arg = math.atan2(apq.imag, apq.real)
    conj_phase = complex(math.cos(arg), -math.sin(arg))
    ang = 0.5 * math.atan2(2.0 * r, (a[p, p] - a[q, q]).real)
    c, s = math.cos(ang), math.sin(ang)
    # unitary on the (p, q) plane: a phase factoring the pivot real, then a
    # real rotation killing it
    u = np.array([[c, -s], [s * conj_phase, c * conj_phase]], dtype=complex)
    a[:, [p, q]] = a[:, [p, q]] @ u
    a[[p, q], :] = u.conj().T @ a[[p, q], :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, [p, q]] = v[:, [p, q]] @ u


def eigh(m) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Sweeps run until the off-diagonal Frobenius norm drops below 1e-14
    (scaled by the input norm, since an absolute 1e-14 is unreachable in
    double precision once ``||m||`` grows past ~1e2) or 100 sweeps pass.
    Each off-diagonal norm decreases monotonically, so termination is
    guaranteed either way.
    """
    a = require_hermitian(m).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    tol = _JACOBI_OFF_TOL * max(1.0, float(np.sqrt((np.abs(a) ** 2).sum())))
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    return Spectrum(vals[order], v[:, order])


def matrix_function(m, f) -> np.ndarray:
    """Apply the scalar function ``f`` to a Hermitian matrix through its spectrum.

    Returns V diag(f(lambda)) V^dagger, re-symmetrized.  Raises
    ``NonFiniteResultError`` if ``f`` overflows or yields a non-finite value
    on any eigenvalue.
    """
    spec = eigh(m)
    fvals = np.empty_like(spec.eigenvalues)
    for i, lam in enumerate(spec.eigenvalues):
        try:
            fvals[i] = f(float(lam))
        except (OverflowError, ValueError) as exc:
            raise NonFiniteResultError(f"f({lam!r}) did not evaluate to a finite value") from exc
    if not np.isfinite(fvals).all():
        raise NonFiniteResultError("scalar function produced overflow or NaN on the spectrum")
    out = (spec.eigenvectors * fvals) @ spec.eigenvectors.conj().T
    return 0.5 * (out + out.conj().T)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A quantum state: Hermitian, unit trace, positive semidefinite up to noise.

    ``validated`` records whether the invariants were actually checked;
    internal constructions that guarantee them mathematically set it directly.
    """

    matrix: np.ndarray
    validated: bool = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_array(cls, arr, *, check_psd: bool = True) -> "DensityMatrix":
        a = require_hermitian(arr)
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace must be 1, got {tr:.12g}")
        if check_psd:
            low = float(eigh(a).eigenvalues[-1])
            if low < EIG_CLAMP_FLOOR:
                raise InvalidStateError(f"negative eigenvalue {low:.3e} violates positivity")
        return cls(0.5 * (a + a.conj().T), validated=True)


def as_density(rho, *, check_psd: bool = True) -> DensityMatrix:
    """Coerce an array or DensityMatrix to a validated DensityMatrix."""
    if isinstance(rho, DensityMatrix):
        if rho.validated:
            return rho
        return DensityMatrix.from_array(rho.matrix, check_psd=check_psd)
    return DensityMatrix.from_array(rho, check_psd=check_psd)


def entropy_bits(eigenvalues) -> float:
    """Shannon entropy in bits of a spectrum, with the noise-clamping policy.

    Values in [-1e-10, 0) are treated as exact zeros (0 log 0 == 0).  Values
    in [-1e-8, -1e-10) are clamped too but flagged with
    ``NumericalNoiseWarning``.  Anything below -1e-8 raises
    ``InvalidStateError``.
    """
    total = 0.0
    for lam in np.asarray(eigenvalues, dtype=float):
        lam = float(lam)
        if lam < EIG_ERROR_FLOOR:
            raise InvalidStateError(f"eigenvalue {lam:.6e} is below the {EIG_ERROR_FLOOR:.0e} floor")
        if lam <= 0.0:
            if lam < EIG_CLAMP_FLOOR:
                warnings.warn(
                    f"clamping noisy eigenvalue {lam:.3e} to zero",
                    NumericalNoiseWarning,
                    stacklevel=2,
                )
            continue
        total -= lam * math.log2(lam)
    return max(total, 0.0)


def von_neumann_entropy(rho) -> float:
    """S(rho) = -tr(rho log2 rho), in bits."""
    dm = as_density(rho, check_psd=False)  # positivity is policed by entropy_bits
    return entropy_bits(eigh(dm.matrix).eigenvalues)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the slow (left) index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_first(rho) -> DensityMatrix:
    """Trace out the first qubit of a two-qubit state."""
    dm = as_density(rho, check_psd=False)
    if dm.dim != 4:
        raise InvalidStateError(f"expected a 4x4 two-qubit state, got dim {dm.dim}")
    r = dm.matrix.reshape(2, 2, 2, 2)
    return DensityMatrix(np.einsum("abac->bc", r), validated=True)
