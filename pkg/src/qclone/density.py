"""Density matrices, partial traces and single-qubit Bloch coordinates."""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .errors import DimensionError, QCloneError
from .qcore import ATOL, as_state, n_qubits_for

PSD_FLOOR = -1e-10
PRODUCT_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class InvalidDensityError(QCloneError, ValueError):
    pass


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    @property
    def length(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


def check_density(rho, atol: float = ATOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return a complex copy."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got {rho.shape}")
    n_qubits_for(rho.shape[0])
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise InvalidDensityError("matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > atol:
        raise InvalidDensityError(f"trace is {tr.real:.12g}, expected 1")
    if np.min(np.linalg.eigvalsh(rho)) < PSD_FLOOR:
        raise InvalidDensityError("matrix has a negative eigenvalue")
    return rho


def density_from_state(psi) -> np.ndarray:
    v = as_state(psi)
    return np.outer(v, v.conj())


def partial_trace(rho, traced: Iterable[int]) -> np.ndarray:
    """Trace out the qubits in ``traced``.

    The remaining qubits keep their relative order: the lowest surviving
    index becomes the new qubit 0.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got {rho.shape}")
    n = n_qubits_for(rho.shape[0])
    traced = sorted(set(traced))
    if not traced:
        raise DimensionError("nothing to trace")
    if traced[0] < 0 or traced[-1] >= n:
        raise DimensionError(f"traced qubits {traced} out of range for {n} qubits")
    if len(traced) == n:
        raise DimensionError("cannot trace every qubit")
    keep = [q for q in range(n) if q not in traced]
    # reshape axis a <-> qubit n-1-a (row-major, MSB first)
    t = rho.reshape([2] * (2 * n))
    row = [n - 1 - q for q in range(n)]  # axis of qubit q among row indices
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    in_row = [""] * n
    in_col = [""] * n
    for q in range(n):
        in_row[row[q]] = letters[q]
        in_col[row[q]] = letters[q] if q in traced else letters[n + q]
    out_row = "".join(letters[q] for q in reversed(keep))
    out_col = "".join(letters[n + q] for q in reversed(keep))
    reduced = np.einsum(f"{''.join(in_row)}{''.join(in_col)}->{out_row}{out_col}", t)
    d = 2 ** len(keep)
    return reduced.reshape(d, d)


def reduced_qubit(rho, qubit: int) -> np.ndarray:
    """Single-qubit marginal of ``rho`` on ``qubit``."""
    n = n_qubits_for(np.shape(rho)[0])
    if n == 1:
        return np.asarray(rho, dtype=complex)
    return partial_trace(rho, [q for q in range(n) if q != qubit])


def bloch_coords(rho) -> BlochVector:
    """(X, Y, Z) of a qubit with rho = 1/2 [[1+Z, X-iY], [X+iY, 1-Z]]."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DimensionError(f"Bloch coordinates need a 2x2 matrix, got {rho.shape}")
    lower = rho[1, 0]
    return BlochVector(float(2 * lower.real), float(2 * lower.imag), float((rho[0, 0] - rho[1, 1]).real))


def density_from_bloch(v) -> np.ndarray:
    x, y, z = v
    return 0.5 * (np.eye(2) + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def fidelity_pure(rho, psi) -> float:
    """|<psi| rho |psi>|: probability that rho passes a test for being psi."""
    rho = np.asarray(rho, dtype=complex)
    v = as_state(psi)
    if rho.shape != (v.size, v.size):
        raise DimensionError(f"rho {rho.shape} and psi of length {v.size} disagree")
    return float(abs(v.conj() @ rho @ v))


def product_defect(psi) -> complex:
    """x00*x11 - x01*x10 for a two-qubit state (MSB bit first in the subscripts)."""
    v = np.asarray(psi, dtype=complex)
    if v.shape != (4,):
        raise DimensionError("the factorization test is implemented for two qubits only")
    return complex(v[0] * v[3] - v[1] * v[2])


def is_product_2q(psi, tol: float = PRODUCT_TOL) -> bool:
    """True when the two amplitude pairs of each MSB value differ by a factor only."""
    return abs(product_defect(psi)) <= tol


def fidelity_from_scaling(s: float) -> float:
    """Fidelity of an isotropically shrunk Bloch vector with its pure original."""
    return 0.5 * (1.0 + s)
