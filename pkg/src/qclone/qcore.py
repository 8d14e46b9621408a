"""Dense state-vector algebra for small registers and the two-qubit gate catalog.

Basis convention: bit ``k`` of a basis index is the value of qubit ``k``, so
qubit 0 is the least significant bit.  For two qubits the basis order is
``00, 01, 10, 11`` written MSB first, which is the order used by every matrix
in the catalog.  Matrices act on column vectors; a circuit is read from left
(input) to right (output).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidGateError, NormalizationError

ATOL = 1e-12
MAX_QUBITS = 8
MAX_DIM = 2**MAX_QUBITS
# Diagrams draw one rail per basis state, so they stop one qubit earlier.
MAX_DIAGRAM_QUBITS = MAX_QUBITS - 1

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)


class GateKind(str, enum.Enum):
    NOT = "not"
    SWAP = "swap"
    CNOT = "cnot"
    CNOT_BAR = "cnotbar"
    CNOT_R = "cnotr"
    CNOT_R_BAR = "cnotrbar"
    U1Q = "u1q"
    CROT = "crot"
    CROT_BAR = "crotbar"


_CNOT_KINDS = {GateKind.CNOT, GateKind.CNOT_BAR, GateKind.CNOT_R, GateKind.CNOT_R_BAR}
_NEEDS_CONTROL = _CNOT_KINDS | {GateKind.SWAP, GateKind.CROT_BAR}
# value of the control qubit that triggers the gate
_TRIGGER = {
    GateKind.CNOT: 1,
    GateKind.CNOT_R: 1,
    GateKind.CROT: 1,
    GateKind.CNOT_BAR: 0,
    GateKind.CNOT_R_BAR: 0,
    GateKind.CROT_BAR: 0,
}


def _as_matrix2(m) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise InvalidGateError(f"u1q needs a 2x2 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidGateError("u1q matrix has non-finite entries")
    return tuple(tuple(complex(v) for v in row) for row in arr)  # type: ignore[return-value]


@dataclass(frozen=True)
class GateSpec:
    """One gate of a circuit.

    ``control`` doubles as the second qubit of a SWAP.  CROT without a control
    is an unconditional rotation of the target; with a control it fires when
    the control is 1 (CROT_BAR: when it is 0).  CNOT and CNOT_BAR keep the
    control on the more significant qubit, the ``_R`` variants on the less
    significant one, mirroring the two-qubit catalog.
    """

    kind: GateKind
    target: int
    control: int | None = None
    angle: float | None = None
    matrix2: tuple | None = field(default=None)
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        kind = self.kind
        if self.target < 0 or (self.control is not None and self.control < 0):
            raise InvalidGateError("qubit indices must be non-negative")
        if kind in _NEEDS_CONTROL and self.control is None:
            raise InvalidGateError(f"{kind.value} needs two qubit indices")
        if kind in (GateKind.NOT, GateKind.U1Q) and self.control is not None:
            raise InvalidGateError(f"{kind.value} takes a single qubit")
        if self.control is not None and self.control == self.target:
            raise InvalidGateError("target and control must differ")
        if kind in (GateKind.CNOT, GateKind.CNOT_BAR) and self.control < self.target:
            raise InvalidGateError(
                f"{kind.value} keeps the control above the target; use {kind.value.replace('cnot', 'cnotr')}"
            )
        if kind in (GateKind.CNOT_R, GateKind.CNOT_R_BAR) and self.control > self.target:
            raise InvalidGateError(
                f"{kind.value} keeps the control below the target; use {kind.value.replace('cnotr', 'cnot')}"
            )
        if kind in (GateKind.CROT, GateKind.CROT_BAR):
            if self.angle is None or not np.isfinite(self.angle):
                raise InvalidGateError(f"{kind.value} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise InvalidGateError(f"{kind.value} takes no angle")
        if kind is GateKind.U1Q:
            if self.matrix2 is None:
                raise InvalidGateError("u1q needs a 2x2 matrix")
            object.__setattr__(self, "matrix2", _as_matrix2(self.matrix2))
        elif self.matrix2 is not None:
            raise InvalidGateError(f"{kind.value} takes no matrix")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,) if self.control is None else (self.target, self.control)

    def check(self, n_qubits: int) -> None:
        for q in self.qubits:
            if q >= n_qubits:
                raise InvalidGateError(
                    f"{self.kind.value}: qubit {q} out of range for {n_qubits} qubit(s)"
                )

    def local_matrix(self) -> np.ndarray:
        """The 2x2 block acting on the target, for U1Q and rotations."""
        if self.kind is GateKind.U1Q:
            return np.array(self.matrix2, dtype=complex)
        if self.kind in (GateKind.CROT, GateKind.CROT_BAR):
            return rotation(self.angle)
        raise InvalidGateError(f"{self.kind.value} has no 2x2 block")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list; gates[0] acts first."""

    n_qubits: int
    gates: tuple[GateSpec, ...] = ()

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise DimensionError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.check(self.n_qubits)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def matrices(self) -> list[np.ndarray]:
        return [build_gate_matrix(g, self.n_qubits) for g in self.gates]

    def unitary(self) -> np.ndarray:
        return compose(self.matrices()[::-1], dim=self.dim)

    def run(self, psi) -> list[np.ndarray]:
        """States before the first gate and after every gate."""
        states = [as_state(psi)]
        if states[0].size != self.dim:
            raise DimensionError(f"state has {states[0].size} amplitudes, circuit needs {self.dim}")
        for m in self.matrices():
            states.append(apply(m, states[-1]))
        return states


def rotation(angle: float) -> np.ndarray:
    """Real rotation by ``angle/2``: cosine on the diagonal, +sine top-right."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, s], [-s, c]], dtype=complex)


def n_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two >= 2")
    return n


def as_state(psi, atol: float = ATOL) -> np.ndarray:
    """Validate a normalized amplitude vector and return it as complex."""
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1:
        raise DimensionError(f"state must be a vector, got shape {v.shape}")
    n_qubits_for(v.size)
    if v.size > MAX_DIM:
        raise DimensionError(f"state of dimension {v.size} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(v)):
        raise NormalizationError("state has non-finite amplitudes")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > atol:
        raise NormalizationError(f"state is not normalized (norm {norm:.12g})", norm)
    return v


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    v = np.zeros(2**n_qubits, dtype=complex)
    v[index] = 1.0
    return v


def bitstring(index: int, n_qubits: int) -> str:
    """MSB-first text label of a basis index."""
    return format(index, f"0{n_qubits}b")


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; the left operand owns the high-order bits."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise DimensionError("operands must both be vectors or both be matrices")
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise DimensionError(f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds {MAX_DIM}")
    return np.kron(a, b)


def build_gate_matrix(spec: GateSpec, n_qubits: int) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of ``spec`` on an ``n_qubits`` register."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise DimensionError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    spec.check(n_qubits)
    dim = 2**n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    t, c, kind = spec.target, spec.control, spec.kind
    tbit = 1 << t

    if kind is GateKind.NOT:
        for j in range(dim):
            m[j ^ tbit, j] = 1
    elif kind is GateKind.SWAP:
        for j in range(dim):
            bt, bc = (j >> t) & 1, (j >> c) & 1
            i = j & ~tbit & ~(1 << c) | (bc << t) | (bt << c)
            m[i, j] = 1
    elif kind in _CNOT_KINDS:
        fire = _TRIGGER[kind]
        for j in range(dim):
            m[j ^ tbit if (j >> c) & 1 == fire else j, j] = 1
    else:
        u = spec.local_matrix()
        ok, resid = check_unitary(u)
        if not ok:
            raise InvalidGateError(f"{kind.value} matrix is not unitary (residual {resid:.3g})")
        fire = _TRIGGER.get(kind) if c is not None else None
        for j in range(dim):
            if fire is not None and (j >> c) & 1 != fire:
                m[j, j] = 1
                continue
            b = (j >> t) & 1
            base = j & ~tbit
            m[base, j] = u[0, b]
            m[base | tbit, j] = u[1, b]
    return m


def apply(u, psi) -> np.ndarray:
    """``u @ psi`` with dimension and norm checks."""
    u = np.asarray(u, dtype=complex)
    v = as_state(psi)
    if u.shape != (v.size, v.size):
        raise DimensionError(f"matrix shape {u.shape} does not act on a {v.size}-vector")
    out = u @ v
    if abs(np.linalg.norm(out) - 1.0) > ATOL:
        raise NormalizationError("operator did not preserve the norm; is it unitary?")
    return out


def compose(matrices: Sequence, dim: int | None = None) -> np.ndarray:
    """Matrix product in written order: ``compose([D, B, A]) == D @ B @ A``.

    The rightmost factor acts first, so ``compose(ms) @ psi`` equals applying
    ``ms[-1]`` first and ``ms[0]`` last.
    """
    ms = [np.asarray(m, dtype=complex) for m in matrices]
    if not ms:
        if dim is None:
            raise DimensionError("empty product needs an explicit dimension")
        return np.eye(dim, dtype=complex)
    d = ms[0].shape[0]
    if dim is not None and d != dim:
        raise DimensionError(f"declared dimension {dim} but matrices are {d}x{d}")
    for m in ms:
        if m.shape != (d, d):
            raise DimensionError(f"mixed matrix shapes {ms[0].shape} and {m.shape}")
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def check_unitary(m) -> tuple[bool, float]:
    """Whether ``m`` is unitary within ATOL, and the Frobenius residual of M^dag M - I."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    resid = float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), "fro"))
    return resid <= ATOL, resid


def nearest_unitary(m) -> np.ndarray:
    """Polar projection of ``m`` onto the unitary group."""
    w, _, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    return w @ vh


def gate_label(spec: GateSpec) -> str:
    """Short display name used by diagrams."""
    if spec.label:
        return spec.label
    k = spec.kind
    if k is GateKind.NOT:
        return f"not {spec.target}"
    if k is GateKind.U1Q:
        return f"U{spec.target}"
    if k in (GateKind.CROT, GateKind.CROT_BAR):
        head = k.value if spec.control is not None else "rot"
        return f"{head}({spec.angle:.4g})"
    return f"{k.value} {spec.control} {spec.target}" if k is not GateKind.SWAP else f"swap {spec.target} {spec.control}"


def catalog() -> dict[str, GateSpec]:
    """The two-qubit elementary gates, in the order they are listed in the notes."""
    return {
        "not-lsb": GateSpec(GateKind.NOT, 0),
        "not-msb": GateSpec(GateKind.NOT, 1),
        "swap": GateSpec(GateKind.SWAP, 0, 1),
        "c-not": GateSpec(GateKind.CNOT, 0, 1),
        "c-not-bar": GateSpec(GateKind.CNOT_BAR, 0, 1),
        "c-not-R": GateSpec(GateKind.CNOT_R, 1, 0),
        "c-not-R-bar": GateSpec(GateKind.CNOT_R_BAR, 1, 0),
    }


def embed_single(u, target: int, n_qubits: int) -> np.ndarray:
    """Single-qubit matrix ``u`` on ``target`` via Kronecker products (MSB first)."""
    factors: Iterable = (u if q == target else I2 for q in reversed(range(n_qubits)))
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = tensor_product(out, f)
    return out
