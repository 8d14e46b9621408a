"""Griffiths-Niu and Buzek-Hillery quantum copying machines.

Party layout
------------
Griffiths-Niu: two qubits, Bob on qubit 0 (LSB), Eve on qubit 1 (MSB); the
input ``a|0> + b|1>`` enters on Bob's line and Eve's line starts at ``|0>``.

Buzek-Hillery: three qubits, Bob on qubit 0 (carries the input), Eve on
qubit 1, the ancilla on qubit 2.  The control state ``(alpha, beta, gamma,
delta)`` occupies qubits 2,1 so the input register is ``control (x) (a, b)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .density import (
    BlochVector,
    bloch_coords,
    density_from_bloch,
    density_from_state,
    fidelity_from_scaling,
    partial_trace,
)
from .errors import DomainError, NormalizationError
from .qcore import ATOL, Circuit, GateKind, GateSpec, apply, as_state, compose, tensor_product

GN_BOB, GN_EVE = 0, 1
BH_BOB, BH_EVE, BH_ANC = 0, 1, 2

SYM_ALPHA_MIN = 1 / math.sqrt(2)
SYM_ALPHA_MAX = math.sqrt(2 / 3)
# slack on interval endpoints for decimal literals such as 0.70710678
DOMAIN_SLACK = 1e-8


def input_qubit(a, b) -> np.ndarray:
    psi = np.array([a, b], dtype=complex)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1) > ATOL:
        raise NormalizationError(f"|a|^2 + |b|^2 must be 1 (norm {norm:.12g})", norm)
    return psi


# --------------------------------------------------------------------------
# Griffiths-Niu


class GNParams(NamedTuple):
    theta0: float
    theta1: float

    @property
    def c0(self) -> float:
        return math.cos(self.theta0 / 2)

    @property
    def s0(self) -> float:
        return math.sin(self.theta0 / 2)

    @property
    def c1(self) -> float:
        return math.cos(self.theta1 / 2)

    @property
    def s1(self) -> float:
        return math.sin(self.theta1 / 2)

    @property
    def angle_sum(self) -> float:
        return (self.theta0 + self.theta1) / 2

    @property
    def angle_diff(self) -> float:
        return (self.theta0 - self.theta1) / 2

    def sum_cs(self) -> tuple[float, float]:
        return math.cos(self.angle_sum), math.sin(self.angle_sum)

    def diff_cs(self) -> tuple[float, float]:
        return math.cos(self.angle_diff), math.sin(self.angle_diff)


def _msb_rotation(c: float, s: float) -> np.ndarray:
    return np.array(
        [[c, 0, s, 0], [0, c, 0, s], [-s, 0, c, 0], [0, -s, 0, c]], dtype=complex
    )


GN_B = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex)
GN_D = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def gn_operators(p: GNParams) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four stage matrices A, B, C, D (A acts first)."""
    p = GNParams(*p)
    return _msb_rotation(p.c0, p.s0), GN_B.copy(), _msb_rotation(p.c1, p.s1), GN_D.copy()


def gn_composite(p: GNParams) -> np.ndarray:
    """Closed form of D B C B A."""
    p = GNParams(*p)
    ca, sa = p.sum_cs()
    cb, sb = p.diff_cs()
    return np.array(
        [[ca, 0, sa, 0], [0, cb, 0, sb], [0, -sb, 0, cb], [-sa, 0, ca, 0]], dtype=complex
    )


def gn_circuit(p: GNParams, original: bool = False) -> Circuit:
    """Gate list of the modified machine; ``original`` appends the swap that undoes the fix."""
    p = GNParams(*p)
    gates = [
        GateSpec(GateKind.CROT, 1, angle=p.theta0, label="A"),
        GateSpec(GateKind.CNOT_R, 1, 0, label="B"),
        GateSpec(GateKind.CROT, 1, angle=p.theta1, label="C"),
        GateSpec(GateKind.CNOT_R, 1, 0, label="B"),
        GateSpec(GateKind.CNOT, 0, 1, label="D"),
    ]
    if original:
        gates.append(GateSpec(GateKind.SWAP, 0, 1, label="swap"))
    return Circuit(2, gates)


@dataclass(frozen=True)
class GNTrace:
    """States Psi_0..Psi_5 and the Bob/Eve marginals of stages 2..5."""

    psi: tuple[np.ndarray, ...]
    rho_bob: tuple[np.ndarray, ...]
    rho_eve: tuple[np.ndarray, ...]

    @property
    def psi_out(self) -> np.ndarray:
        return self.psi[-1]

    def stage_bob(self, k: int) -> np.ndarray:
        return self.rho_bob[k - 2]

    def stage_eve(self, k: int) -> np.ndarray:
        return self.rho_eve[k - 2]


def gn_run(p: GNParams, a: complex, b: complex) -> GNTrace:
    qubit = input_qubit(a, b)
    psi = [tensor_product([1, 0], qubit)]
    a_op, b_op, c_op, d_op = gn_operators(p)
    for op in (a_op, b_op, c_op, b_op, d_op):
        psi.append(apply(op, psi[-1]))
    rhos = [density_from_state(v) for v in psi[2:]]
    return GNTrace(
        psi=tuple(psi),
        rho_bob=tuple(partial_trace(r, [GN_EVE]) for r in rhos),
        rho_eve=tuple(partial_trace(r, [GN_BOB]) for r in rhos),
    )


class AffineBlochMap(NamedTuple):
    """Diagonal affine map: out_k = offset_k + scale_k * in_k."""

    scale: tuple[float, float, float]
    offset: tuple[float, float, float]

    def __call__(self, v) -> BlochVector:
        return BlochVector(*(o + s * c for s, o, c in zip(self.scale, self.offset, v)))


def gn_bloch_maps(p: GNParams) -> tuple[AffineBlochMap, AffineBlochMap]:
    """(Bob, Eve) maps from Alice's Bloch vector to each party's."""
    ca, sa = GNParams(*p).sum_cs()
    cb, sb = GNParams(*p).diff_cs()
    bob = AffineBlochMap(
        scale=(ca * cb + sa * sb, ca * cb - sa * sb, ca**2 - sb**2),
        offset=(0.0, 0.0, ca**2 - cb**2),
    )
    eve = AffineBlochMap(
        scale=(-(ca * sb + sa * cb), -ca * sb + sa * cb, ca**2 - cb**2),
        offset=(0.0, 0.0, ca**2 - sb**2),
    )
    return bob, eve


# --------------------------------------------------------------------------
# Buzek-Hillery


class ControlState(NamedTuple):
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    def vector(self) -> np.ndarray:
        return np.array(self, dtype=complex)

    def check(self) -> "ControlState":
        norm = float(np.linalg.norm(self.vector()))
        if abs(norm - 1) > ATOL:
            raise NormalizationError(f"control state is not normalized (norm {norm:.12g})", norm)
        return self


class ScalingFactors(NamedTuple):
    s_bob: float
    s_eve: float

    @property
    def fidelities(self) -> tuple[float, float]:
        return fidelity_from_scaling(self.s_bob), fidelity_from_scaling(self.s_eve)


BH_PERMUTATION = (0, 7, 3, 4, 5, 2, 6, 1)  # column j -> row BH_PERMUTATION[j]


def bh_unitary() -> np.ndarray:
    u = np.zeros((8, 8), dtype=complex)
    for j, i in enumerate(BH_PERMUTATION):
        u[i, j] = 1
    return u


def bh_circuit() -> Circuit:
    """Four c-nots: input onto Eve and ancilla, then both back onto the input."""
    return Circuit(
        3,
        [
            GateSpec(GateKind.CNOT_R, BH_EVE, BH_BOB),
            GateSpec(GateKind.CNOT_R, BH_ANC, BH_BOB),
            GateSpec(GateKind.CNOT, BH_BOB, BH_EVE),
            GateSpec(GateKind.CNOT, BH_BOB, BH_ANC),
        ],
    )


@dataclass(frozen=True)
class BHResult:
    psi_out: np.ndarray
    rho_bob: np.ndarray
    rho_eve: np.ndarray
    rho_anc: np.ndarray


def bh_input(c: ControlState, a, b) -> np.ndarray:
    return tensor_product(ControlState(*c).check().vector(), input_qubit(a, b))


def bh_run(c: ControlState, a, b) -> BHResult:
    psi = apply(bh_unitary(), bh_input(c, a, b))
    rho = density_from_state(psi)
    return BHResult(
        psi_out=psi,
        rho_bob=partial_trace(rho, [BH_EVE, BH_ANC]),
        rho_eve=partial_trace(rho, [BH_BOB, BH_ANC]),
        rho_anc=partial_trace(rho, [BH_BOB, BH_EVE]),
    )


def bh_scaling(c: ControlState) -> ScalingFactors:
    """S_B = 2 alpha delta, S_E = 2 alpha gamma (real control states)."""
    alpha, _, gamma, delta = (float(np.real(v)) for v in c)
    return ScalingFactors(2 * alpha * delta, 2 * alpha * gamma)


def _in_interval(name: str, value: float, lo: float, hi: float) -> float:
    if not math.isfinite(value) or value < lo - DOMAIN_SLACK or value > hi + DOMAIN_SLACK:
        raise DomainError(f"{name}={value!r} outside [{lo:.12g}, {hi:.12g}]")
    return float(min(max(value, lo), hi))


def bh_symmetric_params(alpha: float) -> tuple[ControlState, ScalingFactors]:
    """Isotropic cloner with free parameter alpha in [1/sqrt2, sqrt(2/3)]."""
    alpha = _in_interval("alpha", alpha, SYM_ALPHA_MIN, SYM_ALPHA_MAX)
    root = math.sqrt(max(0.0, 0.5 - 0.75 * alpha**2))
    gamma = alpha / 2 - root
    delta = alpha / 2 + root
    return ControlState(alpha, 0.0, gamma, delta), ScalingFactors(2 * alpha * delta, 2 * alpha * gamma)


def bh_equatorial_params(s_eve: float) -> tuple[ControlState, float]:
    """Optimal equatorial cloner giving Eve scaling ``s_eve``; returns (control, s_bob)."""
    s_eve = _in_interval("s_eve", s_eve, 0.0, 1.0)
    alpha = 1 / math.sqrt(2)
    gamma = s_eve / math.sqrt(2)
    delta = math.sqrt((1 - s_eve**2) / 2)
    return ControlState(alpha, 0.0, gamma, delta), 2 * alpha * delta


def equatorial_norm_identity(alpha: float) -> float:
    """S_B^2 + S_E^2 as a function of alpha, from normalization with beta = 0."""
    return -4 * (alpha**4 - alpha**2)


def equatorial_sbob(alpha: float, s_eve: float) -> float:
    """Bob's scaling for a beta = 0 control with the given alpha and Eve scaling."""
    gamma = s_eve / (2 * alpha)
    rest = 1 - alpha**2 - gamma**2
    return 2 * alpha * math.sqrt(rest) if rest > 0 else 0.0


def maximize_equatorial_sbob(s_eve: float) -> tuple[float, float]:
    """Golden-section search for the alpha that maximizes S_B at fixed S_E.

    Returns (alpha, s_bob).
    """
    s_eve = _in_interval("s_eve", s_eve, 0.0, 1.0)
    r = math.sqrt(max(0.0, 1 - s_eve**2))
    lo, hi = math.sqrt((1 - r) / 2), math.sqrt((1 + r) / 2)
    if hi - lo < 1e-12:
        return lo, equatorial_sbob(lo, s_eve)
    lo = max(lo, 1e-9)
    mid = (lo + hi) / 2
    res = optimize.minimize_scalar(
        lambda al: -equatorial_sbob(al, s_eve),
        bracket=(lo, mid, hi),
        method="golden",
        options={"xtol": 1e-12},
    )
    return float(res.x), equatorial_sbob(float(res.x), s_eve)


class SymmetricRow(NamedTuple):
    alpha: float
    s_bob: float
    s_eve: float
    fidelity_bob: float
    fidelity_eve: float


def sweep_symmetric(n_steps: int) -> list[SymmetricRow]:
    if n_steps < 2:
        raise DomainError("n_steps must be at least 2")
    rows = []
    for alpha in np.linspace(SYM_ALPHA_MIN, SYM_ALPHA_MAX, n_steps):
        _, s = bh_symmetric_params(float(alpha))
        rows.append(SymmetricRow(float(alpha), s.s_bob, s.s_eve, *s.fidelities))
    return rows


class EquatorialRow(NamedTuple):
    s_eve: float
    s_bob: float
    alpha: float


def sweep_equatorial(n_steps: int) -> list[EquatorialRow]:
    if n_steps < 2:
        raise DomainError("n_steps must be at least 2")
    rows = []
    for s_eve in np.linspace(0.0, 1.0, n_steps):
        c, s_bob = bh_equatorial_params(float(s_eve))
        rows.append(EquatorialRow(float(s_eve), s_bob, float(c.alpha)))
    return rows


def isotropy_ratios(c: ControlState, a, b) -> tuple[BlochVector, BlochVector]:
    """Per-axis ratios X_i/X, Y_i/Y, Z_i/Z for Bob and Eve."""
    res = bh_run(c, a, b)
    inp = bloch_coords(density_from_state(input_qubit(a, b)))
    out = []
    for rho in (res.rho_bob, res.rho_eve):
        v = bloch_coords(rho)
        out.append(BlochVector(*(vi / xi for vi, xi in zip(v, inp))))
    return out[0], out[1]


# --------------------------------------------------------------------------
# control-state synthesis


class SynthesisAngles(NamedTuple):
    theta1: float
    theta2: float
    theta3: float


def synth_control(angles: SynthesisAngles) -> ControlState:
    t1, t2, t3 = angles
    c1, s1 = math.cos(t1), math.sin(t1)
    return ControlState(c1 * math.cos(t2), c1 * math.sin(t2), s1 * math.cos(t3), s1 * math.sin(t3))


def synth_operators(angles: SynthesisAngles) -> tuple[np.ndarray, np.ndarray]:
    """U1 (rotation of the high ancilla bit) and U2 (conditional rotation of the low bit)."""
    t1, t2, t3 = angles
    c1, s1 = math.cos(t1), math.sin(t1)
    c2, s2 = math.cos(t2), math.sin(t2)
    c3, s3 = math.cos(t3), math.sin(t3)
    u1 = np.array(
        [[c1, 0, -s1, 0], [0, c1, 0, -s1], [s1, 0, c1, 0], [0, s1, 0, c1]], dtype=complex
    )
    u2 = np.array(
        [[c2, -s2, 0, 0], [s2, c2, 0, 0], [0, 0, c3, -s3], [0, 0, s3, c3]], dtype=complex
    )
    return u1, u2


def synth_state_by_matrices(angles: SynthesisAngles) -> np.ndarray:
    u1, u2 = synth_operators(angles)
    return compose([u2, u1]) @ np.array([1, 0, 0, 0], dtype=complex)


def solve_synthesis(c: ControlState) -> SynthesisAngles:
    """Angles reproducing a real control state (inverse of ``synth_control``)."""
    v = ControlState(*c).check().vector()
    if np.max(np.abs(v.imag)) > ATOL:
        raise DomainError("control state must be real for synthesis")
    alpha, beta, gamma, delta = (float(x) for x in v.real)
    theta1 = math.atan2(math.hypot(gamma, delta), math.hypot(alpha, beta))
    theta2 = math.atan2(beta, alpha) if math.hypot(alpha, beta) > 0 else 0.0
    theta3 = math.atan2(delta, gamma) if math.hypot(gamma, delta) > 0 else 0.0
    return SynthesisAngles(theta1, theta2, theta3)


def synthesis_circuit(angles: SynthesisAngles) -> Circuit:
    """Two-qubit preparation circuit for the control state; zero-angle gates are omitted.

    Rotations use the half-angle convention of :func:`qcore.rotation`, so a
    sign-flipped doubled angle reproduces the cos/-sin blocks of U1 and U2.
    """
    t1, t2, t3 = angles
    gates = []
    if t1 != 0:
        gates.append(GateSpec(GateKind.CROT, 1, angle=-2 * t1, label="theta1"))
    if t2 != 0:
        gates.append(GateSpec(GateKind.CROT_BAR, 0, 1, angle=-2 * t2, label="theta2"))
    if t3 != 0:
        gates.append(GateSpec(GateKind.CROT, 0, 1, angle=-2 * t3, label="theta3"))
    return Circuit(2, gates)


def bloch_pipeline(psi: np.ndarray, keep: int) -> BlochVector:
    """Bloch vector of qubit ``keep`` of a pure multi-qubit state."""
    v = as_state(psi)
    n = int(v.size).bit_length() - 1
    rho = density_from_state(v)
    return bloch_coords(partial_trace(rho, [q for q in range(n) if q != keep]))


def pure_qubit_from_bloch(v) -> np.ndarray:
    """Amplitudes (a, b) of the pure state with Bloch vector ``v`` (unit length)."""
    rho = density_from_bloch(v)
    w, vecs = np.linalg.eigh(rho)
    out = vecs[:, int(np.argmax(w))]
    # fix the global phase so that a is real and non-negative
    if abs(out[0]) > 1e-15:
        out = out * (abs(out[0]) / out[0])
    return out

