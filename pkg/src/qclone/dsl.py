"""Line-oriented circuit scripts.

::

    # comment
    qubits 2
    state 0.6, 0.8i, 0, 0        # optional, defaults to |0...0>
    crot 1 theta=0.7 label=A     # unconditional rotation of qubit 1
    cnotr 0 1                    # control 0, target 1
    u1q 0 [[0, 1], [1, 0]]

Gate lines: ``not q``, ``swap q0 q1``, ``cnot c t``, ``cnotbar c t``,
``cnotr c t``, ``cnotrbar c t``, ``crot [c] t theta=<rad>``,
``crotbar c t theta=<rad>``, ``u1q t [[..],[..]]``; any gate accepts a
trailing ``label=<name>``.  Complex literals are ``re``, ``imi`` or
``re+imi``/``re-imi``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGateError, ParseError
from .qcore import ATOL, Circuit, GateKind, GateSpec, MAX_QUBITS, basis_state, check_unitary, nearest_unitary

# typed literals (8-digit decimals) are accepted and then snapped exactly
INPUT_TOL = 1e-6

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)i$")
_CPLX_RE = re.compile(rf"^(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)i)?$")
_LABEL_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")

_TWO_INDEX = {
    "swap": GateKind.SWAP,
    "cnot": GateKind.CNOT,
    "cnotbar": GateKind.CNOT_BAR,
    "cnotr": GateKind.CNOT_R,
    "cnotrbar": GateKind.CNOT_R_BAR,
}


@dataclass(frozen=True)
class Script:
    circuit: Circuit
    initial: np.ndarray
    explicit_state: bool = False

    def __eq__(self, other):
        if not isinstance(other, Script):
            return NotImplemented
        return (
            self.circuit == other.circuit
            and self.explicit_state == other.explicit_state
            and np.array_equal(self.initial, other.initial)
        )

    __hash__ = None  # type: ignore[assignment]


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``imi`` or ``re+imi``; raises ValueError."""
    t = "".join(text.split())
    m = _IMAG_RE.match(t)
    if m:
        im = m.group("im")
        return complex(0, float(im + "1" if im in ("", "+", "-") else im))
    m = _CPLX_RE.match(t)
    if not m:
        raise ValueError(f"bad complex literal {text!r}")
    im = m.group("im")
    imag = 0.0 if im is None else float(im + "1" if im in ("+", "-") else im)
    return complex(float(m.group("re")), imag)


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _index(tok: tuple[str, int], lineno: int) -> int:
    text, col = tok
    if not re.fullmatch(r"\d+", text):
        raise ParseError(f"expected a qubit index, got {text!r}", lineno, col)
    return int(text)


def _parse_matrix(text: str, lineno: int, col: int) -> np.ndarray:
    body = "".join(text.split())
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ParseError("u1q matrix must look like [[a,b],[c,d]]", lineno, col)
    rows = body[2:-2].split("],[")
    try:
        m = np.array([[parse_complex(v) for v in r.split(",")] for r in rows], dtype=complex)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None
    if m.shape != (2, 2):
        raise ParseError(f"u1q matrix must be 2x2, got shape {m.shape}", lineno, col)
    return m


def _parse_gate(line: str, lineno: int, n_qubits: int) -> GateSpec:
    toks = _tokens(line)
    word = toks[0][0].lower()
    label = None
    if toks[-1][0].startswith("label="):
        text, col = toks.pop()
        label = text[len("label="):]
        if not _LABEL_RE.match(label):
            raise ParseError(f"bad label {label!r}", lineno, col)
    args = toks[1:]

    def want(k: int) -> None:
        if len(args) != k:
            raise ParseError(f"{word} takes {k} argument(s), got {len(args)}", lineno, toks[0][1])

    try:
        if word == "not":
            want(1)
            spec = GateSpec(GateKind.NOT, _index(args[0], lineno), label=label)
        elif word in _TWO_INDEX:
            want(2)
            a, b = _index(args[0], lineno), _index(args[1], lineno)
            if word == "swap":
                spec = GateSpec(GateKind.SWAP, a, b, label=label)
            else:
                spec = GateSpec(_TWO_INDEX[word], b, a, label=label)
        elif word in ("crot", "crotbar"):
            if not args or not args[-1][0].startswith("theta="):
                raise ParseError(f"{word} needs theta=<radians>", lineno, toks[0][1])
            text, col = args[-1]
            try:
                angle = float(text[len("theta="):])
            except ValueError:
                raise ParseError(f"bad angle {text!r}", lineno, col) from None
            idx = [_index(t, lineno) for t in args[:-1]]
            kind = GateKind.CROT if word == "crot" else GateKind.CROT_BAR
            if len(idx) == 2:
                spec = GateSpec(kind, idx[1], idx[0], angle=angle, label=label)
            elif len(idx) == 1 and kind is GateKind.CROT:
                spec = GateSpec(kind, idx[0], angle=angle, label=label)
            else:
                raise ParseError(f"{word} takes {'[c] t' if word == 'crot' else 'c t'} before theta", lineno, toks[0][1])
        elif word == "u1q":
            if len(args) < 2:
                raise ParseError("u1q needs a target and a 2x2 matrix", lineno, toks[0][1])
            target = _index(args[0], lineno)
            mcol = args[1][1]
            m = _parse_matrix(line[mcol - 1 : toks[-1][1] - 1 + len(toks[-1][0])], lineno, mcol)
            ok, resid = check_unitary(m)
            if not ok:
                if resid > INPUT_TOL:
                    raise ParseError(f"u1q matrix is not unitary (residual {resid:.3g})", lineno, mcol)
                m = nearest_unitary(m)
            spec = GateSpec(GateKind.U1Q, target, matrix2=m, label=label)
        else:
            raise ParseError(f"unknown gate {word!r}", lineno, toks[0][1])
        spec.check(n_qubits)
    except InvalidGateError as exc:
        raise ParseError(str(exc), lineno, toks[0][1]) from None
    return spec


def _parse_state(rest: str, lineno: int, col: int, n_qubits: int) -> np.ndarray:
    parts = rest.split(",")
    if len(parts) != 2**n_qubits:
        raise ParseError(f"state needs {2**n_qubits} amplitudes, got {len(parts)}", lineno, col)
    try:
        v = np.array([parse_complex(p) for p in parts], dtype=complex)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None
    norm = float(np.linalg.norm(v))
    if abs(norm - 1) > ATOL:
        if abs(norm - 1) > INPUT_TOL:
            raise ParseError(f"state is not normalized (norm {norm:.12g})", lineno, col)
        v = v / norm
    return v


def parse_circuit(source: str) -> Script:
    n_qubits = None
    state = None
    gates: list[GateSpec] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = _tokens(line)
        word, col = toks[0][0].lower(), toks[0][1]
        if word == "qubits":
            if n_qubits is not None:
                raise ParseError("qubits declared twice", lineno, col)
            if gates or state is not None:
                raise ParseError("qubits must come first", lineno, col)
            if len(toks) != 2 or not re.fullmatch(r"\d+", toks[1][0]):
                raise ParseError("expected 'qubits N'", lineno, col)
            n_qubits = int(toks[1][0])
            if not 1 <= n_qubits <= MAX_QUBITS:
                raise ParseError(f"qubits must be in [1, {MAX_QUBITS}]", lineno, toks[1][1])
            continue
        if n_qubits is None:
            raise ParseError("missing 'qubits N' declaration", lineno, col)
        if word == "state":
            if state is not None:
                raise ParseError("state declared twice", lineno, col)
            if len(toks) < 2:
                raise ParseError("state needs amplitudes", lineno, col)
            state = _parse_state(line[toks[1][1] - 1 :], lineno, toks[1][1], n_qubits)
            continue
        gates.append(_parse_gate(line, lineno, n_qubits))
    if n_qubits is None:
        raise ParseError("missing 'qubits N' declaration", 1, 1)
    initial = basis_state(0, n_qubits) if state is None else state
    return Script(Circuit(n_qubits, gates), initial, state is not None)


def _num(x: float) -> str:
    return repr(float(x))


def _cplx(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _num(z.real)
    im = _num(z.imag)
    return f"{_num(z.real)}{im if im.startswith('-') else '+' + im}i"


def format_gate(g: GateSpec) -> str:
    k = g.kind
    if k is GateKind.NOT:
        text = f"not {g.target}"
    elif k is GateKind.SWAP:
        text = f"swap {g.target} {g.control}"
    elif k is GateKind.U1Q:
        rows = ", ".join("[" + ", ".join(_cplx(v) for v in row) + "]" for row in g.matrix2)
        text = f"u1q {g.target} [{rows}]"
    elif k in (GateKind.CROT, GateKind.CROT_BAR):
        idx = f"{g.control} {g.target}" if g.control is not None else f"{g.target}"
        text = f"{k.value} {idx} theta={_num(g.angle)}"
    else:
        text = f"{k.value} {g.control} {g.target}"
    return text + (f" label={g.label}" if g.label else "")


def format_circuit(script: Script | Circuit) -> str:
    """Canonical script text; parsing it back gives an equal Script."""
    if isinstance(script, Circuit):
        script = Script(script, basis_state(0, script.n_qubits), False)
    lines = [f"qubits {script.circuit.n_qubits}"]
    if script.explicit_state:
        lines.append("state " + ", ".join(_cplx(v) for v in script.initial))
    lines.extend(format_gate(g) for g in script.circuit.gates)
    return "\n".join(lines) + "\n"
