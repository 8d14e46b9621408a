import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qclone import machines as mc
from qclone.dsl import Script, format_circuit, parse_circuit, parse_complex
from qclone.errors import ParseError
from qclone.qcore import Circuit, GateKind, GateSpec

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.qc"))


class TestComplexLiterals:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("1", 1),
            ("-0.5", -0.5),
            ("2i", 2j),
            ("-i", -1j),
            ("i", 1j),
            ("0.6+0.8i", 0.6 + 0.8j),
            ("0.6-0.8i", 0.6 - 0.8j),
            ("1e-3-2E2i", 1e-3 - 200j),
            (" 0.5 + i ", 0.5 + 1j),
        ],
    )
    def test_parse(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "abc", "1+", "1..2", "i2", "1+2j"])
    def test_reject(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)


class TestParse:
    def test_single_not(self):
        s = parse_circuit("qubits 1\nnot 0")
        assert s.circuit == Circuit(1, [GateSpec(GateKind.NOT, 0)])
        assert np.array_equal(s.initial, [1, 0]) and not s.explicit_state

    def test_involution(self):
        s = parse_circuit("qubits 2\ncnot 1 0\ncnot 1 0")
        assert np.array_equal(s.circuit.unitary(), np.eye(4))

    def test_gn_script_matches_composite(self):
        s = parse_circuit((Path(__file__).parent / "corpus" / "06_gn.qc").read_text())
        a_op, b_op, c_op, d_op = mc.gn_operators(mc.GNParams(0.7, 0.3))
        expect = d_op @ b_op @ c_op @ b_op @ a_op
        assert np.allclose(s.circuit.unitary(), expect, atol=1e-15)
        assert [g.label for g in s.circuit.gates] == ["A", "B", "C", "B", "D"]

    def test_state_renormalized_within_input_tolerance(self):
        s = parse_circuit("qubits 1\nstate 0.70710678, 0.70710678")
        assert abs(np.linalg.norm(s.initial) - 1) < 1e-15

    def test_index_order_for_cnot(self):
        g = parse_circuit("qubits 2\ncnot 1 0").circuit.gates[0]
        assert (g.control, g.target) == (1, 0)

    def test_unconditional_rotation(self):
        g = parse_circuit("qubits 2\ncrot 1 theta=0.7").circuit.gates[0]
        assert g.control is None and g.target == 1 and g.angle == 0.7

    def test_u1q_nearly_unitary_projected(self):
        s = parse_circuit("qubits 1\nu1q 0 [[0.70710678, 0.70710678], [0.70710678, -0.70710678]]")
        m = np.array(s.circuit.gates[0].matrix2)
        assert np.allclose(m.conj().T @ m, np.eye(2), atol=1e-14)

    @pytest.mark.parametrize(
        "source,line,column,fragment",
        [
            ("not 0", 1, 1, "missing 'qubits"),
            ("qubits 2\nfoo 0", 2, 1, "unknown gate"),
            ("qubits 2\nnot 2", 2, 1, "out of range"),
            ("qubits 2\ncnot 0 x", 2, 8, "qubit index"),
            ("qubits 1\nstate 1, 1", 2, 7, "norm 1.41421356237"),
            ("qubits 1\nu1q 0 [[1, 1], [0, 1]]", 2, 7, "not unitary"),
            ("qubits 2\n  cnot 0 1", 2, 3, "control above"),
            ("qubits 2\ncrot 0 1", 2, 1, "theta="),
            ("qubits 2\nstate 1, 0", 2, 7, "4 amplitudes"),
            ("qubits 9", 1, 8, "qubits must be"),
            ("qubits 1\nqubits 1", 2, 1, "twice"),
            ("qubits 1\nnot 0 label=a/b", 2, 7, "bad label"),
            ("qubits 1\ncrot 0 theta=x", 2, 8, "bad angle"),
        ],
    )
    def test_errors_carry_position(self, source, line, column, fragment):
        with pytest.raises(ParseError) as info:
            parse_circuit(source)
        assert (info.value.line, info.value.column) == (line, column)
        assert fragment in str(info.value)
        assert str(info.value).startswith(f"line {line}, column {column}:")


class TestFixedPoint:
    def test_corpus_size(self):
        assert len(CORPUS) == 20

    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
    def test_parse_print_parse(self, path):
        first = parse_circuit(path.read_text())
        text = format_circuit(first)
        second = parse_circuit(text)
        assert second == first
        assert format_circuit(second) == text

    def test_plain_circuit_formats(self):
        c = Circuit(1, [GateSpec(GateKind.NOT, 0)])
        assert format_circuit(c) == "qubits 1\nnot 0\n"


@st.composite
def random_scripts(draw):
    n = draw(st.integers(1, 4))
    gates = []
    for _ in range(draw(st.integers(0, 6))):
        kind = draw(st.sampled_from(list(GateKind)))
        t = draw(st.integers(0, n - 1))
        angle = draw(st.floats(-10, 10, allow_nan=False))
        if kind is GateKind.NOT:
            gates.append(GateSpec(kind, t))
        elif kind is GateKind.U1Q:
            c, s = math.cos(angle), math.sin(angle)
            gates.append(GateSpec(kind, t, matrix2=[[c, -s * 1j], [-s * 1j, c]]))
        elif kind is GateKind.CROT and n == 1:
            gates.append(GateSpec(kind, t, angle=angle))
        elif n > 1:
            other = draw(st.integers(0, n - 1).filter(lambda q: q != t))
            hi, lo = max(t, other), min(t, other)
            if kind in (GateKind.CNOT, GateKind.CNOT_BAR):
                gates.append(GateSpec(kind, lo, hi))
            elif kind in (GateKind.CNOT_R, GateKind.CNOT_R_BAR):
                gates.append(GateSpec(kind, hi, lo))
            elif kind is GateKind.SWAP:
                gates.append(GateSpec(kind, t, other))
            else:
                gates.append(GateSpec(kind, t, other, angle=angle))
    return Script(Circuit(n, gates), np.eye(2**n, dtype=complex)[0], False)


@settings(max_examples=100, deadline=None)
@given(random_scripts())
def test_random_scripts_fixed_point(script):
    text = format_circuit(script)
    assert parse_circuit(text) == script
