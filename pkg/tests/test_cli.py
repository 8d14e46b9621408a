import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qclone import machines as mc
from qclone.cli import main
from qclone.dsl import parse_circuit
from qclone.numfmt import fmt_complex, fmt_num

from golden_manifest import GOLDEN

CORPUS = Path(__file__).parent / "corpus"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report_values(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        key, sep, value = line.strip().partition(" = ")
        if sep:
            out[key] = value
    return out


def write_script(tmp_path, text, name="s.qc"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestSimulate:
    def test_not(self, capsys, tmp_path):
        code, out, _ = run(capsys, "simulate", write_script(tmp_path, "qubits 1\nnot 0\n"))
        assert code == 0
        assert out == "state,re,im\n0,0,0\n1,1,0\n\nqubit,x,y,z\n0,0,0,-1\n"

    def test_json_key_order(self, capsys, tmp_path):
        code, out, _ = run(capsys, "simulate", write_script(tmp_path, "qubits 1\nnot 0\n"), "--format", "json")
        doc = json.loads(out)
        assert list(doc) == ["n_qubits", "states", "re", "im", "bloch_x", "bloch_y", "bloch_z"]
        assert doc["re"] == [0, 1] and doc["bloch_z"] == [-1]

    def test_bh_symmetric_bob_equals_eve(self, capsys, tmp_path):
        c, _ = mc.bh_symmetric_params(math.sqrt(2 / 3))
        psi = mc.bh_input(c, 0.6, 0.48 + 0.64j)
        lines = "qubits 3\nstate " + ", ".join(fmt_complex(v, 17) for v in psi) + "\n"
        lines += "".join(
            f"{g.kind.value} {g.control} {g.target}\n" for g in mc.bh_circuit().gates
        )
        code, out, _ = run(capsys, "simulate", write_script(tmp_path, lines), "--format", "json")
        doc = json.loads(out)
        for axis in "xyz":
            assert doc[f"bloch_{axis}"][0] == doc[f"bloch_{axis}"][1]
        assert doc["bloch_z"][0] == pytest.approx(2 / 3 * (0.36 - 0.64), abs=1e-11)

    def test_gn_matches_library(self, capsys):
        code, out, _ = run(capsys, "simulate", CORPUS / "06_gn.qc", "--format", "json")
        doc = json.loads(out)
        psi5 = mc.gn_run(mc.GNParams(0.7, 0.3), 0.6, 0.8).psi_out
        assert doc["re"] == [float(fmt_num(v.real)) for v in psi5]
        assert doc["im"] == [float(fmt_num(v.imag)) for v in psi5]

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("qubits 1\n"))
        code, out, _ = run(capsys, "simulate", "-")
        assert code == 0 and out.startswith("state,re,im\n0,1,0\n")


class TestDiagram:
    @pytest.mark.parametrize("name", list(GOLDEN))
    @pytest.mark.parametrize("fmt,ext", [("ascii", "txt"), ("svg", "svg")])
    def test_golden(self, capsys, tmp_path, golden_dir, name, fmt, ext):
        _, opts = GOLDEN[name]
        flags = ["--msb-swaps"] * opts.get("msb_via_swaps", False) + ["--annotate"] * opts.get("annotate_entanglement", False)
        target = tmp_path / f"out.{ext}"
        code, out, _ = run(capsys, "diagram", golden_dir / f"{name}.qc", "--format", fmt, "-o", target, *flags)
        assert code == 0 and out == ""
        assert target.read_bytes() == (golden_dir / f"{name}.{ext}").read_bytes()

    def test_gn_simplify_removes_thin_edges(self, capsys):
        code, full, _ = run(capsys, "diagram", CORPUS / "06_gn.qc", "--format", "svg")
        code, simple, _ = run(capsys, "diagram", CORPUS / "06_gn.qc", "--format", "svg", "--simplify")
        thin = 'class="edge"'
        assert any('stroke-width="1"' in line for line in full.splitlines() if thin in line)
        assert not any('stroke-width="1"' in line for line in simple.splitlines() if thin in line)

    def test_annotate_three_qubits_rejected(self, capsys):
        code, out, err = run(capsys, "diagram", CORPUS / "08_bh.qc", "--annotate")
        assert code == 2 and out == "" and "two-qubit" in err

    def test_ascii_limit(self, capsys):
        code, out, err = run(capsys, "diagram", CORPUS / "20_five_qubits.qc")
        assert code == 2 and "16" in err


class TestGN:
    def test_report_matches_library(self, capsys):
        code, out, _ = run(capsys, "gn", "--theta0", 0.7, "--theta1", 0.3, "--a", 0.6, "--b", 0.8)
        assert code == 0
        tr = mc.gn_run(mc.GNParams(0.7, 0.3), 0.6, 0.8)
        vals = report_values(out)
        assert vals["Psi5"].split("]")[0] == "[" + ", ".join(fmt_complex(v) for v in tr.psi_out)
        assert "Psi1 = " in out and out.count("product") >= 2
        assert "bob_scale" in vals and "eve_offset" in vals
        for k in range(2, 6):
            assert f"rho_bob{k}" in vals and f"rho_eve{k}" in vals

    def test_entanglement_flags(self, capsys):
        _, out, _ = run(capsys, "gn", "--theta0", 0.7, "--theta1", 0.3, "--a", 0.6, "--b", 0.8)
        flags = [line.split()[-1] for line in out.splitlines() if line.startswith("Psi")]
        assert flags == ["product", "product", "entangled", "entangled", "entangled", "entangled"]

    def test_unnormalized(self, capsys):
        code, out, err = run(capsys, "gn", "--theta0", 0.7, "--theta1", 0.3, "--a", 1, "--b", 1)
        assert code == 2 and out == "" and "norm" in err


class TestBH:
    def test_sym_lower_end(self, capsys):
        code, out, _ = run(capsys, "bh", "sym", "alpha=0.70710678")
        v = report_values(out)
        assert code == 0 and (v["S_B"], v["S_E"], v["F_B"]) == ("1", "0", "1")

    def test_eq(self, capsys):
        code, out, _ = run(capsys, "bh", "eq", "se=0.6")
        v = report_values(out)
        assert (v["S_B"], v["F_B"], v["F_E"]) == ("0.8", "0.9", "0.8")

    def test_raw_trivial_control(self, capsys):
        code, out, _ = run(capsys, "bh", "raw", "1,0,0,0")
        assert code == 0 and report_values(out)["F_B_input"] == "1"

    def test_reduced_matrices_match_library(self, capsys):
        c, _ = mc.bh_symmetric_params(0.75)
        _, out, _ = run(capsys, "bh", "sym", "alpha=0.75", "--a", 0.6, "--b", "0.8i")
        res = mc.bh_run(c, 0.6, 0.8j)
        v = report_values(out)
        assert v["rho_anc"] == "[" + ", ".join(
            "[" + ", ".join(fmt_complex(x) for x in row) + "]" for row in res.rho_anc
        ) + "]"

    @pytest.mark.parametrize(
        "argv,fragment",
        [
            (["sym", "alpha=0.9"], "[0.707106781187, 0.816496580928]"),
            (["eq", "se=1.5"], "[0, 1]"),
            (["raw", "1,1,0,0"], "not normalized"),
        ],
    )
    def test_domain_errors(self, capsys, argv, fragment):
        code, out, err = run(capsys, "bh", *argv)
        assert code == 2 and out == "" and fragment in err

    @pytest.mark.parametrize("argv", [["sym", "beta=0.8"], ["raw", "1,0,0"], ["eq", "se="]])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, "bh", *argv)
        assert code == 1 and err


class TestSweep:
    def test_sym_rows_match_library(self, capsys):
        code, out, _ = run(capsys, "sweep", "bh-sym", "--steps", 50)
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["alpha", "s_bob", "s_eve", "f_bob", "f_eve"]
        for line, ref in zip(rows[1:], mc.sweep_symmetric(50), strict=True):
            assert line == [fmt_num(v) for v in ref]

    def test_sym_two_steps(self, capsys):
        _, out, _ = run(capsys, "sweep", "bh-sym", "--steps", 2)
        rows = [list(map(float, r)) for r in list(csv.reader(io.StringIO(out)))[1:]]
        assert rows[0][1:3] == [1, 0]
        assert rows[1][1:3] == pytest.approx([2 / 3, 2 / 3], abs=1e-12)

    def test_eq_circle(self, capsys):
        _, out, _ = run(capsys, "sweep", "bh-eq", "--steps", 21)
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["s_eve", "s_bob", "alpha"]
        for s_eve, s_bob, _ in rows[1:]:
            assert abs(float(s_bob) ** 2 + float(s_eve) ** 2 - 1) < 1e-10

    def test_files_deterministic(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            c, s = tmp_path / f"{k}.csv", tmp_path / f"{k}.svg"
            assert run(capsys, "sweep", "bh-sym", "--steps", 7, "--csv", c, "--svg", s)[0] == 0
            outs.append((c.read_bytes(), s.read_bytes()))
        assert outs[0] == outs[1]
        assert b"\r" not in outs[0][0] and outs[0][1].startswith(b"<?xml")

    def test_unwritable(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "bh-eq", "--csv", tmp_path / "missing" / "x.csv")
        assert code == 1 and "cannot write" in err

    def test_too_few_steps(self, capsys):
        assert run(capsys, "sweep", "bh-eq", "--steps", 1)[0] == 1


class TestSynth:
    def test_identity(self, capsys):
        code, out, _ = run(capsys, "synth", 1, 0, 0, 0)
        v = report_values(out)
        assert code == 0 and (v["theta1"], v["theta2"], v["theta3"], v["gates"]) == ("0", "0", "0", "0")
        assert "identity" in out

    @pytest.mark.parametrize(
        "components",
        [
            (math.sqrt(2 / 3), 0, 1 / math.sqrt(6), 1 / math.sqrt(6)),
            (0.6, 0.3, 0.5, 0.5477226),
        ],
    )
    def test_roundtrip(self, capsys, tmp_path, components):
        script_path = tmp_path / "synth.qc"
        code, out, _ = run(capsys, "synth", *(repr(c) for c in components), "--script-out", script_path)
        assert code == 0
        script = parse_circuit(script_path.read_text())
        target = np.array(components) / np.linalg.norm(components)
        assert np.max(abs(script.circuit.run(script.initial)[-1] - target)) <= 1e-10

    def test_beta_zero_note(self, capsys):
        c, _ = mc.bh_symmetric_params(math.sqrt(2 / 3))
        _, out, _ = run(capsys, "synth", *(repr(float(x)) for x in c))
        assert "theta2 gate is absent" in out and report_values(out)["gates"] == "2"

    def test_diagram(self, capsys, tmp_path):
        target = tmp_path / "d.svg"
        code, _, _ = run(capsys, "synth", 0.6, 0.3, 0.5, 0.5477226, "--diagram", target, "--diagram-format", "svg")
        assert code == 0 and target.read_text().count('class="gate"') == 3

    @pytest.mark.parametrize("argv", [["1i", "0", "0", "0"], ["1", "1", "0", "0"]])
    def test_domain(self, capsys, argv):
        code, out, _ = run(capsys, "synth", *argv)
        assert code == 2 and out == ""


class TestGates:
    def test_catalog(self, capsys):
        code, out, _ = run(capsys, "gates")
        assert code == 0
        for name in ("not-lsb", "not-msb", "U-lsb", "swap", "U-msb", "c-not", "c-not-bar", "c-not-R", "c-not-R-bar"):
            assert f"\n{name}\n" in out
        assert "  u00   0 u01   0" in out


class TestExitCodes:
    def test_parse_error(self, capsys, tmp_path):
        code, out, err = run(capsys, "simulate", write_script(tmp_path, "qubits 2\nfrob 1\n"))
        assert code == 1 and out == "" and "line 2, column 1" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "simulate", tmp_path / "nope.qc")
        assert code == 1 and "cannot read" in err

    def test_bad_subcommand(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frob"])
        assert info.value.code == 1

    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["gn", "--theta0", "1"])
        assert info.value.code == 1

    def test_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qclone.cli", "bh", "eq", "se=2"], capture_output=True, text=True
        )
        assert proc.returncode == 2 and proc.stdout == "" and "outside" in proc.stderr
