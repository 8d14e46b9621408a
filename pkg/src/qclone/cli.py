"""Command-line front end.

Exit codes: 0 success, 1 usage/parse/IO error, 2 domain error.  Data goes to
stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import dsl, machines as mc
from .density import bloch_coords, density_from_state, fidelity_pure, is_product_2q, reduced_qubit
from .diagrams import compile_diagram, render_ascii, render_svg, simplify_diagram
from .errors import ParseError, QCloneError
from .numfmt import fmt_complex, fmt_num
from .plots import line_plot
from .qcore import bitstring, build_gate_matrix, catalog

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which is our domain code
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# helpers


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _complex_arg(text: str) -> complex:
    try:
        return dsl.parse_complex(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _real_arg(text: str, name: str) -> float:
    z = _complex_arg(text)
    if z.imag != 0:
        raise mc.DomainError(f"{name} must be real, got {text}")
    return z.real


def _snap_normalized(v, what: str) -> np.ndarray:
    """Accept vectors typed with ~8 digits and rescale them to unit norm."""
    v = np.asarray(v, dtype=complex)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1) > dsl.INPUT_TOL:
        raise mc.NormalizationError(f"{what} is not normalized (norm {fmt_num(norm)})", norm)
    return v / norm if abs(norm - 1) > mc.ATOL else v


def _matrix_text(m) -> str:
    return "[" + ", ".join("[" + ", ".join(fmt_complex(v) for v in row) + "]" for row in np.asarray(m)) + "]"


def _bloch_text(v) -> str:
    return "(" + ", ".join(fmt_num(c) for c in v) + ")"


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_num(v) for v in r])
    return buf.getvalue()


def _json_num(x: float) -> float:
    return float(fmt_num(x))


# --------------------------------------------------------------------------
# subcommands


def cmd_simulate(args) -> int:
    script = dsl.parse_circuit(_read_source(args.script))
    n = script.circuit.n_qubits
    final = script.circuit.run(script.initial)[-1]
    rho = density_from_state(final)
    blochs = [bloch_coords(reduced_qubit(rho, q)) for q in range(n)]
    if args.format == "json":
        doc = {
            "n_qubits": n,
            "states": [bitstring(i, n) for i in range(2**n)],
            "re": [_json_num(a.real) for a in final],
            "im": [_json_num(a.imag) for a in final],
            "bloch_x": [_json_num(b.x) for b in blochs],
            "bloch_y": [_json_num(b.y) for b in blochs],
            "bloch_z": [_json_num(b.z) for b in blochs],
        }
        _write(None, json.dumps(doc) + "\n")
        return EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["state", "re", "im"])
    for i, a in enumerate(final):
        w.writerow([bitstring(i, n), fmt_num(a.real), fmt_num(a.imag)])
    w.writerow([])
    w.writerow(["qubit", "x", "y", "z"])
    for q, b in enumerate(blochs):
        w.writerow([q, fmt_num(b.x), fmt_num(b.y), fmt_num(b.z)])
    _write(None, buf.getvalue())
    return EXIT_OK


def cmd_diagram(args) -> int:
    script = dsl.parse_circuit(_read_source(args.script))
    d = compile_diagram(script.circuit, script.initial, args.annotate, args.msb_swaps)
    if args.simplify:
        d = simplify_diagram(d)
    text = render_svg(d) if args.format == "svg" else render_ascii(d)
    _write(args.output, text)
    return EXIT_OK


def gn_report(p: mc.GNParams, a: complex, b: complex) -> str:
    trace = mc.gn_run(p, a, b)
    bob_map, eve_map = mc.gn_bloch_maps(p)
    out = [
        "Griffiths-Niu copying machine (Bob = qubit 0 / LSB, Eve = qubit 1 / MSB)",
        f"theta0 = {fmt_num(p.theta0)}",
        f"theta1 = {fmt_num(p.theta1)}",
        f"a = {fmt_complex(a)}",
        f"b = {fmt_complex(b)}",
        "",
        "states in basis order 00, 01, 10, 11:",
    ]
    for k, psi in enumerate(trace.psi):
        tag = "product" if is_product_2q(psi) else "entangled"
        out.append(f"Psi{k} = [{', '.join(fmt_complex(v) for v in psi)}]  {tag}")
    for k in range(2, 6):
        rb, re_ = trace.stage_bob(k), trace.stage_eve(k)
        out += [
            "",
            f"stage {k}:",
            f"  rho_bob{k} = {_matrix_text(rb)}",
            f"  rho_eve{k} = {_matrix_text(re_)}",
            f"  bloch_bob{k} = {_bloch_text(bloch_coords(rb))}",
            f"  bloch_eve{k} = {_bloch_text(bloch_coords(re_))}",
        ]
    out += ["", "Bloch maps (out = offset + scale * in, per axis X, Y, Z):"]
    for name, m in (("bob", bob_map), ("eve", eve_map)):
        out.append(f"  {name}_scale = {_bloch_text(m.scale)}")
        out.append(f"  {name}_offset = {_bloch_text(m.offset)}")
    return "\n".join(out) + "\n"


def cmd_gn(args) -> int:
    ab = _snap_normalized([_complex_arg(args.a), _complex_arg(args.b)], "input (a, b)")
    p = mc.GNParams(float(args.theta0), float(args.theta1))
    _write(None, gn_report(p, complex(ab[0]), complex(ab[1])))
    return EXIT_OK


def _bh_control(mode: str, value: str) -> mc.ControlState:
    if mode == "raw":
        parts = value.split(",")
        if len(parts) != 4:
            raise UsageError("raw mode needs alpha,beta,gamma,delta")
        v = _snap_normalized([_complex_arg(t) for t in parts], "control state")
        return mc.ControlState(*(complex(x) for x in v))
    key, _, num = value.partition("=")
    want = {"sym": "alpha", "eq": "se"}[mode]
    if key != want or not num:
        raise UsageError(f"{mode} mode expects {want}=<value>")
    x = _real_arg(num, want)
    if mode == "sym":
        return mc.bh_symmetric_params(x)[0]
    return mc.bh_equatorial_params(x)[0]


def bh_report(mode: str, c: mc.ControlState, a: complex, b: complex) -> str:
    res = mc.bh_run(c, a, b)
    s = mc.bh_scaling(c)
    f_bob, f_eve = s.fidelities
    psi = np.array([a, b])
    out = [
        f"Buzek-Hillery copying machine (mode {mode}; Bob = qubit 0, Eve = qubit 1, ancilla = qubit 2)",
        f"alpha = {fmt_complex(c.alpha)}",
        f"beta = {fmt_complex(c.beta)}",
        f"gamma = {fmt_complex(c.gamma)}",
        f"delta = {fmt_complex(c.delta)}",
        f"S_B = {fmt_num(s.s_bob)}",
        f"S_E = {fmt_num(s.s_eve)}",
        f"F_B = {fmt_num(f_bob)}",
        f"F_E = {fmt_num(f_eve)}",
        f"a = {fmt_complex(a)}",
        f"b = {fmt_complex(b)}",
        f"F_B_input = {fmt_num(fidelity_pure(res.rho_bob, psi))}",
        f"F_E_input = {fmt_num(fidelity_pure(res.rho_eve, psi))}",
        f"rho_bob = {_matrix_text(res.rho_bob)}",
        f"rho_eve = {_matrix_text(res.rho_eve)}",
        f"rho_anc = {_matrix_text(res.rho_anc)}",
        f"bloch_bob = {_bloch_text(bloch_coords(res.rho_bob))}",
        f"bloch_eve = {_bloch_text(bloch_coords(res.rho_eve))}",
    ]
    return "\n".join(out) + "\n"


def cmd_bh(args) -> int:
    c = _bh_control(args.mode, args.value)
    ab = _snap_normalized([_complex_arg(args.a), _complex_arg(args.b)], "input (a, b)")
    _write(None, bh_report(args.mode, c, complex(ab[0]), complex(ab[1])))
    return EXIT_OK


def sweep_outputs(machine: str, steps: int) -> tuple[str, str]:
    """(CSV text, SVG text) for a sweep."""
    if machine == "bh-sym":
        rows = mc.sweep_symmetric(steps)
        text = _csv_text(["alpha", "s_bob", "s_eve", "f_bob", "f_eve"], rows)
        svg = line_plot(
            [r.alpha for r in rows],
            [("S_B", [r.s_bob for r in rows]), ("S_E", [r.s_eve for r in rows])],
            "alpha", "S", (mc.SYM_ALPHA_MIN, mc.SYM_ALPHA_MAX), (0.0, 1.0),
            title="symmetric cloner",
        )
    else:
        rows = mc.sweep_equatorial(steps)
        text = _csv_text(["s_eve", "s_bob", "alpha"], rows)
        svg = line_plot(
            [r.s_eve for r in rows], [("S_B", [r.s_bob for r in rows])],
            "S_E", "S_B", (0.0, 1.0), (0.0, 1.0), title="equatorial cloner",
        )
    return text, svg


def cmd_sweep(args) -> int:
    text, svg = sweep_outputs(args.machine, args.steps)
    _write(args.csv, text)
    if args.svg:
        _write(args.svg, svg)
    return EXIT_OK


def synth_report(c: mc.ControlState) -> tuple[str, dsl.Script]:
    angles = mc.solve_synthesis(c)
    circuit = mc.synthesis_circuit(angles)
    script = dsl.Script(circuit, np.array([1, 0, 0, 0], dtype=complex), False)
    final = circuit.run(script.initial)[-1]
    err = float(np.max(np.abs(final - mc.ControlState(*c).vector())))
    out = [
        f"theta1 = {fmt_num(angles.theta1)}",
        f"theta2 = {fmt_num(angles.theta2)}",
        f"theta3 = {fmt_num(angles.theta3)}",
        f"gates = {len(circuit.gates)}",
    ]
    if not circuit.gates:
        out.append("note: the control state is |00>; no gates needed (identity)")
    elif angles.theta2 == 0:
        out.append("note: beta = 0, the controlled-theta2 gate is absent")
    out.append(f"roundtrip_error = {fmt_num(err)}")
    out += ["", "# script", dsl.format_circuit(script).rstrip("\n")]
    return "\n".join(out) + "\n", script


def cmd_synth(args) -> int:
    vals = [_real_arg(t, name) for t, name in zip(args.components, ("alpha", "beta", "gamma", "delta"))]
    v = _snap_normalized(vals, "control state")
    report, script = synth_report(mc.ControlState(*(float(x.real) for x in v)))
    _write(None, report)
    if args.script_out:
        _write(args.script_out, dsl.format_circuit(script))
    if args.diagram:
        d = compile_diagram(script.circuit, script.initial, annotate_entanglement=True)
        _write(args.diagram, render_svg(d) if args.diagram_format == "svg" else render_ascii(d))
    return EXIT_OK


def _symbolic_single(target: int) -> list[list[str]]:
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            other = 1 - target
            if (i >> other) & 1 != (j >> other) & 1:
                row.append("0")
            else:
                row.append(f"u{(i >> target) & 1}{(j >> target) & 1}")
        rows.append(row)
    return rows


def gates_text() -> str:
    out = ["two-qubit catalog (basis 00, 01, 10, 11; qubit 0 = LSB):"]
    entries = list(catalog().items())
    sym = [("U-lsb", _symbolic_single(0)), ("U-msb", _symbolic_single(1))]
    for name, spec in entries[:2]:
        out += ["", name] + ["  " + " ".join(fmt_num(v.real).rjust(2) for v in row) for row in build_gate_matrix(spec, 2)]
    for name, rows in sym[:1]:
        out += ["", name] + ["  " + " ".join(v.rjust(3) for v in row) for row in rows]
    out += ["", entries[2][0]] + ["  " + " ".join(fmt_num(v.real).rjust(2) for v in row) for row in build_gate_matrix(entries[2][1], 2)]
    for name, rows in sym[1:]:
        out += ["", name] + ["  " + " ".join(v.rjust(3) for v in row) for row in rows]
    for name, spec in entries[3:]:
        out += ["", name] + ["  " + " ".join(fmt_num(v.real).rjust(2) for v in row) for row in build_gate_matrix(spec, 2)]
    return "\n".join(out) + "\n"


def cmd_gates(args) -> int:
    _write(None, gates_text())
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qclone", description="Quantum copying machines and diagrams of states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="run a circuit script")
    s.add_argument("script", help="script path or - for stdin")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("diagram", help="draw the diagram of states of a script")
    s.add_argument("script")
    s.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    s.add_argument("--simplify", action="store_true")
    s.add_argument("--annotate", action="store_true", help="mark entanglement after each gate (2 qubits)")
    s.add_argument("--msb-swaps", action="store_true", help="draw MSB single-qubit gates as swap/U/swap")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("gn", help="Griffiths-Niu machine report")
    s.add_argument("--theta0", type=float, required=True)
    s.add_argument("--theta1", type=float, required=True)
    s.add_argument("--a", default="1")
    s.add_argument("--b", default="0")
    s.set_defaults(func=cmd_gn)

    s = sub.add_parser("bh", help="Buzek-Hillery machine report")
    s.add_argument("mode", choices=["sym", "eq", "raw"])
    s.add_argument("value", help="alpha=<v> (sym), se=<v> (eq) or alpha,beta,gamma,delta (raw)")
    s.add_argument("--a", default="1")
    s.add_argument("--b", default="0")
    s.set_defaults(func=cmd_bh)

    s = sub.add_parser("sweep", help="tabulate and plot a cloner family")
    s.add_argument("machine", choices=["bh-sym", "bh-eq"])
    s.add_argument("--steps", type=int, default=51)
    s.add_argument("--csv", help="CSV output path (default stdout)")
    s.add_argument("--svg", help="SVG plot output path")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("synth", help="circuit preparing a BH control state")
    s.add_argument("components", nargs=4, metavar="C", help="alpha beta gamma delta")
    s.add_argument("--script-out")
    s.add_argument("--diagram")
    s.add_argument("--diagram-format", choices=["ascii", "svg"], default="ascii")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("gates", help="print the two-qubit gate catalog")
    s.set_defaults(func=cmd_gates)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "steps", 2) < 2:
        print("qclone: error: --steps must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"qclone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QCloneError as exc:
        print(f"qclone: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
