"""Diagrams of states: one rail per basis state, one column per gate.

Inside a column an edge ``src -> dst`` is drawn for every nonzero matrix
entry ``U[dst, src]`` and labeled with that entry (unit entries stay
unlabeled).  An edge is emphasized when the amplitude entering its source
rail is nonzero, which is what makes the flow of information visible.  The
number of rails doubles with each qubit, so diagrams stop at
``MAX_DIAGRAM_QUBITS``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .density import is_product_2q
from .errors import DimensionError
from .numfmt import fmt_complex
from .qcore import (
    ATOL,
    MAX_DIAGRAM_QUBITS,
    Circuit,
    GateKind,
    GateSpec,
    as_state,
    bitstring,
    build_gate_matrix,
    gate_label,
)
from .svg import SvgDoc

ASCII_MAX_STATES = 16
SVG_MAX_STATES = 256


def entry_label(value: complex) -> str:
    return "" if abs(value - 1) <= ATOL else fmt_complex(value, 6)


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    value: complex
    label: str
    emphasized: bool


@dataclass(frozen=True)
class DiagramColumn:
    gate_label: str
    edges: tuple[Edge, ...]
    entangled_after: bool | None = None

    def matrix(self, n_states: int) -> np.ndarray:
        m = np.zeros((n_states, n_states), dtype=complex)
        for e in self.edges:
            m[e.dst, e.src] += e.value
        return m

    def is_monomial(self) -> bool:
        srcs = [e.src for e in self.edges]
        dsts = [e.dst for e in self.edges]
        return len(set(srcs)) == len(srcs) and len(set(dsts)) == len(dsts)

    @property
    def crossings(self) -> int:
        return sum(e.src != e.dst for e in self.edges)


@dataclass(frozen=True)
class Diagram:
    n_qubits: int
    columns: tuple[DiagramColumn, ...]
    initial: np.ndarray = field(compare=False)

    @property
    def n_states(self) -> int:
        return 2**self.n_qubits

    @property
    def state_labels(self) -> list[str]:
        return [bitstring(i, self.n_qubits) for i in range(self.n_states)]

    def simulate(self) -> np.ndarray:
        """Push the initial amplitudes through every column's edges."""
        v = np.asarray(self.initial, dtype=complex)
        for col in self.columns:
            v = col.matrix(self.n_states) @ v
        return v


def _msb_alternative(circuit: Circuit) -> list[GateSpec]:
    msb = circuit.n_qubits - 1
    out = []
    for g in circuit.gates:
        single = g.kind is GateKind.U1Q or (g.kind is GateKind.CROT and g.control is None)
        if msb > 0 and single and g.target == msb:
            sw = GateSpec(GateKind.SWAP, 0, msb, label="swap")
            out += [sw, replace(g, target=0, label=gate_label(g)), sw]
        else:
            out.append(g)
    return out


def compile_diagram(
    circuit: Circuit,
    initial=None,
    annotate_entanglement: bool = False,
    msb_via_swaps: bool = False,
) -> Diagram:
    """Build the diagram of ``circuit`` acting on ``initial`` (default ``|0...0>``).

    ``msb_via_swaps`` draws single-qubit gates on the most significant bit as
    swap, gate-on-LSB, swap instead of the direct block form.
    """
    n = circuit.n_qubits
    if n > MAX_DIAGRAM_QUBITS:
        raise DimensionError(
            f"diagrams grow as 2^n rails; {n} qubits exceeds the limit of {MAX_DIAGRAM_QUBITS}"
        )
    if annotate_entanglement and n != 2:
        raise DimensionError("entanglement annotation is available for two-qubit circuits only")
    dim = 2**n
    v = np.zeros(dim, dtype=complex)
    if initial is None:
        v[0] = 1
    else:
        v = as_state(initial)
        if v.size != dim:
            raise DimensionError(f"initial state has {v.size} amplitudes, circuit needs {dim}")
    start = v.copy()
    gates = _msb_alternative(circuit) if msb_via_swaps else list(circuit.gates)
    columns = []
    for g in gates:
        m = build_gate_matrix(g, n)
        edges = []
        for src in range(dim):
            live = abs(v[src]) > ATOL
            for dst in range(dim):
                val = complex(m[dst, src])
                if abs(val) > ATOL:
                    edges.append(Edge(src, dst, val, entry_label(val), live))
        v = m @ v
        ent = (not is_product_2q(v)) if annotate_entanglement else None
        columns.append(DiagramColumn(gate_label(g), tuple(edges), ent))
    return Diagram(n, tuple(columns), start)


def _merge(c1: DiagramColumn, c2: DiagramColumn) -> DiagramColumn:
    nxt = {e.src: e for e in c2.edges}
    edges = []
    for e in c1.edges:
        f = nxt.get(e.dst)
        if f is None:
            continue
        val = f.value * e.value
        edges.append(Edge(e.src, f.dst, val, entry_label(val), e.emphasized))
    edges.sort(key=lambda e: (e.src, e.dst))
    return DiagramColumn(f"{c1.gate_label};{c2.gate_label}", tuple(edges), c2.entangled_after)


def simplify_diagram(d: Diagram) -> Diagram:
    """Drop edges that carry no amplitude, then fuse runs of monomial columns.

    A column is monomial when every rail has at most one edge in and one out
    (a permutation up to phases); two adjacent monomial columns compose to a
    monomial column whose edge values are the products along each path.
    """
    cols = [
        DiagramColumn(c.gate_label, tuple(e for e in c.edges if e.emphasized), c.entangled_after)
        for c in d.columns
    ]
    merged: list[DiagramColumn] = []
    for c in cols:
        if merged and merged[-1].is_monomial() and c.is_monomial():
            merged[-1] = _merge(merged[-1], c)
        else:
            merged.append(c)
    return Diagram(d.n_qubits, tuple(merged), d.initial)


# --------------------------------------------------------------------------
# ASCII rendering

_H = {False: "─", True: "━"}
_DOWN = {False: "╲", True: "⧹"}
_UP = {False: "╱", True: "⧸"}


def _column_width(col: DiagramColumn) -> int:
    span = max((abs(e.dst - e.src) for e in col.edges), default=0)
    return max(max(2 * span - 1, 0) + 4, len(col.gate_label) + 2)


def _glyph(strokes: set[str]) -> str:
    horiz = {s for s in strokes if s in "hH"}
    diag = strokes - horiz
    if not strokes:
        return " "
    if horiz and diag:
        return "┼"
    if "d" in {s.lower() for s in diag} and "u" in {s.lower() for s in diag}:
        return "╳"
    if diag:
        s = next(iter(sorted(diag)))
        return (_DOWN if s.lower() == "d" else _UP)[s.isupper()]
    return _H["H" in horiz]


def render_ascii(d: Diagram) -> str:
    """Fixed-grid drawing with box-drawing glyphs; LF line endings."""
    n_states = d.n_states
    if n_states > ASCII_MAX_STATES:
        raise DimensionError(f"ASCII diagrams hold at most {ASCII_MAX_STATES} states, got {n_states}")
    rows = 2 * (n_states - 1) + 1
    labels = d.state_labels
    gutter = d.n_qubits + 1
    lead = 2
    widths = [_column_width(c) for c in d.columns]
    total = lead + sum(widths) + lead
    grid: list[list[set[str]]] = [[set() for _ in range(total)] for _ in range(rows)]

    live_in = [abs(a) > ATOL for a in d.initial]
    for s in range(n_states):
        for x in range(lead):
            grid[2 * s][x].add("H" if live_in[s] else "h")

    x0 = lead
    amp = np.asarray(d.initial, dtype=complex)
    for col, w in zip(d.columns, widths):
        for e in col.edges:
            h = "H" if e.emphasized else "h"
            y1, y2 = 2 * e.src, 2 * e.dst
            if y1 == y2:
                for x in range(w):
                    grid[y1][x0 + x].add(h)
                continue
            k = abs(y2 - y1) - 1
            step = 1 if y2 > y1 else -1
            start = (w - k) // 2
            for x in range(start):
                grid[y1][x0 + x].add(h)
            diag = ("D" if e.emphasized else "d") if step > 0 else ("U" if e.emphasized else "u")
            for i in range(k):
                grid[y1 + step * (i + 1)][x0 + start + i].add(diag)
            for x in range(start + k, w):
                grid[y2][x0 + x].add(h)
        amp = col.matrix(n_states) @ amp
        x0 += w
    live_out = [abs(a) > ATOL for a in amp]
    for s in range(n_states):
        for x in range(total - lead, total):
            grid[2 * s][x].add("H" if live_out[s] else "h")

    lines = []
    header = [" "] * total
    x0 = lead
    for col, w in zip(d.columns, widths):
        name = col.gate_label
        off = x0 + (w - len(name)) // 2
        header[off : off + len(name)] = list(name)
        x0 += w
    lines.append(" " * gutter + "".join(header).rstrip())
    for y in range(rows):
        pre = labels[y // 2].ljust(gutter) if y % 2 == 0 else " " * gutter
        lines.append((pre + "".join(_glyph(c) for c in grid[y])).rstrip())
    if any(c.entangled_after is not None for c in d.columns):
        badge = [" "] * total
        x0 = lead
        for col, w in zip(d.columns, widths):
            tag = {True: "ent", False: "sep", None: ""}[col.entangled_after]
            off = x0 + (w - len(tag)) // 2
            badge[off : off + len(tag)] = list(tag)
            x0 += w
        lines.append(" " * gutter + "".join(badge).rstrip())
    legend = []
    for i, col in enumerate(d.columns, start=1):
        for e in col.edges:
            if e.label:
                legend.append(
                    f"  [{i}] {col.gate_label}: {labels[e.src]} -> {labels[e.dst]}  {e.label}"
                )
    if legend:
        lines.append("")
        lines.append("entries:")
        lines.extend(legend)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# SVG rendering

_SVG_GUTTER = 70.0
_SVG_LEAD = 20.0
_SVG_COL = 90.0
_SVG_ROW = 36.0
_SVG_TOP = 40.0
_SVG_BOTTOM = 40.0


def render_svg(d: Diagram) -> str:
    """Deterministic SVG; emphasized edges are drawn with a thicker stroke."""
    n_states = d.n_states
    if n_states > SVG_MAX_STATES:
        raise DimensionError(f"SVG diagrams hold at most {SVG_MAX_STATES} states, got {n_states}")
    ncol = len(d.columns)
    width = _SVG_GUTTER + 2 * _SVG_LEAD + ncol * _SVG_COL
    height = _SVG_TOP + (n_states - 1) * _SVG_ROW + _SVG_BOTTOM
    doc = SvgDoc(width, height)
    doc.rect(0, 0, width, height, fill="white", cls="background")

    def y_of(s: int) -> float:
        return _SVG_TOP + s * _SVG_ROW

    def stroke(live: bool) -> float:
        return 3.0 if live else 1.0

    for s, lab in enumerate(d.state_labels):
        doc.text(_SVG_GUTTER - 10, y_of(s) + 4, lab, anchor="end", cls="state")

    amp = np.asarray(d.initial, dtype=complex)
    x = _SVG_GUTTER
    for s in range(n_states):
        doc.line(x, y_of(s), x + _SVG_LEAD, y_of(s), stroke(abs(amp[s]) > ATOL), cls="rail")
    x += _SVG_LEAD
    for col in d.columns:
        doc.text(x + _SVG_COL / 2, _SVG_TOP - 18, col.gate_label, cls="gate")
        for e in sorted(col.edges, key=lambda e: (e.src, e.dst)):
            doc.line(x, y_of(e.src), x + _SVG_COL, y_of(e.dst), stroke(e.emphasized), cls="edge")
        for e in sorted(col.edges, key=lambda e: (e.src, e.dst)):
            if e.label:
                t = 0.3
                lx = x + t * _SVG_COL
                ly = y_of(e.src) + t * (y_of(e.dst) - y_of(e.src)) - 4
                doc.text(lx, ly, e.label, size=9, cls="entry")
        if col.entangled_after is not None:
            bx, by = x + _SVG_COL / 2 - 14, y_of(n_states - 1) + 12
            doc.rect(bx, by, 28, 16, fill="#ffe0e0" if col.entangled_after else "#e0ffe0",
                     stroke="black", cls="badge")
            doc.text(bx + 14, by + 12, "ent" if col.entangled_after else "sep", size=10, cls="badge")
        amp = col.matrix(n_states) @ amp
        x += _SVG_COL
    for s in range(n_states):
        doc.line(x, y_of(s), x + _SVG_LEAD, y_of(s), stroke(abs(amp[s]) > ATOL), cls="rail")
    return doc.render()
