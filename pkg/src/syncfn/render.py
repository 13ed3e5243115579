"""Deterministic Graphviz DOT output with node positions computed here.

Every node carries ``pos="x,y!"`` in points, so ``neato -n`` reproduces the
intended geometry instead of running its own layout.  Nodes and edges are
tagged with a ``class`` attribute (``state``, ``transition``, ``terminal``,
``cross``, ``marker``) which Graphviz passes through to SVG and which makes
the output easy to inspect in tests.

Terminal words are drawn as an arrow from the state to an invisible point;
an empty terminal word gives an unlabeled arrow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import Transducer, sorted_states, state_label
from .layout import circular_positions, ellipse_positions
from .numerals import format_word
from .sequential import SequentialTransducer
from .synchronized import SuffixSeq

POINTS = 72.0


@dataclass
class RenderSpec:
    layout: str = "circular"
    scale: float = 1.5
    show_terminal: bool = True
    eps: str = "ε"

    def __post_init__(self):
        if self.layout not in ("circular", "cone", "layered"):
            raise ValueError(f"unknown layout {self.layout!r}")


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _pos(xy, scale) -> str:
    x, y = xy
    return f'"{x * scale * POINTS:.2f},{y * scale * POINTS:.2f}!"'


def _letter(c, base, eps):
    return eps if c is None else format_word((c,), base)


def _word(w, base, eps):
    return format_word(w, base, empty=eps)


def _edges_of(machine):
    """``(source, label, target)`` for the transitions of any machine kind."""
    if isinstance(machine, SequentialTransducer):
        return [(p, f"{_letter(a, machine.input_base, '')}/{_word(w, machine.output_base, 'ε')}", q)
                for p, a, w, q in machine.transitions]
    if isinstance(machine, (SuffixSeq, Transducer)):
        return [(p, f"{_letter(a, machine.input_base, 'ε')}/{_letter(b, machine.output_base, 'ε')}", q)
                for p, a, b, q in machine.transitions]
    raise TypeError(f"cannot render {type(machine).__name__}")


def _initial_states(machine):
    if isinstance(machine, Transducer):
        return sorted_states(machine.initial)
    return [machine.initial]


def _terminals(machine):
    """``state -> label`` for the terminal arrows ('' for the empty word)."""
    if isinstance(machine, SequentialTransducer):
        return {q: format_word(w, machine.output_base) for q, w in machine.terminal.items()}
    return {q: "" for q in machine.final}


def _layered_positions(machine, order):
    succ = {}
    for p, _, q in _edges_of(machine):
        succ.setdefault(p, []).append(q)
    depth = {}
    todo = deque()
    for q in _initial_states(machine):
        depth[q] = 0
        todo.append(q)
    while todo:
        p = todo.popleft()
        for q in succ.get(p, ()):
            if q not in depth:
                depth[q] = depth[p] + 1
                todo.append(q)
    last = max(depth.values(), default=0) + 1
    rows = {}
    pos = {}
    for q in order:
        col = depth.get(q, last)
        row = rows.get(col, 0)
        rows[col] = row + 1
        pos[q] = (2.0 * col, -1.5 * row)
    return pos


def _machine_positions(machine, order, layout):
    if layout == "circular":
        given = getattr(machine, "positions", None)
        if given and set(given) == set(order):
            return dict(given)
        circle = circular_positions(len(order))
        return {q: circle[k] for k, q in enumerate(order)}
    return _layered_positions(machine, order)


def render_machine(machine, spec: RenderSpec | None = None, name: str = "machine") -> str:
    """DOT text for a prefix, suffix, sequential or general machine."""
    spec = spec or RenderSpec()
    if spec.layout == "cone":
        raise ValueError("the cone layout draws closure sections; use render_cone")
    order = sorted_states(machine.states)
    ids = {q: f"q{k}" for k, q in enumerate(order)}
    pos = _machine_positions(machine, order, spec.layout)
    finals = _terminals(machine)
    lines = [f"digraph {_quote(name)} {{", "  node [shape=circle];"]
    for q in order:
        shape = "doublecircle" if q in finals and not spec.show_terminal else "circle"
        lines.append(f"  {ids[q]} [class=state, label={_quote(state_label(q))}, "
                     f"shape={shape}, pos={_pos(pos[q], spec.scale)}];")
    for k, q in enumerate(_initial_states(machine)):
        x, y = pos[q]
        lines.append(f"  init{k} [class=marker, shape=point, pos={_pos((x - 0.6, y + 0.3), spec.scale)}];")
        lines.append(f"  init{k} -> {ids[q]} [class=marker];")
    for p, label, q in _edges_of(machine):
        lines.append(f"  {ids[p]} -> {ids[q]} [class=transition, label={_quote(label)}];")
    if spec.show_terminal:
        for q in order:
            if q not in finals:
                continue
            x, y = pos[q]
            dx, dy = (x, y) if (x, y) != (0.0, 0.0) else (0.0, 1.0)
            norm = max((dx * dx + dy * dy) ** 0.5, 1e-9)
            end = (x + 0.5 * dx / norm, y + 0.5 * dy / norm)
            lines.append(f"  t_{ids[q]} [class=marker, shape=point, pos={_pos(end, spec.scale)}];")
            attrs = "class=terminal"
            if finals[q]:
                attrs += f", label={_quote(finals[q])}"
            lines.append(f"  {ids[q]} -> t_{ids[q]} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_cone(closure, max_n: int, spec: RenderSpec | None = None, name: str = "cone") -> str:
    """Sections ``0 .. max_n`` of a closure machine stacked as a cone, tip on top.

    Within a section, states are ordered by their integer value around a
    flattened circle.  Cross-section edges lead from section ``n`` to
    section ``n-1``: unlabeled for ``0u -> u`` and labeled by the emitted
    digit for ``iu -> v``.
    """
    from .powers import section_int

    spec = spec or RenderSpec(layout="cone")
    d = closure.d
    sections = [closure.section_export(n) for n in range(max_n + 1)]
    lines = [f"digraph {_quote(name)} {{", "  node [shape=circle];"]
    ids = {}
    gap = 2.5
    for sec in sections:
        n = sec.n
        order = sorted(sec.machine.states, key=lambda w: section_int(w, d))
        circle = ellipse_positions(len(order), (0.0, -gap * n), max(n, 0.001), 0.4)
        for k, w in enumerate(order):
            ids[w] = f"s{n}_{k}"
            lines.append(f"  {ids[w]} [class=state, label={_quote(state_label(w))}, "
                         f"pos={_pos(circle[k], spec.scale)}];")
    for sec in sections:
        for p, label, q in _edges_of(sec.machine):
            lines.append(f"  {ids[p]} -> {ids[q]} [class=transition, label={_quote(label)}];")
    for sec in sections:
        for p, c, q in sec.cone_edges:
            attrs = "class=cross, style=dashed"
            if c is not None:
                attrs += f", label={_quote(format_word((c,), closure.base))}"
            lines.append(f"  {ids[p]} -> {ids[q]} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_dot(text: str) -> dict[str, int]:
    """Count node and edge declarations per ``class`` tag."""
    counts = {}
    for line in text.splitlines():
        line = line.strip()
        if "class=" not in line:
            continue
        kind = line.split("class=", 1)[1].split(",")[0].split("]")[0]
        key = f"{kind}_edges" if " -> " in line else f"{kind}_nodes"
        counts[key] = counts.get(key, 0) + 1
    return counts
