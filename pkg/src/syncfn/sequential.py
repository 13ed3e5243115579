"""Sequential transducers: input-deterministic machines with a terminal function.

Transitions read exactly one input letter and write a (possibly empty) word.
The terminal function is partial: states outside its domain are not final.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, NamedTuple

from .automata import Aux, MachineEquality, TerminalForm, Transducer, sorted_states, _jsonable, _unjson
from .numerals import Word, format_word, parse_word

State = Hashable


class SeqTransition(NamedTuple):
    source: State
    input: int
    output: Word
    target: State


def check_input_deterministic(transitions: Iterable) -> bool:
    """At most one transition per (state, input letter)."""
    seen = {}
    for p, a, out, q in transitions:
        if (p, a) in seen and seen[(p, a)] != (out, q):
            return False
        seen[(p, a)] = (out, q)
    return True


def check_input_complete(transitions: Iterable, base: int, states: Iterable | None = None) -> bool:
    """Every state has a transition for every digit below ``base``."""
    transitions = list(transitions)
    if states is None:
        states = {t[0] for t in transitions} | {t[3] for t in transitions}
    present = {(t[0], t[1]) for t in transitions}
    return all((q, a) in present for q in states for a in range(base))


@dataclass(frozen=True, eq=False)
class SequentialTransducer(MachineEquality):
    states: frozenset
    initial: State
    terminal: Mapping
    transitions: tuple
    input_base: int
    output_base: int
    positions: Mapping | None = field(default=None, compare=False, repr=False)
    _delta: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        trans = tuple(
            dict.fromkeys(SeqTransition(p, a, tuple(w), q) for p, a, w, q in self.transitions)
        )
        object.__setattr__(self, "transitions", trans)
        terminal = {q: tuple(w) for q, w in self.terminal.items()}
        object.__setattr__(self, "terminal", MappingProxyType(terminal))
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        if not set(terminal) <= self.states:
            raise ValueError("terminal function defined outside the state set")
        delta = {}
        for t in trans:
            if t.source not in self.states or t.target not in self.states:
                raise ValueError(f"transition {t} leaves the state set")
            if not (isinstance(t.input, int) and 0 <= t.input < self.input_base):
                raise ValueError(f"input letter {t.input!r} out of range in {t}")
            if (t.source, t.input) in delta:
                raise ValueError(f"not input-deterministic at state {t.source!r}, letter {t.input}")
            delta[(t.source, t.input)] = (t.output, t.target)
        for w in [t.output for t in trans] + list(terminal.values()):
            if any(not 0 <= c < self.output_base for c in w):
                raise ValueError(f"output word {w} out of range for base {self.output_base}")
        object.__setattr__(self, "_delta", delta)

    def step(self, state: State, letter: int):
        """``(output word, next state)`` or ``None`` if there is no transition."""
        return self._delta.get((state, letter))

    def run(self, word: Iterable[int], start: State | None = None):
        """Follow the unique path; ``(output, end state)`` or ``None`` if it blocks."""
        state = self.initial if start is None else start
        out = []
        delta = self._delta
        for a in word:
            move = delta.get((state, a))
            if move is None:
                return None
            out.extend(move[0])
            state = move[1]
        return tuple(out), state

    def apply(self, word: Iterable[int]) -> Word | None:
        res = self.run(word)
        if res is None:
            return None
        out, state = res
        tail = self.terminal.get(state)
        if tail is None:
            return None
        return out + tail

    def is_input_complete(self) -> bool:
        return check_input_complete(self.transitions, self.input_base, self.states)

    def replace(self, **changes) -> "SequentialTransducer":
        fields = dict(
            states=self.states, initial=self.initial, terminal=dict(self.terminal),
            transitions=self.transitions, input_base=self.input_base,
            output_base=self.output_base, positions=self.positions,
        )
        fields.update(changes)
        return type(self)(**fields)

    def relabel(self, rename) -> "SequentialTransducer":
        positions = None
        if self.positions is not None:
            positions = {rename(q): xy for q, xy in self.positions.items()}
        return self.replace(
            states={rename(q) for q in self.states},
            initial=rename(self.initial),
            terminal={rename(q): w for q, w in self.terminal.items()},
            transitions=[(rename(p), a, w, rename(q)) for p, a, w, q in self.transitions],
            positions=positions,
        )

    def to_transducer(self) -> Transducer:
        """Equivalent general transducer; output words are spelled out by ε-input chains."""
        trans = []
        final = set()
        states = set(self.states)

        def chain(p, first_input, word, q, tag):
            if not word:
                trans.append((p, first_input, None, q))
                return
            prev = p
            for k, c in enumerate(word):
                nxt = q if k == len(word) - 1 else Aux(tag, (p, first_input), k)
                states.add(nxt)
                trans.append((prev, first_input if k == 0 else None, c, nxt))
                prev = nxt

        for p, a, w, q in self.transitions:
            chain(p, a, w, q, "mid")
        for q, w in self.terminal.items():
            if w:
                end = Aux("final", q)
                states.add(end)
                chain(q, None, w, end, "tail")
                final.add(end)
            else:
                final.add(q)
        return Transducer(states, {self.initial}, final, trans, self.input_base, self.output_base)

    def to_json(self) -> dict:
        return {
            "kind": "sequential",
            "input_base": self.input_base,
            "output_base": self.output_base,
            "states": [_jsonable(q) for q in sorted_states(self.states)],
            "initial": [_jsonable(self.initial)],
            "terminal": {
                _state_key(q): format_word(self.terminal[q], self.output_base)
                for q in sorted_states(self.terminal)
            },
            "transitions": [
                [_jsonable(p), a, format_word(w, self.output_base), _jsonable(q)]
                for p, a, w, q in self.transitions
            ],
        }

    @classmethod
    def from_json(cls, data: dict):
        states = [_unjson(q) for q in data["states"]]
        by_key = {_state_key(q): q for q in states}
        return cls(
            set(states),
            _unjson(data["initial"][0]),
            {by_key[k]: parse_word(w, data["output_base"]) for k, w in data["terminal"].items()},
            [(_unjson(p), a, parse_word(w, data["output_base"]), _unjson(q))
             for p, a, w, q in data["transitions"]],
            data["input_base"],
            data["output_base"],
        )


def _state_key(q) -> str:
    return json.dumps(_jsonable(q))


def apply(s: SequentialTransducer, word: Iterable[int]) -> Word | None:
    return s.apply(word)


def compose_sequential(s: SequentialTransducer, s2: SequentialTransducer) -> SequentialTransducer:
    """Machine computing ``s2(s(u))``.

    Every output word of ``s`` is replayed through ``s2`` from each state of
    ``s2``; terminal words are replayed the same way and followed by the
    terminal word of the state ``s2`` lands in.
    """
    if s.output_base != s2.input_base:
        raise ValueError("incompatible alphabets")
    states2 = sorted_states(s2.states)
    trans = []
    for p, a, u, q in s.transitions:
        for p2 in states2:
            res = s2.run(u, p2)
            if res is not None:
                trans.append(((p, p2), a, res[0], (q, res[1])))
    terminal = {}
    for q, w in s.terminal.items():
        for p2 in states2:
            res = s2.run(w, p2)
            if res is not None and res[1] in s2.terminal:
                terminal[(q, p2)] = res[0] + s2.terminal[res[1]]
    return SequentialTransducer(
        {(p, p2) for p in s.states for p2 in s2.states},
        (s.initial, s2.initial),
        terminal,
        trans,
        s.input_base,
        s2.output_base,
    )


def identity_sequential(base: int) -> SequentialTransducer:
    return SequentialTransducer({()}, (), {(): ()}, [((), c, (c,), ()) for c in range(base)], base, base)


def from_terminal_form(tf: TerminalForm) -> SequentialTransducer:
    """Read a terminal form as a sequential machine when every label is a single word."""
    if len(tf.initial) != 1:
        raise ValueError("a sequential transducer has exactly one initial state")
    trans = []
    for p, a, lang, q in tf.transitions:
        w = lang.single_word()
        if w is None:
            raise ValueError(f"transition {p!r} --{a}--> {q!r} has no single output word")
        trans.append((p, a, w, q))
    terminal = {}
    for q, lang in tf.terminal.items():
        w = lang.single_word()
        if w is None:
            raise ValueError(f"state {q!r} has no single terminal word")
        terminal[q] = w
    (initial,) = tf.initial
    return SequentialTransducer(tf.states, initial, terminal, trans, tf.input_base, tf.output_base)


def rotation_sequential() -> SequentialTransducer:
    """Sequential form of ``xu -> ux`` over ``{a, b}`` (``a = 0``, ``b = 1``)."""
    trans = [("i", x, (), f"p{x}") for x in (0, 1)]
    trans += [(f"p{x}", y, (y,), f"p{x}") for x in (0, 1) for y in (0, 1)]
    return SequentialTransducer({"i", "p0", "p1"}, "i", {"p0": (0,), "p1": (1,)}, trans, 2, 2)
