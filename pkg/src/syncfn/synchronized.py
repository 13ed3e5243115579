"""Prefix and suffix sequential transducers.

A prefix machine is letter-to-letter and ends with a terminal word, so it
can only lengthen its input.  A suffix machine is letter-to-letter except for
ε-output transitions, which may only occur at the start of a path, so it can
only shorten its input.  Both families are closed under composition,
intersection and difference by product constructions of quadratic size.

The difference constructions use ``(q,)`` for the copy of the first machine
and ``(q, q2)`` for the product states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Optional

from .automata import MachineEquality, Transducer, sorted_states, _jsonable, _unjson
from .numerals import Word
from .sequential import SequentialTransducer

State = Hashable


@dataclass(frozen=True, eq=False)
class PrefixSeq(SequentialTransducer):
    """Sequential transducer whose transitions all output exactly one letter."""

    def __post_init__(self):
        super().__post_init__()
        for t in self.transitions:
            if len(t.output) != 1:
                raise ValueError(f"prefix machine transition {t} is not letter-to-letter")

    def letter_step(self, state, letter):
        move = self._delta.get((state, letter))
        return None if move is None else (move[0][0], move[1])

    def to_json(self) -> dict:
        data = super().to_json()
        data["kind"] = "prefix"
        return data


class SuffixTransition(NamedTuple):
    source: State
    input: int
    output: Optional[int]
    target: State


def has_initial_eps_output(transitions: Iterable) -> bool:
    """No ε-output transition may follow a letter-output transition."""
    transitions = list(transitions)
    eps_sources = {p for p, _, b, _ in transitions if b is None}
    return not any(b is not None and q in eps_sources for _, _, b, q in transitions)


@dataclass(frozen=True, eq=False)
class SuffixSeq(MachineEquality):
    states: frozenset
    initial: State
    final: frozenset
    transitions: tuple
    input_base: int
    output_base: int
    _delta: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "final", frozenset(self.final))
        trans = tuple(dict.fromkeys(SuffixTransition(*t) for t in self.transitions))
        object.__setattr__(self, "transitions", trans)
        if self.initial not in self.states or not self.final <= self.states:
            raise ValueError("initial and final states must be states")
        delta = {}
        for t in trans:
            if t.source not in self.states or t.target not in self.states:
                raise ValueError(f"transition {t} leaves the state set")
            if not 0 <= t.input < self.input_base:
                raise ValueError(f"input letter out of range in {t}")
            if t.output is not None and not 0 <= t.output < self.output_base:
                raise ValueError(f"output letter out of range in {t}")
            if (t.source, t.input) in delta:
                raise ValueError(f"not input-deterministic at state {t.source!r}, letter {t.input}")
            delta[(t.source, t.input)] = (t.output, t.target)
        if not has_initial_eps_output(trans):
            raise ValueError("an ε-output transition follows a letter-output transition")
        object.__setattr__(self, "_delta", delta)

    def step(self, state, letter):
        return self._delta.get((state, letter))

    def run(self, word: Iterable[int], start=None):
        state = self.initial if start is None else start
        out = []
        for a in word:
            move = self._delta.get((state, a))
            if move is None:
                return None
            if move[0] is not None:
                out.append(move[0])
            state = move[1]
        return tuple(out), state

    def apply(self, word: Iterable[int]) -> Word | None:
        res = self.run(word)
        if res is None or res[1] not in self.final:
            return None
        return res[0]

    def to_transducer(self) -> Transducer:
        return Transducer(self.states, {self.initial}, self.final, self.transitions,
                          self.input_base, self.output_base)

    def to_sequential(self) -> SequentialTransducer:
        return SequentialTransducer(
            self.states, self.initial, {q: () for q in self.final},
            [(p, a, () if b is None else (b,), q) for p, a, b, q in self.transitions],
            self.input_base, self.output_base,
        )

    def relabel(self, rename) -> "SuffixSeq":
        return SuffixSeq(
            {rename(q) for q in self.states}, rename(self.initial),
            {rename(q) for q in self.final},
            [(rename(p), a, b, rename(q)) for p, a, b, q in self.transitions],
            self.input_base, self.output_base,
        )

    def to_json(self) -> dict:
        return {
            "kind": "suffix",
            "input_base": self.input_base,
            "output_base": self.output_base,
            "states": [_jsonable(q) for q in sorted_states(self.states)],
            "initial": [_jsonable(self.initial)],
            "final": [_jsonable(q) for q in sorted_states(self.final)],
            "transitions": [[_jsonable(p), a, b, _jsonable(q)] for p, a, b, q in self.transitions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuffixSeq":
        if data.get("kind", "suffix") != "suffix":
            raise ValueError(f"expected a suffix machine, got kind {data.get('kind')!r}")
        return cls(
            {_unjson(q) for q in data["states"]},
            _unjson(data["initial"][0]),
            {_unjson(q) for q in data["final"]},
            [(_unjson(p), a, b, _unjson(q)) for p, a, b, q in data["transitions"]],
            data["input_base"],
            data["output_base"],
        )


def load_machine(data: dict):
    """Rebuild a machine from its JSON form, dispatching on ``kind``."""
    kind = data.get("kind")
    if kind == "prefix":
        return PrefixSeq.from_json(data)
    if kind == "suffix":
        return SuffixSeq.from_json(data)
    if kind == "sequential":
        return SequentialTransducer.from_json(data)
    if kind is None:
        return Transducer.from_json(data)
    raise ValueError(f"unknown machine kind {kind!r}")


def _check_bases(t, t2, same_input=False):
    if same_input:
        if (t.input_base, t.output_base) != (t2.input_base, t2.output_base):
            raise ValueError("incompatible alphabets")
    elif t.output_base != t2.input_base:
        raise ValueError("incompatible alphabets")


# -- prefix constructions -----------------------------------------------------


def prefix_compose(p: PrefixSeq, p2: PrefixSeq) -> PrefixSeq:
    """Letter-to-letter product; terminal words are replayed through ``p2``."""
    _check_bases(p, p2)
    states2 = sorted_states(p2.states)
    trans = []
    for s, a, (b,), q in p.transitions:
        for s2 in states2:
            move = p2.letter_step(s2, b)
            if move is not None:
                trans.append(((s, s2), a, (move[0],), (q, move[1])))
    terminal = {}
    for q, w in p.terminal.items():
        for s2 in states2:
            res = p2.run(w, s2)
            if res is not None and res[1] in p2.terminal:
                terminal[(q, s2)] = res[0] + p2.terminal[res[1]]
    return PrefixSeq(
        {(s, s2) for s in p.states for s2 in p2.states},
        (p.initial, p2.initial), terminal, trans, p.input_base, p2.output_base,
    )


def _sync_product(t, t2):
    """Pairs of transitions with identical labels."""
    index = {}
    for s2, a, b, q2 in t2.transitions:
        index[(s2, a)] = (b, q2)
    trans = []
    for s, a, b, q in t.transitions:
        for s2 in sorted_states(t2.states):
            hit = index.get((s2, a))
            if hit is not None and hit[0] == b:
                trans.append(((s, s2), a, b, (q, hit[1])))
    return trans


def prefix_intersect(p: PrefixSeq, p2: PrefixSeq) -> PrefixSeq:
    _check_bases(p, p2, same_input=True)
    terminal = {
        (q, q2): w
        for q, w in p.terminal.items()
        for q2, w2 in p2.terminal.items()
        if w == w2
    }
    return PrefixSeq(
        {(s, s2) for s in p.states for s2 in p2.states},
        (p.initial, p2.initial), terminal, _sync_product(p, p2),
        p.input_base, p.output_base,
    )


def _escapes(t, t2):
    """Product transitions leaving into the copy of ``t`` when ``t2`` cannot follow."""
    index = {(s2, a): (b, q2) for s2, a, b, q2 in t2.transitions}
    out = []
    for s, a, b, q in t.transitions:
        for s2 in sorted_states(t2.states):
            hit = index.get((s2, a))
            if hit is None or hit[0] != b:
                out.append(((s, s2), a, b, (q,)))
    return out


def prefix_difference(p: PrefixSeq, p2: PrefixSeq) -> PrefixSeq:
    _check_bases(p, p2, same_input=True)
    copy = [((s,), a, b, (q,)) for s, a, b, q in p.transitions]
    terminal = {(q,): w for q, w in p.terminal.items()}
    for q, w in p.terminal.items():
        for q2 in p2.states:
            if p2.terminal.get(q2) != w:
                terminal[(q, q2)] = w
    return PrefixSeq(
        {(s,) for s in p.states} | {(s, s2) for s in p.states for s2 in p2.states},
        (p.initial, p2.initial), terminal,
        _sync_product(p, p2) + copy + _escapes(p, p2),
        p.input_base, p.output_base,
    )


# -- suffix constructions -----------------------------------------------------


def suffix_compose(s: SuffixSeq, s2: SuffixSeq) -> SuffixSeq:
    _check_bases(s, s2)
    by_input = {}
    for t in s2.transitions:
        by_input.setdefault(t.input, []).append(t)
    states2 = sorted_states(s2.states)
    trans = []
    for p, a, c, q in s.transitions:
        if c is None:
            trans.extend(((p, p2), a, None, (q, p2)) for p2 in states2)
        else:
            trans.extend(((p, p2), a, b, (q, q2)) for p2, _, b, q2 in by_input.get(c, ()))
    # the constructor re-checks the initial ε-output shape of the product
    return SuffixSeq(
        {(p, p2) for p in s.states for p2 in s2.states},
        (s.initial, s2.initial),
        {(f, f2) for f in s.final for f2 in s2.final},
        trans, s.input_base, s2.output_base,
    )


def suffix_intersect(s: SuffixSeq, s2: SuffixSeq) -> SuffixSeq:
    _check_bases(s, s2, same_input=True)
    return SuffixSeq(
        {(p, p2) for p in s.states for p2 in s2.states},
        (s.initial, s2.initial),
        {(f, f2) for f in s.final for f2 in s2.final},
        _sync_product(s, s2), s.input_base, s.output_base,
    )


def suffix_difference(s: SuffixSeq, s2: SuffixSeq) -> SuffixSeq:
    _check_bases(s, s2, same_input=True)
    copy = [((p,), a, b, (q,)) for p, a, b, q in s.transitions]
    final = {(f,) for f in s.final} | {(f, q2) for f in s.final for q2 in s2.states - s2.final}
    return SuffixSeq(
        {(p,) for p in s.states} | {(p, p2) for p in s.states for p2 in s2.states},
        (s.initial, s2.initial), final,
        _sync_product(s, s2) + copy + _escapes(s, s2),
        s.input_base, s.output_base,
    )


# -- evaluation ---------------------------------------------------------------


def apply_prefix(p: PrefixSeq, word: Iterable[int]) -> Word | None:
    return p.apply(word)


def apply_suffix(s: SuffixSeq, word: Iterable[int], pad_limit: int) -> Word | None:
    """Run ``s``; while the run is not final, feed up to ``pad_limit`` zero digits.

    Trailing zeros do not change an lsd-first numeral, so padding lets a
    multiplication flush its carry.
    """
    if pad_limit < 0:
        raise ValueError("pad_limit must be nonnegative")
    res = s.run(word)
    if res is None:
        return None
    out, state = list(res[0]), res[1]
    for _ in range(pad_limit + 1):
        if state in s.final:
            return tuple(out)
        move = s.step(state, 0)
        if move is None:
            return None
        if move[0] is not None:
            out.append(move[0])
        state = move[1]
    return None


def prune_unreachable(machine):
    """Drop states not reachable from the initial state (prefix or suffix machines)."""
    succ = {}
    for t in machine.transitions:
        succ.setdefault(t.source, []).append(t.target)
    seen, todo = {machine.initial}, deque([machine.initial])
    while todo:
        for q in succ.get(todo.popleft(), ()):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    trans = [t for t in machine.transitions if t.source in seen]
    if isinstance(machine, SuffixSeq):
        return SuffixSeq(seen, machine.initial, machine.final & seen, trans,
                         machine.input_base, machine.output_base)
    terminal = {q: w for q, w in machine.terminal.items() if q in seen}
    return machine.replace(states=seen, terminal=terminal, transitions=trans, positions=None)


def identity_prefix(base: int) -> PrefixSeq:
    return PrefixSeq({()}, (), {(): ()}, [((), c, (c,), ()) for c in range(base)], base, base)


def identity_suffix(base: int) -> SuffixSeq:
    return SuffixSeq({()}, (), {()}, [((), c, c, ()) for c in range(base)], base, base)
