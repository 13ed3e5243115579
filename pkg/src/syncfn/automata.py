"""General finite transducers over digit alphabets.

A transition carries one optional input letter and one optional output
letter; ``None`` stands for the empty word.  Alphabets are the digit ranges
``0 .. base-1``; symbolic alphabets such as ``{a, b}`` are encoded as digits
(``a = 0``, ``b = 1``).

Machines are immutable.  Every operation returns a new machine.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Optional

from .numerals import Word

State = Hashable
Letter = Optional[int]


class Transition(NamedTuple):
    source: State
    input: Letter
    output: Letter
    target: State


@dataclass(frozen=True)
class Aux:
    """Fresh state introduced by a conversion; never equal to a user state."""

    kind: str
    ref: Any
    index: int = 0

    def __repr__(self):
        return f"<{self.kind}:{self.ref!r}:{self.index}>"


def sorted_states(states: Iterable[State]) -> list:
    states = list(states)
    try:
        return sorted(states)
    except TypeError:
        return sorted(states, key=repr)


def state_label(state: State) -> str:
    """Printable name: digit words as strings, the empty tuple as ε."""
    if isinstance(state, tuple):
        if not state:
            return "ε"
        if all(isinstance(x, int) and 0 <= x < 10 for x in state):
            return "".join(map(str, state))
        return "(" + ",".join(state_label(x) for x in state) + ")"
    return str(state)


def _check_letter(letter: Letter, base: int, what: str) -> None:
    if letter is not None and not (isinstance(letter, int) and 0 <= letter < base):
        raise ValueError(f"{what} letter {letter!r} out of range for base {base}")


def machine_key(machine) -> tuple:
    """Order-insensitive identity of a machine: transitions and terminal words as sets."""
    parts = [type(machine).__name__]
    for name, value in vars(machine).items():
        if name.startswith("_") or name == "positions":
            continue
        if name == "transitions":
            value = frozenset(value)
        elif name == "terminal":
            value = frozenset(value.items())
        parts.append((name, value))
    return tuple(parts)


class MachineEquality:
    """Machines compare equal when they have the same states, transitions and outputs."""

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return machine_key(self) == machine_key(other)

    def __hash__(self):
        return hash(machine_key(self))


@dataclass(frozen=True, eq=False)
class Transducer(MachineEquality):
    """A finite 2-tape automaton ``(Q, I, F, T)``."""

    states: frozenset
    initial: frozenset
    final: frozenset
    transitions: tuple
    input_base: int
    output_base: int
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        trans = tuple(dict.fromkeys(Transition(*t) for t in self.transitions))
        object.__setattr__(self, "transitions", trans)
        if self.input_base < 1 or self.output_base < 1:
            raise ValueError("bases must be positive")
        if not self.initial <= self.states or not self.final <= self.states:
            raise ValueError("initial and final states must be states")
        out = defaultdict(list)
        for t in trans:
            if t.source not in self.states or t.target not in self.states:
                raise ValueError(f"transition {t} leaves the state set")
            _check_letter(t.input, self.input_base, "input")
            _check_letter(t.output, self.output_base, "output")
            out[t.source].append(t)
        object.__setattr__(self, "_out", dict(out))

    def outgoing(self, state: State) -> list[Transition]:
        return self._out.get(state, [])

    def __len__(self):
        return len(self.states)

    def relabel(self, rename: Callable[[State], State]) -> "Transducer":
        return Transducer(
            {rename(q) for q in self.states},
            {rename(q) for q in self.initial},
            {rename(q) for q in self.final},
            [(rename(p), a, b, rename(q)) for p, a, b, q in self.transitions],
            self.input_base,
            self.output_base,
        )

    def to_json(self) -> dict:
        return {
            "input_base": self.input_base,
            "output_base": self.output_base,
            "states": [_jsonable(q) for q in sorted_states(self.states)],
            "initial": [_jsonable(q) for q in sorted_states(self.initial)],
            "final": [_jsonable(q) for q in sorted_states(self.final)],
            "transitions": [[_jsonable(p), a, b, _jsonable(q)] for p, a, b, q in self.transitions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Transducer":
        return cls(
            {_unjson(q) for q in data["states"]},
            {_unjson(q) for q in data["initial"]},
            {_unjson(q) for q in data["final"]},
            [(_unjson(p), a, b, _unjson(q)) for p, a, b, q in data["transitions"]],
            data["input_base"],
            data["output_base"],
        )


def _jsonable(state):
    if isinstance(state, tuple):
        return [_jsonable(x) for x in state]
    if isinstance(state, Aux):
        return [f"<{state.kind}>", _jsonable(state.ref), state.index]
    return state


def _unjson(state):
    if isinstance(state, list):
        if len(state) == 3 and isinstance(state[0], str) and state[0].startswith("<"):
            return Aux(state[0][1:-1], _unjson(state[1]), state[2])
        return tuple(_unjson(x) for x in state)
    return state


def identity_transducer(base: int) -> Transducer:
    """One state ``()`` with loops ``c/c`` for every digit: the machine T^0."""
    return Transducer({()}, {()}, {()}, [((), c, c, ()) for c in range(base)], base, base)


def empty_transducer(input_base: int, output_base: int | None = None) -> Transducer:
    return Transducer(set(), set(), set(), [], input_base, output_base or input_base)


def enumerate_relation(t: Transducer, max_input_len: int, max_output_len: int) -> set[tuple[Word, Word]]:
    """All accepted pairs ``(u, v)`` with ``|u| <= max_input_len`` and ``|v| <= max_output_len``."""
    if max_input_len < 0 or max_output_len < 0:
        raise ValueError("length bounds must be nonnegative")
    start = [(i, (), ()) for i in t.initial]
    seen = set(start)
    todo = deque(start)
    pairs = set()
    while todo:
        q, u, v = todo.popleft()
        if q in t.final:
            pairs.add((u, v))
        for tr in t.outgoing(q):
            u2 = u if tr.input is None else u + (tr.input,)
            v2 = v if tr.output is None else v + (tr.output,)
            if len(u2) > max_input_len or len(v2) > max_output_len:
                continue
            conf = (tr.target, u2, v2)
            if conf not in seen:
                seen.add(conf)
                todo.append(conf)
    return pairs


def inverse(t: Transducer) -> Transducer:
    return Transducer(
        t.states, t.initial, t.final,
        [(p, b, a, q) for p, a, b, q in t.transitions],
        t.output_base, t.input_base,
    )


def mirror(t: Transducer) -> Transducer:
    return Transducer(
        t.states, t.final, t.initial,
        [(q, a, b, p) for p, a, b, q in t.transitions],
        t.input_base, t.output_base,
    )


def compose(t: Transducer, t2: Transducer) -> Transducer:
    """Product machine realizing ``[[t]] ; [[t2]]`` (first ``t``, then ``t2``)."""
    if t.output_base != t2.input_base:
        raise ValueError(
            f"incompatible alphabets: output base {t.output_base} vs input base {t2.input_base}"
        )
    trans = []
    for p, a, b, q in t.transitions:
        if b is None:
            trans.extend(((p, p2), a, None, (q, p2)) for p2 in t2.states)
    for p2, a2, c, q2 in t2.transitions:
        if a2 is None:
            trans.extend(((p, p2), None, c, (p, q2)) for p in t.states)
    by_input = defaultdict(list)
    for tr in t2.transitions:
        if tr.input is not None:
            by_input[tr.input].append(tr)
    for p, a, b, q in t.transitions:
        if b is not None:
            for p2, _, c, q2 in by_input[b]:
                trans.append(((p, p2), a, c, (q, q2)))
    return Transducer(
        {(p, p2) for p in t.states for p2 in t2.states},
        {(i, i2) for i in t.initial for i2 in t2.initial},
        {(f, f2) for f in t.final for f2 in t2.final},
        trans,
        t.input_base,
        t2.output_base,
    )


def power(t: Transducer, n: int) -> Transducer:
    """``t`` composed with itself ``n`` times; states are flat tuples of length ``n``."""
    if n < 0:
        raise ValueError("power exponent must be nonnegative")
    if t.input_base != t.output_base:
        raise ValueError("power needs equal input and output alphabets")
    result = identity_transducer(t.input_base)
    for _ in range(n):
        result = compose(result, t).relabel(lambda s: s[0] + (s[1],))
    return result


def union(t: Transducer, t2: Transducer) -> Transducer:
    """Disjoint union; states become ``(0, q)`` and ``(1, q)``."""
    if (t.input_base, t.output_base) != (t2.input_base, t2.output_base):
        raise ValueError("incompatible alphabets")
    left = t.relabel(lambda q: (0, q))
    right = t2.relabel(lambda q: (1, q))
    return Transducer(
        left.states | right.states,
        left.initial | right.initial,
        left.final | right.final,
        left.transitions + right.transitions,
        t.input_base,
        t.output_base,
    )


# -- terminal form -----------------------------------------------------------


@dataclass(frozen=True)
class WordLanguage:
    """A regular language of output words, given by a small ε-NFA."""

    edges: tuple
    start: frozenset
    accept: frozenset

    @classmethod
    def of_word(cls, word: Word) -> "WordLanguage":
        word = tuple(word)
        edges = [(k, c, k + 1) for k, c in enumerate(word)]
        return cls(tuple(edges), frozenset({0}), frozenset({len(word)}))

    def _closure(self, states):
        eps = defaultdict(list)
        for p, c, q in self.edges:
            if c is None:
                eps[p].append(q)
        stack, seen = list(states), set(states)
        while stack:
            p = stack.pop()
            for q in eps[p]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    def __contains__(self, word) -> bool:
        current = self._closure(self.start)
        for c in word:
            current = self._closure({q for p, x, q in self.edges if p in current and x == c})
            if not current:
                return False
        return bool(current & self.accept)

    def words(self, max_len: int) -> set[Word]:
        out = defaultdict(list)
        for p, c, q in self.edges:
            out[p].append((c, q))
        start = [(s, ()) for s in self.start]
        seen = set(start)
        todo = deque(start)
        found = set()
        while todo:
            p, w = todo.popleft()
            if p in self.accept:
                found.add(w)
            for c, q in out[p]:
                w2 = w if c is None else w + (c,)
                if len(w2) <= max_len and (q, w2) not in seen:
                    seen.add((q, w2))
                    todo.append((q, w2))
        return found

    def is_empty(self) -> bool:
        return not self.words(len(self._nodes()))

    def _nodes(self):
        nodes = set(self.start) | set(self.accept)
        for p, _, q in self.edges:
            nodes.update((p, q))
        return nodes

    def single_word(self) -> Word | None:
        """The only word of the language, or ``None`` if it has zero or several."""
        n = len(self._nodes())
        ws = self.words(2 * n + 1)
        return next(iter(ws)) if len(ws) == 1 else None


@dataclass(frozen=True)
class TerminalForm:
    """A machine without ε-input moves plus a language of final words per state.

    ``transitions`` holds ``(p, a, L, q)`` where ``L`` is the language of
    outputs produced while reading the letter ``a``.  ``terminal`` maps the
    final states to their terminal languages.
    """

    states: frozenset
    initial: frozenset
    transitions: tuple
    terminal: dict
    input_base: int
    output_base: int

    def enumerate_relation(self, max_input_len: int, max_output_len: int) -> set[tuple[Word, Word]]:
        out = defaultdict(list)
        for p, a, lang, q in self.transitions:
            out[p].append((a, lang, q))
        start = [(i, (), ()) for i in self.initial]
        seen = set(start)
        todo = deque(start)
        pairs = set()
        while todo:
            q, u, v = todo.popleft()
            room = max_output_len - len(v)
            if q in self.terminal:
                pairs.update((u, v + w) for w in self.terminal[q].words(room))
            if len(u) == max_input_len:
                continue
            for a, lang, r in out[q]:
                for w in lang.words(room):
                    conf = (r, u + (a,), v + w)
                    if conf not in seen:
                        seen.add(conf)
                        todo.append(conf)
        return pairs


def _eps_reach(eps_edges, start) -> set:
    succ = defaultdict(list)
    for p, _, q in eps_edges:
        succ[p].append(q)
    seen, stack = {start}, [start]
    while stack:
        for q in succ[stack.pop()]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def to_terminal_form(t: Transducer) -> TerminalForm:
    """Remove ε-input transitions by folding ε-input paths into labels.

    ``p --a/L--> q`` where ``L`` is every ``v.b`` with ``p --ε/v-->* r --a/b--> q``;
    the terminal language of ``q`` is every ``v`` with ``q --ε/v-->* f``, ``f`` final.
    """
    eps_edges = tuple((p, b, q) for p, a, b, q in t.transitions if a is None)
    reach = {p: _eps_reach(eps_edges, p) for p in t.states}

    end = Aux("end", None)
    trans = []
    for p in sorted_states(t.states):
        letter_moves = defaultdict(list)
        for r in reach[p]:
            for tr in t.outgoing(r):
                if tr.input is not None:
                    letter_moves[(tr.input, tr.target)].append((r, tr.output))
        for (a, q), moves in letter_moves.items():
            edges = eps_edges + tuple((r, b, end) for r, b in moves)
            trans.append((p, a, WordLanguage(edges, frozenset({p}), frozenset({end})), q))

    terminal = {}
    for q in t.states:
        if reach[q] & t.final:
            terminal[q] = WordLanguage(eps_edges, frozenset({q}), t.final)
    return TerminalForm(t.states, t.initial, tuple(trans), terminal, t.input_base, t.output_base)


# -- the two small examples over {a, b} (a = 0, b = 1) -----------------------


def rotation_example() -> Transducer:
    """Realizes ``xu -> ux`` for a letter ``x`` and a word ``u`` over ``{a, b}``.

    The first letter is remembered in the state, the rest is copied, and the
    remembered letter is emitted by a final ε-input transition.
    """
    trans = []
    for x in (0, 1):
        p = f"p{x}"
        trans.append(("i", x, None, p))
        trans.extend((p, y, y, p) for y in (0, 1))
        trans.append((p, None, x, "f"))
    return Transducer({"i", "p0", "p1", "f"}, {"i"}, {"f"}, trans, 2, 2)


def swap_example() -> Transducer:
    """One state ``p`` with loops ``a/b`` and ``b/a``."""
    return Transducer({"p"}, {"p"}, {"p"}, [("p", 0, 1, "p"), ("p", 1, 0, "p")], 2, 2)


def compose_relations(r1, r2) -> set[tuple[Word, Word]]:
    """Relational composition of two explicit finite relations."""
    by_mid = defaultdict(set)
    for v, w in r2:
        by_mid[v].add(w)
    return {(u, w) for u, v in r1 for w in by_mid.get(v, ())}
