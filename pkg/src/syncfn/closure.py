"""The infinite prefix transducer realizing every power ``f^n`` at once.

States are words over ``0 .. d-1``.  The words of length ``n`` form section
``n``: the division by ``d**n`` in base ``base``, entered at ``0^n``.
Transitions are computed on demand by cascading the input digit through
the ``n`` one-digit divisions, so no arithmetic on ``d**n`` is ever done.

The terminal word of a state is defined by recursion on its length:
a leading ``0`` is dropped, and a state ``iu`` with ``i > 0`` reads the feed
digit, lands on a word ``0v`` and emits one digit ``c`` before continuing
with ``v``.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass

from .arith import FabdParams, iterate
from .numerals import decode_msd, encode_msd
from .powers import check_state_count, section_word
from .synchronized import PrefixSeq


class ClosureInvariantError(AssertionError):
    """The feed digit did not bring a state back to a word starting with 0."""


class _LRU:
    def __init__(self, budget: int):
        self.budget = budget
        self._data = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            value = self._data.get(key)
            if value is not None:
                self._data.move_to_end(key)
            return value

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.budget:
                self._data.popitem(last=False)

    def __len__(self):
        return len(self._data)


@dataclass
class CycleWitness:
    """``0^n --uv / 0^{|v|}u--> x`` where ``v`` is the terminal word of ``x``."""

    u: tuple
    v: tuple
    output: tuple
    end: tuple


@dataclass
class CycleHit:
    k: int
    orbit: list
    witness: CycleWitness | None


@dataclass
class Section:
    """One section as a finite prefix machine plus the edges into the section below.

    ``cone_edges`` holds ``(source, digit or None, target)``: ``0u -> u``
    unlabeled and ``iu -> v`` labeled by the emitted digit.
    """

    n: int
    machine: PrefixSeq
    cone_edges: list


class ClosureMachine:
    def __init__(self, params: FabdParams, memo_budget: int = 2**20):
        params.require_prefix()
        self.params = params
        self.base = params.base
        self.d = params.divisor
        self.feed = params.feed
        self._memo = _LRU(memo_budget)

    def step(self, state: tuple, digit: int) -> tuple[int, tuple]:
        """Read ``digit`` from ``state``; returns ``(output digit, next state)``."""
        base, d = self.base, self.d
        e = digit
        nxt = []
        for x in state:
            e, j = divmod(x * base + e, d)
            nxt.append(j)
        return e, tuple(nxt)

    def run(self, word, n: int) -> tuple[tuple, tuple]:
        """Output and end state of the path reading ``word`` from ``0^n``."""
        state = (0,) * n
        out = []
        for c in word:
            o, state = self.step(state, c)
            out.append(o)
        return tuple(out), state

    def terminal(self, state: tuple) -> tuple:
        state = tuple(state)
        chain = []
        w = state
        tail = ()
        while w:
            hit = self._memo.get(w)
            if hit is not None:
                tail = hit
                break
            if w[0] == 0:
                chain.append((w, None))
                w = w[1:]
                continue
            c, nxt = self.step(w, self.feed)
            if nxt[0] != 0:
                raise ClosureInvariantError(f"state {w} read {self.feed} and reached {nxt}")
            chain.append((w, c))
            w = nxt[1:]
        for w, c in reversed(chain):
            if c is not None:
                tail = (c,) + tail
            self._memo.put(w, tail)
        return tail

    def eval_iterations(self, word, n: int) -> tuple:
        out, end = self.run(word, n)
        return out + self.terminal(end)

    def eval_integer(self, k: int, n: int) -> int:
        return decode_msd(self.eval_iterations(encode_msd(k, self.base), n), self.base)

    def section_export(self, n: int) -> Section:
        d = self.d
        size = d ** n
        check_state_count(size)
        words = [section_word(i, d, n) for i in range(size)]
        trans = []
        for w in words:
            for b in range(self.base):
                c, nxt = self.step(w, b)
                trans.append((w, b, (c,), nxt))
        terminal = {w: self.terminal(w) for w in words}
        edges = []
        if n:
            for w in words:
                if w[0] == 0:
                    edges.append((w, None, w[1:]))
                else:
                    c, nxt = self.step(w, self.feed)
                    edges.append((w, c, nxt[1:]))
        machine = PrefixSeq(set(words), (0,) * n, terminal, trans, self.base, self.base)
        return Section(n, machine, edges)

    def circularity_witness(self, k: int, n: int, max_len: int = 64) -> CycleWitness | None:
        """Split ``encode(k) = uv`` so that the path from ``0^n`` outputs ``0^{|v|}u``
        and ends in a state whose terminal word is ``v``."""
        word = encode_msd(k, self.base)
        if len(word) > max_len:
            return None
        out, end = self.run(word, n)
        v = self.terminal(end)
        if len(v) > len(word):
            return None
        u = word[: len(word) - len(v)]
        if out != (0,) * len(v) + u or word[len(u):] != v:
            return None
        return CycleWitness(u, v, out, end)

    def find_cycles(self, n: int, bound: int, max_witness_len: int = 64) -> list[CycleHit]:
        """Every ``k < bound`` with ``f^n(k) = k``, its orbit and a path witness."""
        if n < 1 or bound < 1:
            raise ValueError("find_cycles needs n >= 1 and bound >= 1")
        hits = []
        for k in range(bound):
            if self.eval_integer(k, n) == k:
                orbit = [k]
                for _ in range(n):
                    orbit.append(iterate(self.params, orbit[-1], 1))
                hits.append(CycleHit(k, orbit, self.circularity_witness(k, n, max_witness_len)))
        return hits


def step(m: ClosureMachine, state, digit):
    return m.step(tuple(state), digit)


def terminal(m: ClosureMachine, state):
    return m.terminal(state)


def eval_integer(m: ClosureMachine, k: int, n: int) -> int:
    return m.eval_integer(k, n)


def section_export(m: ClosureMachine, n: int) -> Section:
    return m.section_export(n)


def find_cycles(m: ClosureMachine, n: int, bound: int) -> list[CycleHit]:
    return m.find_cycles(n, bound)


__all__ = [
    "ClosureMachine", "ClosureInvariantError", "CycleHit", "CycleWitness", "Section",
    "step", "terminal", "eval_integer", "section_export", "find_cycles",
]
