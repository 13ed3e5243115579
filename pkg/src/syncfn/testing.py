"""Random small prefix and suffix machines for property tests."""

from __future__ import annotations

import random

from .synchronized import PrefixSeq, SuffixSeq


def random_prefix(rng: random.Random, max_states: int = 4, input_base: int | None = None,
                  output_base: int | None = None, max_terminal: int = 2) -> PrefixSeq:
    """A prefix machine on states ``0 .. k-1``; some transitions and terminal words are missing."""
    k = rng.randint(1, max_states)
    ib = input_base or rng.randint(1, 3)
    ob = output_base or rng.randint(1, 3)
    trans = []
    for p in range(k):
        for a in range(ib):
            if rng.random() < 0.85:
                trans.append((p, a, (rng.randrange(ob),), rng.randrange(k)))
    terminal = {}
    for q in range(k):
        if rng.random() < 0.6:
            terminal[q] = tuple(rng.randrange(ob) for _ in range(rng.randint(0, max_terminal)))
    return PrefixSeq(set(range(k)), 0, terminal, trans, ib, ob)


def random_suffix(rng: random.Random, max_states: int = 4, input_base: int | None = None,
                  output_base: int | None = None) -> SuffixSeq:
    """A suffix machine on states ``0 .. k-1``.

    ε-outputs are drawn freely and then replaced by letters wherever they
    could follow a letter output, until no such transition is left.
    """
    k = rng.randint(1, max_states)
    ib = input_base or rng.randint(1, 3)
    ob = output_base or rng.randint(1, 3)
    trans = {}
    for p in range(k):
        for a in range(ib):
            if rng.random() < 0.85:
                out = None if rng.random() < 0.35 else rng.randrange(ob)
                trans[(p, a)] = (out, rng.randrange(k))
    changed = True
    while changed:
        changed = False
        after_letter = {q for (p, a), (b, q) in trans.items() if b is not None}
        for (p, a), (b, q) in trans.items():
            if b is None and p in after_letter:
                trans[(p, a)] = (rng.randrange(ob), q)
                changed = True
    final = {q for q in range(k) if rng.random() < 0.6}
    return SuffixSeq(set(range(k)), 0, final,
                     [(p, a, b, q) for (p, a), (b, q) in sorted(trans.items())], ib, ob)
