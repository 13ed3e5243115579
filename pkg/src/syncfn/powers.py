"""Explicit n-th powers of the prefix machines.

The n-fold composition of the division by ``d`` is the division by ``d**n``
once a product state ``(x_1, ..., x_n)`` is read as the lsd-first numeral
``x_1 + x_2*d + ... + x_n*d**(n-1)``.  States of the machines built here are
those words (tuples of length ``n``).  The terminal word of state ``i`` is the
msd-first numeral of ``f^n(i)`` left-padded to the number of odd-branch steps
in the first ``n`` points of the orbit of ``i``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .arith import FabdParams, iterate, oracle_f, prefix_fabd
from .numerals import decode_lsd, decode_msd, encode_lsd, encode_msd, pad_lsd, pad_msd
from .synchronized import PrefixSeq, identity_prefix, prefix_compose

DEFAULT_STATE_LIMIT = 10**6


def state_limit() -> int:
    return int(os.environ.get("SYNCFN_STATE_LIMIT", DEFAULT_STATE_LIMIT))


def check_state_count(count: int) -> None:
    limit = state_limit()
    if count > limit:
        raise ValueError(f"{count} states exceed the limit of {limit} (set SYNCFN_STATE_LIMIT)")


def section_word(i: int, d: int, n: int) -> tuple[int, ...]:
    """The lsd-first word of length ``n`` naming integer state ``i``."""
    if d == 1:
        return (0,) * n
    return pad_lsd(encode_lsd(i, d), n)


def section_int(word, d: int) -> int:
    return 0 if d == 1 else decode_lsd(word, d)


# -- counters -----------------------------------------------------------------


def mu(params: FabdParams, n: int, q: int) -> int:
    """How many of ``q, f(q), ..., f^{n-1}(q)`` are not multiples of ``d``."""
    count = 0
    for _ in range(n):
        if q % params.d:
            count += 1
        q = oracle_f(params, q)
    return count


def eta(a: int, b: int, n: int, q: int) -> int:
    """Odd points among the first ``n`` of the accelerated orbit of ``q``."""
    return mu(FabdParams.accelerated(a, b), n, q)


def counter_table(params: FabdParams, n: int) -> dict[int, int]:
    return {q: mu(params, n, q) for q in range(params.d ** n)}


# -- machines -----------------------------------------------------------------


def division_power(a: int, d: int, n: int) -> PrefixSeq:
    """Division by ``d**n`` in base ``a`` with states renamed to length-``n`` words.

    ``x --b/c--> y`` iff ``[x]*a + b = c*d**n + [y]`` (lsd-first values).
    Initial and only final state: ``0^n``.
    """
    if a < 2 or d < 1 or n < 0:
        raise ValueError("division_power needs a > 1, d > 0, n >= 0")
    size = d ** n
    check_state_count(size)
    words = [section_word(i, d, n) for i in range(size)]
    trans = []
    for i in range(size):
        for b in range(a):
            c, j = divmod(i * a + b, size)
            trans.append((words[i], b, (c,), words[j]))
    zero = (0,) * n
    return PrefixSeq(set(words), zero, {zero: ()}, trans, a, a)


def power_terminal_word(params: FabdParams, n: int, i: int) -> tuple[int, ...]:
    value = encode_msd(iterate(params, i, n), params.base)
    length = mu(params, n, i)
    if len(value) > length:
        raise ValueError(
            f"f^{n}({i}) = {iterate(params, i, n)} needs {len(value)} digits but only "
            f"{length} odd-branch steps were taken"
        )
    return pad_msd(value, length)


def explicit_power(params: FabdParams, n: int) -> PrefixSeq:
    """Prefix machine for ``f^n``: the division by ``d**n`` plus padded terminal words."""
    params.require_prefix()
    machine = division_power(params.base, params.divisor, n)
    d = params.divisor
    terminal = {w: power_terminal_word(params, n, section_int(w, d)) for w in machine.states}
    return machine.replace(terminal=terminal)


def explicit_power_accel(a: int, b: int, n: int) -> PrefixSeq:
    return explicit_power(FabdParams.accelerated(a, b), n)


def composed_power(params: FabdParams, n: int) -> PrefixSeq:
    """``G^n`` built by ``n`` prefix compositions; states are flat tuples.

    The first component of a state belongs to the first machine applied.
    """
    base = prefix_fabd(params)
    result = identity_prefix(params.base)
    for _ in range(n):
        result = prefix_compose(base, result).relabel(lambda s: (s[0],) + s[1])
    return result


# -- equivalence check --------------------------------------------------------


@dataclass
class PowerReport:
    params: FabdParams
    n: int
    bound: int
    structural_ok: bool = True
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.structural_ok and not self.mismatches


def check_power_equivalence(params: FabdParams, n: int, bound: int) -> PowerReport:
    """Compare explicit power, composed power and iterated oracle on ``0 .. bound-1``.

    Mismatches are ``(k, expected, explicit, composed)`` with decoded values.
    """
    explicit = explicit_power(params, n)
    composed = composed_power(params, n)
    report = PowerReport(params, n, bound)
    report.structural_ok = (
        explicit.states == composed.states
        and set(explicit.transitions) == set(composed.transitions)
        and dict(explicit.terminal) == dict(composed.terminal)
    )
    base = params.base
    for k in range(bound):
        word = encode_msd(k, base)
        expected = iterate(params, k, n)
        got = [m.apply(word) for m in (explicit, composed)]
        got = [None if w is None else decode_msd(w, base) for w in got]
        if got[0] != expected or got[1] != expected:
            report.mismatches.append((k, expected, got[0], got[1]))
    return report
