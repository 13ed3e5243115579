"""Oracle sweeps: run a machine on ``0 .. bound-1`` and compare with arithmetic."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .arith import (
    FabdParams, default_pad_limit, division_sync, iterate, mult_add_sync, oracle_f, prefix_fabd,
    suffix_fabd,
)
from .closure import ClosureMachine
from .numerals import decode_lsd, decode_msd, encode_lsd, encode_msd, pad_lsd, pad_msd
from .powers import check_power_equivalence, mu
from .synchronized import apply_suffix, prefix_compose

KINDS = ("prefix", "suffix", "power", "closure")


@dataclass
class VerifyReport:
    kind: str
    params: FabdParams
    n: int
    bound: int
    mismatches: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.mismatches)} mismatches)"
        return f"verify {self.kind} {self.params} n={self.n} bound={self.bound}: {status} in {self.elapsed:.2f}s"


def _sweep_prefix(params, n, bound, out):
    m = prefix_fabd(params)
    base = params.base
    for k in range(bound):
        w = m.apply(encode_msd(k, base))
        got = None if w is None else decode_msd(w, base)
        want = oracle_f(params, k)
        if got != want:
            out.append((k, want, got))


def _sweep_suffix(params, n, bound, out):
    m = suffix_fabd(params)
    pad = default_pad_limit(params)
    d = params.d
    for k in range(bound):
        w = apply_suffix(m, encode_lsd(k, d), pad)
        got = None if w is None else decode_lsd(w, d)
        want = oracle_f(params, k)
        if got != want:
            out.append((k, want, got))


def _sweep_power(params, n, bound, out):
    report = check_power_equivalence(params, n, bound)
    if not report.structural_ok:
        out.append((None, "explicit power", "composed power differs"))
    for k, want, explicit, composed in report.mismatches:
        out.append((k, want, explicit if explicit != want else composed))


def _sweep_closure(params, n, bound, out):
    m = ClosureMachine(params)
    for k in range(bound):
        got = m.eval_integer(k, n)
        want = iterate(params, k, n)
        if got != want:
            out.append((k, want, got))


_SWEEPS = {
    "prefix": _sweep_prefix,
    "suffix": _sweep_suffix,
    "power": _sweep_power,
    "closure": _sweep_closure,
}


def run_verify(kind: str, params: FabdParams, n: int = 1, bound: int = 1000) -> VerifyReport:
    """Mismatches are ``(input, expected, got)``; ``got`` is ``None`` when rejected."""
    if kind not in _SWEEPS:
        raise ValueError(f"unknown verify kind {kind!r}; expected one of {', '.join(KINDS)}")
    if bound < 0 or n < 0:
        raise ValueError("bound and n must be nonnegative")
    report = VerifyReport(kind, params, n, bound)
    start = time.perf_counter()
    _SWEEPS[kind](params, n, bound, report.mismatches)
    report.elapsed = time.perf_counter() - start
    return report


# -- path and decomposition identities ----------------------------------------
#
# For a fixed start state and input word each identity below has exactly one
# solution (output word, end state), so comparing the machine's unique path
# with that solution checks "path exists iff the identity holds" exhaustively.


def _all_words(base, length):
    return itertools.product(range(base), repeat=length)


def check_path_multiplication(d: int, a: int, carries: int = 7, max_len: int = 4) -> list:
    """``i --u/v--> j`` in the carry machine iff ``[u]*a + i = [v] + j*d^|u|`` (lsd first)."""
    m = mult_add_sync(d, a, carries - 1)
    bad = []
    for i in range(carries):
        for n in range(max_len + 1):
            for u in _all_words(d, n):
                j, v = divmod(decode_lsd(u, d) * a + i, d ** n)
                want = (pad_lsd(encode_lsd(v, d), n), j) if j in m.states else None
                if m.run(u, i) != want:
                    bad.append((i, u, want, m.run(u, i)))
    return bad


def check_path_division(a: int, d: int, max_len: int = 4) -> list:
    """``i --u/v--> j`` in the division machine iff ``i*a^|u| + [u] = [v]*d + j`` (msd first)."""
    m = division_sync(a, d)
    bad = []
    for i in range(d):
        for n in range(max_len + 1):
            for u in _all_words(a, n):
                v, j = divmod(i * a ** n + decode_msd(u, a), d)
                want = (pad_msd(encode_msd(v, a), n), j)
                if m.run(u, i) != want:
                    bad.append((i, u, want, m.run(u, i)))
    return bad


def check_division_product(a: int, d: int, d2: int) -> bool:
    """Dividing by ``d`` then by ``d2`` is dividing by ``d*d2``, renaming ``(i, i2)`` to ``i + i2*d``."""
    composed = prefix_compose(division_sync(a, d), division_sync(a, d2))
    renamed = composed.relabel(lambda s: s[0] + s[1] * d)
    direct = division_sync(a, d * d2)
    return renamed.states == direct.states and set(renamed.transitions) == set(direct.transitions)


def check_power_decomposition(params: FabdParams, n: int, p_bound: int) -> list:
    """``f^n(p*d^n + q) = p*base^count(q) + f^n(q)`` and ``count(p*d^n + q) = count(q)``."""
    d, base = params.divisor, params.base
    bad = []
    for q in range(d ** n):
        cq, fq = mu(params, n, q), iterate(params, q, n)
        for p in range(p_bound):
            x = p * d ** n + q
            if iterate(params, x, n) != p * base ** cq + fq or mu(params, n, x) != cq:
                bad.append((p, q))
    return bad
