"""The maps ``n -> n/d`` (if ``d | n``) else ``a*n + b``, and the machines realizing them.

``FabdParams(a, b, d)`` names such a map.  With ``accel=True`` (``d == 2``
and ``a, b`` of equal parity) the odd branch is halved: ``(a*n + b) / 2``.

Every prefix machine here is a Euclidean division by ``divisor`` read most
significant digit first in base ``base``, plus one terminal digit per
nonzero remainder.  Both families share that description:

=========  ========  =========  ==========
family     base      divisor    feed digit
=========  ========  =========  ==========
general    a*d       d          b*d
accel      a         2          b
=========  ========  =========  ==========

The feed digit is the input that, read from remainder ``j``, leads back to
remainder ``0`` while emitting the odd-branch digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .layout import circular_positions
from .numerals import encode_lsd
from .synchronized import PrefixSeq, SuffixSeq


@dataclass(frozen=True)
class FabdParams:
    a: int
    b: int
    d: int
    accel: bool = False

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be natural numbers")
        if self.accel:
            if self.d != 2:
                raise ValueError("the accelerated map divides by 2")
            if (self.a - self.b) % 2:
                raise ValueError(f"acceleration needs a and b of the same parity, got {self.a}, {self.b}")

    @classmethod
    def accelerated(cls, a: int, b: int) -> "FabdParams":
        return cls(a, b, 2, accel=True)

    @property
    def base(self) -> int:
        return self.a if self.accel else self.a * self.d

    @property
    def divisor(self) -> int:
        return self.d

    @property
    def feed(self) -> int:
        return self.b if self.accel else self.b * self.d

    def require_prefix(self) -> None:
        """Prefix machines exist for ``0 <= b < a`` and ``a != 1``."""
        if not (0 <= self.b < self.a and self.a != 1):
            msg = f"prefix machines need 0 <= b < a and a != 1 (got a={self.a}, b={self.b})"
            if self.b >= self.a:
                msg += "; no prefix construction is known for b >= a"
            raise ValueError(msg)

    def __call__(self, n: int) -> int:
        return oracle_f(self, n)

    def __str__(self):
        if self.accel:
            return f"f'_{{{self.a},{self.b}}}"
        return f"f_{{{self.a},{self.b},{self.d}}}"


COLLATZ = FabdParams(3, 1, 2)


# -- oracles ------------------------------------------------------------------


def oracle_f(params: FabdParams, n: int) -> int:
    q, r = divmod(n, params.d)
    if r == 0:
        return q
    if params.accel:
        return (params.a * n + params.b) // 2
    return params.a * n + params.b


def oracle_f_accel(a: int, b: int, n: int) -> int:
    return oracle_f(FabdParams.accelerated(a, b), n)


def iterate(params: FabdParams, n: int, times: int) -> int:
    for _ in range(times):
        n = oracle_f(params, n)
    return n


def orbit(params: FabdParams, n: int, steps: int) -> list[int]:
    """``[n, f(n), ..., f^steps(n)]``."""
    out = [n]
    for _ in range(steps):
        n = oracle_f(params, n)
        out.append(n)
    return out


# -- multiplication (lsd first, base d) ---------------------------------------


def _mult_transitions(d, a, carries):
    trans = []
    for i in carries:
        for b in range(d):
            j, c = divmod(a * b + i, d)
            if j in carries:
                trans.append((i, b, (c,), j))
    return trans


def mult_sync(d: int, a: int) -> PrefixSeq:
    """Multiplication by ``a`` in base ``d``, least significant digit first.

    States are the carries ``0 .. a-1``; ``i --b/c--> j`` iff ``a*b + i = c + d*j``.
    Only carry 0 is final, so inputs need trailing zeros to flush the carry.
    """
    if d < 2:
        raise ValueError("base d must be > 1")
    if a < 1:
        raise ValueError("multiplier must be >= 1 (the carry set of a = 0 is empty)")
    carries = range(a)
    return PrefixSeq(set(carries), 0, {0: ()}, _mult_transitions(d, a, carries), d, d)


def mult_add_sync(d: int, a: int, b: int) -> PrefixSeq:
    """``n -> a*n + b`` in base ``d``, lsd first: start in carry ``b``."""
    if d < 2:
        raise ValueError("base d must be > 1")
    carries = range(max(a - 1, b) + 1)
    return PrefixSeq(set(carries), b, {0: ()}, _mult_transitions(d, a, carries), d, d)


def default_pad_limit(params: FabdParams) -> int:
    """Trailing zeros that always suffice to flush the carry of ``a*n + b``."""
    return max(len(encode_lsd(params.a + params.b, params.d)) + 1,
               math.ceil(math.log(max(params.a, 1), params.d)) + 2)


def suffix_fabd(params: FabdParams) -> SuffixSeq:
    """Suffix machine for ``f_{a,b,d}`` on lsd-first base-``d`` numerals.

    ``alpha --0/ε--> beta`` then copy (the division by ``d``), or a nonzero
    first digit starts the multiply-and-add from carry ``b``.
    """
    if params.accel:
        raise ValueError("the suffix construction realizes the plain map, not the accelerated one")
    d, a, b = params.d, params.a, params.b
    if d < 2:
        raise ValueError("suffix construction needs d > 1 (f_{a,b,1} is the identity)")
    carries = range(max(a - 1, b) + 1)
    mult = [(i, c, e, j) for i, c, (e,), j in _mult_transitions(d, a, carries)]
    start = [("alpha", c, e, j) for i, c, e, j in mult if i == b and c != 0]
    trans = [("alpha", 0, None, "beta")] + [("beta", c, c, "beta") for c in range(d)] + start + mult
    return SuffixSeq({"alpha", "beta", *carries}, "alpha", {0, "beta"}, trans, d, d)


# -- division (msd first, base a) ---------------------------------------------


def division_transitions(a: int, d: int, method: str = "equation") -> list:
    """Transitions ``i --b/c--> j`` with ``i*a + b = c*d + j`` of the division by ``d`` in base ``a``.

    ``method="equation"`` solves the equation for every ``(i, b)``;
    ``method="incremental"`` walks the sources in order and counts goals
    modulo ``d``, bumping the output at every wrap.
    """
    if a < 2 or d < 1:
        raise ValueError(f"division needs a > 1 and d > 0 (got a={a}, d={d})")
    if method == "equation":
        out = []
        for i in range(d):
            for b in range(a):
                c, j = divmod(i * a + b, d)
                out.append((i, b, c, j))
        return out
    if method == "incremental":
        out = []
        output = goal = 0
        for source in range(d):
            for inp in range(a):
                out.append((source, inp, output, goal))
                goal += 1
                if goal == d:
                    output += 1
                    goal = 0
        return out
    raise ValueError(f"unknown method {method!r}")


def division_sync(a: int, d: int, r: int = 0, method: str = "equation") -> PrefixSeq:
    """Division by ``d`` with remainder ``r`` in base ``a``: initial 0, final ``r``."""
    if not 0 <= r < d:
        raise ValueError(f"remainder {r} not in 0..{d - 1}")
    trans = [(i, b, (c,), j) for i, b, c, j in division_transitions(a, d, method)]
    return PrefixSeq(set(range(d)), 0, {r: ()}, trans, a, a, positions=circular_positions(d))


def _prefix_from_division(base, divisor, terminal):
    trans = [(i, b, (c,), j) for i, b, c, j in division_transitions(base, divisor)]
    return PrefixSeq(set(range(divisor)), 0, terminal, trans, base, base,
                     positions=circular_positions(divisor))


def prefix_accel(a: int, b: int) -> PrefixSeq:
    """Division by 2 in base ``a`` with final digit ``(a+b)/2`` on remainder 1."""
    if not (0 <= b < a and a > 1):
        raise ValueError(f"need 0 <= b < a and a > 1 (got a={a}, b={b})")
    if (a - b) % 2:
        raise ValueError("a and b must have the same parity")
    return _prefix_from_division(a, 2, {0: (), 1: ((a + b) // 2,)})


def prefix_fabd(params: FabdParams) -> PrefixSeq:
    """Division by ``d`` in base ``a*d`` with final digit ``a*j + b`` on remainder ``j > 0``."""
    if params.accel:
        return prefix_accel(params.a, params.b)
    params.require_prefix()
    a, b, d = params.a, params.b, params.d
    terminal = {0: ()}
    terminal.update({j: (a * j + b,) for j in range(1, d)})
    return _prefix_from_division(a * d, d, terminal)


def prefix_identity_case(d: int) -> PrefixSeq:
    """``f_{1,0,d}`` in base ``d``: a one-digit delay line ``i --j/i--> j``."""
    if d < 1:
        raise ValueError("d must be positive")
    terminal = {0: ()}
    terminal.update({i: (i,) for i in range(1, d)})
    trans = [(i, j, (i,), j) for i in range(d) for j in range(d)]
    return PrefixSeq(set(range(d)), 0, terminal, trans, d, d, positions=circular_positions(d))
