import threading

import pytest

from syncfn.arith import COLLATZ, FabdParams, iterate, prefix_fabd
from syncfn.closure import ClosureMachine, find_cycles, section_export, step, terminal
from syncfn.numerals import encode_msd
from syncfn.powers import division_power, explicit_power, section_int

PARAMS = [COLLATZ, FabdParams(5, 1, 2), FabdParams(2, 1, 3)]


def w(text):
    return tuple(int(c) for c in text)


def test_step_examples():
    m = ClosureMachine(COLLATZ)
    assert step(m, (), 4) == (4, ())
    assert step(m, w("11"), 2) == (5, w("00"))


@pytest.mark.parametrize("params", PARAMS)
def test_step_matches_division_power(params):
    m = ClosureMachine(params)
    for n in range(4):
        p = division_power(params.base, params.divisor, n)
        for s, a, (c,), t in p.transitions:
            assert m.step(s, a) == (c, t)


def test_terminal_examples():
    m = ClosureMachine(COLLATZ)
    assert terminal(m, w("1")) == w("4")
    assert terminal(m, w("11")) == w("5")
    assert all(terminal(m, (0,) * n) == () for n in range(10))


def test_eval_examples():
    m = ClosureMachine(COLLATZ)
    assert m.eval_integer(7, 2) == 11
    assert all(m.eval_integer(k, 0) == k for k in range(100))
    assert ClosureMachine(FabdParams.accelerated(5, 1)).eval_integer(113, 3) == 354


def test_eval_against_oracle():
    for params in PARAMS:
        m = ClosureMachine(params)
        for n in range(9):
            for k in range(0, 10_000, 7):
                assert m.eval_integer(k, n) == iterate(params, k, n)


@pytest.mark.parametrize("params", PARAMS)
def test_sections_equal_explicit_powers(params):
    m = ClosureMachine(params)
    for n in range(5):
        sec = section_export(m, n).machine
        e = explicit_power(params, n)
        assert sec.states == e.states
        assert set(sec.transitions) == set(e.transitions)
        assert dict(sec.terminal) == dict(e.terminal)


def test_section_examples():
    m = ClosureMachine(COLLATZ)
    one = m.section_export(1).machine.relabel(lambda s: section_int(s, 2))
    g = prefix_fabd(COLLATZ)
    assert set(one.transitions) == set(g.transitions)
    assert dict(one.terminal) == dict(g.terminal)
    sec = ClosureMachine(FabdParams.accelerated(5, 1)).section_export(3)
    assert len(sec.machine.states) == 8
    assert sec.machine.terminal[w("100")] == w("04")
    zero = m.section_export(0)
    assert zero.machine.states == {()}
    assert zero.cone_edges == []


def test_cone_edges():
    m = ClosureMachine(COLLATZ)
    sec = m.section_export(2)
    edges = {p: (c, q) for p, c, q in sec.cone_edges}
    assert edges[w("01")] == (None, w("1"))
    assert edges[w("11")] == (5, w("0"))
    assert len(sec.cone_edges) == 4


def test_successor_always_starts_with_zero():
    for params in PARAMS + [FabdParams.accelerated(3, 1), FabdParams(7, 3, 4)]:
        m = ClosureMachine(params)
        for n in range(7 if params.d == 2 else 5):
            for state in m.section_export(n).machine.states:
                m.terminal(state)


def test_refuses_b_at_least_a():
    with pytest.raises(ValueError, match="b >= a"):
        ClosureMachine(FabdParams(3, 5, 2))


def test_memo_is_bounded_and_consistent():
    m = ClosureMachine(COLLATZ, memo_budget=16)
    fresh = ClosureMachine(COLLATZ)
    for k in range(2000):
        assert m.eval_integer(k, 6) == fresh.eval_integer(k, 6)
    assert len(m._memo) <= 16


def test_concurrent_terminal_lookups():
    m = ClosureMachine(COLLATZ, memo_budget=64)
    states = list(m.section_export(8).machine.states)
    expected = {s: ClosureMachine(COLLATZ).terminal(s) for s in states}
    errors = []

    def work(chunk):
        for s in chunk:
            if m.terminal(s) != expected[s]:
                errors.append(s)

    threads = [threading.Thread(target=work, args=(states[k::4],)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []


def test_cycles_collatz():
    hits = find_cycles(ClosureMachine(COLLATZ), 3, 100)
    assert [h.k for h in hits] == [0, 1, 2, 4]
    for h in hits:
        assert h.orbit[0] == h.orbit[-1] == h.k
        assert h.witness is not None
    by_k = {h.k: h.witness for h in hits}
    assert by_k[1].end == w("100")
    assert by_k[2].end == w("010")
    assert by_k[4].end == w("001")


def test_cycles_accelerated():
    hits = ClosureMachine(FabdParams.accelerated(3, 1)).find_cycles(2, 100)
    assert [h.k for h in hits] == [0, 1, 2]
    for h in hits:
        x = h.witness
        assert x is not None
        assert x.u + x.v == encode_msd(h.k, 3)
        assert x.output == (0,) * len(x.v) + x.u


def test_cycles_n_one():
    hits = ClosureMachine(FabdParams(5, 3, 2)).find_cycles(1, 200)
    assert [h.k for h in hits] == [0]
    with pytest.raises(ValueError):
        ClosureMachine(COLLATZ).find_cycles(0, 10)
