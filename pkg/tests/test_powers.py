import pytest

from syncfn.arith import COLLATZ, FabdParams, division_sync, iterate
from syncfn.numerals import decode_msd, encode_msd
from syncfn.powers import (
    check_power_equivalence, composed_power, counter_table, division_power, eta,
    explicit_power, explicit_power_accel, mu, section_int, section_word,
)
from syncfn.synchronized import identity_prefix, prefix_compose
from syncfn.verify import check_division_product, check_power_decomposition

PARAMS = [COLLATZ, FabdParams(5, 1, 2), FabdParams(2, 1, 3)]


def w(text):
    return tuple(int(c) for c in text)


def test_counters():
    assert eta(5, 1, 3, 1) == 2
    assert all(eta(3, 1, 0, q) == 0 for q in range(20))
    assert mu(COLLATZ, 2, 3) == 1
    table = counter_table(COLLATZ, 4)
    assert len(table) == 16 and all(0 <= v <= 4 for v in table.values())


def test_section_words():
    assert section_word(1, 2, 3) == w("100")
    assert section_int(w("100"), 2) == 1
    assert section_word(6, 2, 3) == w("011")
    assert section_word(0, 1, 2) == (0, 0)


def test_division_power_small_cases():
    zero = division_power(5, 2, 0)
    assert zero.states == {()}
    assert all(t.input == t.output[0] for t in zero.transitions)
    p = division_power(5, 2, 3)
    d = division_sync(5, 8)
    renamed = p.relabel(lambda x: section_int(x, 2))
    assert set(renamed.transitions) == set(d.transitions)


@pytest.mark.parametrize("a,d,d2", [(2, 2, 3), (3, 2, 2), (5, 2, 4)])
def test_division_product(a, d, d2):
    assert check_division_product(a, d, d2)


def test_division_power_is_iterated_composition():
    for a, d in [(5, 2), (6, 2), (3, 3)]:
        acc = identity_prefix(a)
        for n in range(1, 4):
            acc = prefix_compose(division_sync(a, d), acc).relabel(lambda s: (s[0],) + s[1])
            direct = division_power(a, d, n)
            assert acc.states == direct.states
            assert set(acc.transitions) == set(direct.transitions)


def test_accel_power_example():
    m = explicit_power_accel(5, 1, 3)
    assert m.terminal[w("100")] == w("04")
    # 000 -4/0-> 001 -2/2-> 011 -3/4-> 100
    state, trail = m.initial, []
    for c in w("423"):
        out, state = m.step(state, c)
        trail.append((out, state))
    assert trail == [(w("0"), w("001")), (w("2"), w("011")), (w("4"), w("100"))]
    assert m.apply(w("423")) == w("02404")
    assert decode_msd(w("02404"), 5) == 354


def test_collatz_square_terminal():
    assert explicit_power(COLLATZ, 2).terminal[w("11")] == w("5")


@pytest.mark.parametrize("params", PARAMS + [FabdParams.accelerated(3, 1), FabdParams.accelerated(5, 1)])
def test_terminal_contract(params):
    base = params.base
    for n in range(6):
        m = explicit_power(params, n)
        for state, word in m.terminal.items():
            i = section_int(state, params.divisor)
            assert decode_msd(word, base) == iterate(params, i, n)
            assert len(word) == mu(params, n, i)


@pytest.mark.parametrize("params", PARAMS)
def test_terminal_recursion(params):
    """The terminal words of section n+1 follow from those of section n."""
    d, a, b = params.d, params.a, params.b
    for n in range(4):
        small = explicit_power(params, n)
        big = explicit_power(params, n + 1)
        for i in range(d ** n):
            assert big.terminal[section_word(d * i, d, n + 1)] == small.terminal[section_word(i, d, n)]
            for j in range(1, d):
                (c,), k = small.step(section_word(i, d, n), a * j + b)
                assert big.terminal[section_word(d * i + j, d, n + 1)] == (c,) + small.terminal[k]


def test_accelerated_power_decomposition():
    for a, b in [(3, 1), (5, 1)]:
        for n in range(6):
            assert check_power_decomposition(FabdParams.accelerated(a, b), n, 8) == []


def test_general_power_decomposition():
    for params in [COLLATZ, FabdParams(2, 1, 3)]:
        for n in range(5):
            assert check_power_decomposition(params, n, 6) == []


def test_power_equivalence_reports():
    rep = check_power_equivalence(COLLATZ, 5, 10_000)
    assert rep.ok
    rep = check_power_equivalence(FabdParams.accelerated(5, 1), 3, 1000)
    assert rep.ok
    m = explicit_power(FabdParams.accelerated(5, 1), 3)
    assert decode_msd(m.apply(encode_msd(113, 5)), 5) == 354
    zero = check_power_equivalence(COLLATZ, 0, 500)
    assert zero.ok


def test_composed_power_matches_structure():
    for params in PARAMS:
        for n in range(4):
            e, c = explicit_power(params, n), composed_power(params, n)
            assert e.states == c.states
            assert set(e.transitions) == set(c.transitions)
            assert dict(e.terminal) == dict(c.terminal)


def test_state_limit(monkeypatch):
    monkeypatch.setenv("SYNCFN_STATE_LIMIT", "100")
    with pytest.raises(ValueError, match="exceed"):
        explicit_power(COLLATZ, 7)
    explicit_power(COLLATZ, 6)
