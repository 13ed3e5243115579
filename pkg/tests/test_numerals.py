import random

import pytest
from hypothesis import given, strategies as st

from syncfn.numerals import (
    LSD, MSD, decode, decode_lsd, decode_msd, encode, encode_lsd, encode_msd, format_word,
    lift_relation, pad_lsd, pad_msd, parse_word,
)


def w(text):
    return tuple(int(c) for c in text)


def test_msd_examples():
    assert encode_msd(113, 5) == w("423")
    assert decode_msd(w("02404"), 5) == 354
    assert encode_msd(0, 7) == ()
    assert decode_msd((), 7) == 0


def test_lsd_examples():
    assert encode_lsd(6, 2) == w("011")
    assert decode_lsd(w("11100"), 2) == 7


def test_lsd_is_reversed_msd():
    rng = random.Random(5)
    for _ in range(1000):
        base = rng.randint(2, 10)
        word = tuple(rng.randrange(base) for _ in range(rng.randint(0, 12)))
        assert decode_lsd(word, base) == decode_msd(word[::-1], base)


def test_round_trip_small_range():
    for base in range(2, 11):
        for n in range(0, 100_000, 97):
            assert decode_msd(encode_msd(n, base), base) == n
            assert decode_lsd(encode_lsd(n, base), base) == n


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=2, max_value=40))
def test_round_trip_property(n, base):
    for order in (MSD, LSD):
        assert decode(encode(n, base, order), base, order) == n


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=2, max_value=10),
       st.integers(min_value=0, max_value=5))
def test_zero_padding_is_harmless(n, base, extra):
    msd = encode_msd(n, base)
    lsd = encode_lsd(n, base)
    assert decode_msd(pad_msd(msd, len(msd) + extra), base) == n
    assert decode_lsd(pad_lsd(lsd, len(lsd) + extra), base) == n


def test_canonical_form_has_no_leading_zero():
    for n in range(1, 500):
        assert encode_msd(n, 3)[0] != 0
        assert encode_lsd(n, 3)[-1] != 0


def test_bad_digits_and_bases():
    with pytest.raises(ValueError):
        decode_msd((1, 5), 5)
    with pytest.raises(ValueError):
        decode_lsd((2,), 2)
    with pytest.raises(ValueError):
        encode_msd(3, 1)
    with pytest.raises(ValueError):
        encode_lsd(-1, 2)


def test_lift_relation():
    assert lift_relation({((), ())}, 2) == {(0, 0)}
    pairs = {(w("011"), w("11")), (w("111"), w("01101"))}
    assert lift_relation(pairs, 2, LSD) == {(6, 3), (7, 22)}
    mirrored = {(u[::-1], v[::-1]) for u, v in pairs}
    assert lift_relation(pairs, 2, LSD) == lift_relation(mirrored, 2, MSD)


def test_format_and_parse():
    assert format_word(w("423"), 5) == "423"
    assert format_word((), 5, empty="ε") == "ε"
    assert format_word((11, 3), 12) == "11,3"
    assert parse_word("11,3", 12) == (11, 3)
    assert parse_word("ε", 2) == ()
    assert parse_word("0110", 2) == w("0110")
    with pytest.raises(ValueError):
        parse_word("3", 2)
