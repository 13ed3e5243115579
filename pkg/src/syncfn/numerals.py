"""Positional encodings of natural numbers as digit words.

A word is a tuple of ints.  ``msd`` words put the most significant digit
first (the usual way of writing numbers), ``lsd`` words put it last.
Zero is encoded by the empty word.
"""

from __future__ import annotations

from typing import Iterable

Word = tuple[int, ...]

MSD = "msd"
LSD = "lsd"


def _check_base(base: int) -> None:
    if base < 2:
        raise ValueError(f"base must be > 1, got {base}")


def _check_digits(word: Iterable[int], base: int) -> None:
    for c in word:
        if not 0 <= c < base:
            raise ValueError(f"digit {c} out of range for base {base}")


def encode_lsd(n: int, base: int) -> Word:
    _check_base(base)
    if n < 0:
        raise ValueError("negative integers are not representable")
    digits = []
    while n:
        n, c = divmod(n, base)
        digits.append(c)
    return tuple(digits)


def encode_msd(n: int, base: int) -> Word:
    return encode_lsd(n, base)[::-1]


def decode_msd(word: Iterable[int], base: int) -> int:
    word = tuple(word)
    _check_digits(word, base)
    n = 0
    for c in word:
        n = n * base + c
    return n


def decode_lsd(word: Iterable[int], base: int) -> int:
    return decode_msd(tuple(word)[::-1], base)


def encode(n: int, base: int, order: str = MSD) -> Word:
    return encode_msd(n, base) if order == MSD else encode_lsd(n, base)


def decode(word: Iterable[int], base: int, order: str = MSD) -> int:
    return decode_msd(word, base) if order == MSD else decode_lsd(word, base)


def pad_msd(word: Word, length: int) -> Word:
    """Left-pad an msd word with zeros up to ``length`` digits."""
    if len(word) > length:
        raise ValueError(f"word {word} longer than {length}")
    return (0,) * (length - len(word)) + tuple(word)


def pad_lsd(word: Word, length: int) -> Word:
    if len(word) > length:
        raise ValueError(f"word {word} longer than {length}")
    return tuple(word) + (0,) * (length - len(word))


def lift_relation(pairs, base: int, order: str = MSD, output_base: int | None = None) -> set[tuple[int, int]]:
    """Decode both tapes of a word relation into a relation on integers."""
    output_base = base if output_base is None else output_base
    return {(decode(u, base, order), decode(v, output_base, order)) for u, v in pairs}


def format_word(word: Iterable[int], base: int = 10, empty: str = "") -> str:
    """Digit strings for bases up to 10, comma separated lists above."""
    word = tuple(word)
    if not word:
        return empty
    if base <= 10:
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def parse_word(text: str, base: int = 10) -> Word:
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    if "," in text or base > 10:
        word = tuple(int(c) for c in text.split(","))
    else:
        word = tuple(int(c) for c in text)
    _check_digits(word, base)
    return word
