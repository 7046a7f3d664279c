"""Reduced-word arithmetic: examples and algebraic laws."""

import pytest
from hypothesis import given, strategies as st

from treebox.errors import MalformedWordError, OutOfRangeError, RankMismatchError
from treebox.words import (
    Word,
    concat,
    invert,
    left_quotient,
    letters_to_text,
    prefix,
    reduce,
    reduce_letters,
    text_to_letters,
)

letters2 = st.sampled_from([1, -1, 2, -2])
raw_words = st.lists(letters2, max_size=24)


def w(text):
    return Word.parse(text, 2)


def test_full_cancellation():
    assert reduce([1, -1], 2) == w("e")
    assert reduce([1, 2, -2, -1], 2) == w("e")
    assert reduce([1, 2, -1], 2) == w("abA")
    assert len(reduce([1, 2, -1], 2)) == 3


def test_concat_examples():
    assert w("ab") * w("Ba") == w("aa")
    assert w("a") * w("A") == w("e")
    assert w("ab") * w("e") == w("ab")


def test_invert_examples():
    assert invert(w("ab")) == w("BA")
    assert invert(w("e")) == w("e")
    assert invert(w("aBa")) == w("AbA")


def test_prefix_examples():
    assert prefix(w("abb"), 2) == w("ab")
    assert prefix(w("abb"), 0) == w("e")
    assert prefix(w("abb"), 3) == w("abb")
    with pytest.raises(OutOfRangeError):
        prefix(w("abb"), 4)


def test_malformed_letters():
    with pytest.raises(MalformedWordError):
        reduce([3], 2)
    with pytest.raises(MalformedWordError):
        reduce([0], 2)
    with pytest.raises(MalformedWordError):
        Word((1, -1), 2)  # not reduced


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        Word((1,), 2) * Word((1,), 3)


def test_text_round_trip():
    for text in ("e", "a", "AbA", "aaBB", "ab"):
        assert letters_to_text(text_to_letters(text, 2)) == text
    assert text_to_letters("a3B2", 2) == (1, 1, 1, -2, -2)
    with pytest.raises(MalformedWordError):
        text_to_letters("z", 2)


@given(raw_words)
def test_reduce_idempotent(raw):
    once = reduce_letters(raw)
    assert reduce_letters(once) == once


@given(raw_words, raw_words, raw_words)
def test_concat_associative(x, y, z):
    u, v, t = reduce(x, 2), reduce(y, 2), reduce(z, 2)
    assert (u * v) * t == u * (v * t)


@given(raw_words)
def test_inverse_cancels(raw):
    u = reduce(raw, 2)
    assert len(concat(u, invert(u))) == 0


@given(raw_words, st.integers(min_value=0, max_value=24))
def test_prefix_splits(raw, k):
    u = reduce(raw, 2)
    k = min(k, len(u))
    head = u.prefix(k)
    assert len(head) == k
    assert head * u.suffix_after(k) == u


@given(raw_words, raw_words)
def test_left_quotient_agrees(x, y):
    g, v = reduce_letters(x), reduce_letters(y)
    assert left_quotient(g, v) == (invert(reduce(x, 2)) * reduce(y, 2)).letters
