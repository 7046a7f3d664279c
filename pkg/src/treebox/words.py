"""Reduced words in a free group F_n: the address space for tree vertices.

A letter is a nonzero int: ``+i`` is the i-th generator, ``-i`` its inverse
(1-based, ``i <= rank``).  A word is a tuple of letters with no adjacent
inverse pair; the empty tuple is the identity ``e``.  Words double as vertex
addresses in the Cayley tree of F_n, where the geodesic from ``e`` to a word
runs through its reduced prefixes.

Text syntax: generator ``i`` prints as the i-th lowercase ASCII letter, its
inverse as the uppercase letter, and the identity as ``"e"``.  The parser
additionally accepts a repeat count after a letter (``"a3B2"`` == ``"aaaBB"``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import MalformedWordError, OutOfRangeError, RankMismatchError

Letters = tuple  # tuple[int, ...]; bare alias keeps hot signatures light

_MAX_NAMED_RANK = 26


def letter_key(x: int) -> tuple:
    """Sort key putting a < a^-1 < b < b^-1 < ...  (generator index, then sign)."""
    return (abs(x), x < 0)


def shortlex_key(letters: Sequence[int]) -> tuple:
    """Total order used everywhere a deterministic 'least' choice is needed."""
    return (len(letters), tuple(letter_key(x) for x in letters))


def check_letters(letters: Iterable[int], rank: int) -> None:
    for x in letters:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise MalformedWordError(f"letter {x!r} is not in a rank-{rank} alphabet")


def reduce_letters(letters: Sequence[int]) -> Letters:
    """Free reduction: cancel adjacent inverse pairs until none remain."""
    out: list = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def concat_letters(*parts: Sequence[int]) -> Letters:
    merged: list = []
    for part in parts:
        for x in part:
            if merged and merged[-1] == -x:
                merged.pop()
            else:
                merged.append(x)
    return tuple(merged)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def left_quotient(g: Sequence[int], v: Sequence[int]) -> Letters:
    """Reduced form of g^-1 v.  Cancellation is exactly the common prefix."""
    c = 0
    m = min(len(g), len(v))
    while c < m and g[c] == v[c]:
        c += 1
    return tuple(-x for x in reversed(g[c:])) + tuple(v[c:])


def power(letter: int, n: int) -> Letters:
    """letter^n as a reduced word; negative n flips the letter."""
    if n >= 0:
        return (letter,) * n
    return (-letter,) * (-n)


def letters_to_text(letters: Sequence[int]) -> str:
    if not letters:
        return "e"
    pieces = []
    for x in letters:
        i = abs(x)
        if i > _MAX_NAMED_RANK:
            raise MalformedWordError(f"no letter name for generator {i} (max {_MAX_NAMED_RANK})")
        ch = chr(ord("a") + i - 1)
        pieces.append(ch if x > 0 else ch.upper())
    return "".join(pieces)


def text_to_letters(text: str, rank: int) -> Letters:
    """Parse word text; accepts optional repeat counts ("a3B2")."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    raw: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if not ch.isalpha():
            raise MalformedWordError(f"unexpected character {ch!r} in word {text!r}")
        idx = ord(ch.lower()) - ord("a") + 1
        if idx < 1 or idx > rank:
            raise MalformedWordError(f"letter {ch!r} outside rank-{rank} alphabet in {text!r}")
        x = idx if ch.islower() else -idx
        i += 1
        count = 0
        while i < len(text) and text[i].isdigit():
            count = 10 * count + int(text[i])
            i += 1
        raw.extend([x] * max(count, 1))
    return reduce_letters(raw)


@dataclass(frozen=True, slots=True)
class Alphabet:
    """Generators 1..rank of a free group, with their inverses."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise MalformedWordError(f"rank must be >= 1, got {self.rank}")

    def letters(self) -> Letters:
        """All signed letters in the canonical order a, a^-1, b, b^-1, ..."""
        out = []
        for i in range(1, self.rank + 1):
            out.extend((i, -i))
        return tuple(out)


@dataclass(frozen=True, slots=True, order=False)
class Word:
    """An immutable reduced word; structural equality, usable as a dict key."""

    letters: Letters
    rank: int = 2

    def __post_init__(self):
        check_letters(self.letters, self.rank)
        if reduce_letters(self.letters) != self.letters:
            raise MalformedWordError(f"{letters_to_text(self.letters)!r} is not reduced")

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "Word":
        return cls(text_to_letters(text, rank), rank)

    @classmethod
    def identity(cls, rank: int = 2) -> "Word":
        return cls((), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return letters_to_text(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return shortlex_key(self.letters) < shortlex_key(other.letters)

    def _require_same_rank(self, other: "Word") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __mul__(self, other: "Word") -> "Word":
        self._require_same_rank(other)
        return Word(concat_letters(self.letters, other.letters), self.rank)

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters), self.rank)

    def prefix(self, k: int) -> "Word":
        if k < 0 or k > len(self.letters):
            raise OutOfRangeError(f"prefix length {k} not in [0, {len(self.letters)}]")
        return Word(self.letters[:k], self.rank)

    def suffix_after(self, k: int) -> "Word":
        """The residual with prefix(k) * suffix_after(k) == self."""
        if k < 0 or k > len(self.letters):
            raise OutOfRangeError(f"prefix length {k} not in [0, {len(self.letters)}]")
        return Word(self.letters[k:], self.rank)


def reduce(raw: Sequence[int], rank: int = 2) -> Word:
    """Reduced form of an arbitrary letter sequence (idempotent)."""
    check_letters(raw, rank)
    return Word(reduce_letters(raw), rank)


def concat(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def prefix(u: Word, k: int) -> Word:
    return u.prefix(k)
