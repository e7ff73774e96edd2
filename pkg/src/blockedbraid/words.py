"""Signed words: braid words over sigma_1..sigma_{n-1} and reduced free-group words.

Letters are stored as nonzero ints: ``+k`` is the k-th generator, ``-k`` its
inverse.  ``SignedLetter`` is the readable view of one such int.  Braid words are
kept exactly as written; equality of braids lives in :mod:`blockedbraid.braid`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import IndexOutOfRange, MalformedToken, StrandMismatch

_TOKEN = re.compile(r"s(\d+)(?:\^([+-]?1))?|([+-]?\d+)")


class SignedLetter(NamedTuple):
    index: int
    sign: int

    @classmethod
    def from_int(cls, letter: int) -> SignedLetter:
        return cls(abs(letter), 1 if letter > 0 else -1)

    def to_int(self) -> int:
        return self.index * self.sign


def _check_letters(letters: tuple[int, ...], limit: int) -> None:
    for pos, letter in enumerate(letters, 1):
        if letter == 0 or abs(letter) > limit:
            raise IndexOutOfRange(abs(letter), limit, pos)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators on ``strands`` strands, read left to right."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        _check_letters(self.letters, self.strands - 1)

    @classmethod
    def identity(cls, strands: int) -> BraidWord:
        return cls(strands, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[SignedLetter]:
        return (SignedLetter.from_int(x) for x in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else invert(self)
        return BraidWord(self.strands, base.letters * abs(k))

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word over x_1..x_rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        _check_letters(self.letters, self.rank)
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError(f"word is not reduced: {self.letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in self.letters)


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain (single stack pass)."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_reduce(letters: Iterable[int] | FreeWord, rank: int | None = None) -> FreeWord:
    if isinstance(letters, FreeWord):
        rank, letters = letters.rank, letters.letters
    letters = tuple(letters)
    if rank is None:
        rank = max((abs(x) for x in letters), default=1)
    _check_letters(letters, rank)
    return FreeWord(rank, reduce_letters(letters))


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """Concatenate two braid words; nothing is cancelled."""
    if w1.strands != w2.strands:
        raise StrandMismatch(w1.strands, w2.strands)
    return BraidWord(w1.strands, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-x for x in reversed(w.letters)))


def format_letter(letter: int) -> str:
    return f"s{letter}" if letter > 0 else f"s{-letter}^-1"


def format_word(w: BraidWord) -> str:
    """Canonical text form, e.g. ``s1 s2^-1``; the identity is the empty string."""
    return " ".join(format_letter(x) for x in w.letters)


def parse_letters(text: str) -> tuple[int, ...]:
    letters = []
    for pos, token in enumerate(text.split(), 1):
        m = _TOKEN.fullmatch(token)
        if m is None:
            raise MalformedToken(token, pos)
        if m.group(1) is not None:
            index = int(m.group(1))
            letter = -index if m.group(2) == "-1" else index
        else:
            letter = int(m.group(3))
        if letter == 0:
            raise MalformedToken(token, pos)
        letters.append(letter)
    return tuple(letters)


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``s<k>``, ``s<k>^-1``, ``k`` or ``-k`` tokens separated by whitespace.

    The leftmost token acts first.  Out-of-range indices raise
    :class:`IndexOutOfRange` carrying the 1-based token position.
    """
    return BraidWord(strands, parse_letters(text))
