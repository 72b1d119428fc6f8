"""Alphabets, words, and two-track composition.

A *word* is a tuple of atomic symbols.  Symbols are usually short strings
("0", "a1", "h3.2") but any hashable value works, which is how track cells
and composite advice symbols such as ``("c", (1,))`` are represented.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidSymbol

BLANK = "#"
CENT = "¢"
DOLLAR = "$"
ENDMARKERS = (CENT, DOLLAR)
RESERVED = (BLANK, CENT, DOLLAR)

Symbol = Hashable
Word = tuple


class Track(NamedTuple):
    """One tape cell carrying an upper (input) and a lower (advice) symbol."""

    upper: Symbol
    lower: Symbol

    def __repr__(self):
        return f"<{self.upper},{self.lower}>"


class Alphabet(tuple):
    """An ordered, duplicate-free, non-empty tuple of symbols.

    ``allow_blank`` admits ``#`` as an ordinary symbol; the Pal# and Equal6
    witness languages use it as a letter of their input alphabet.
    """

    def __new__(cls, symbols: Iterable[Symbol], allow_blank: bool = False):
        symbols = tuple(symbols)
        if not symbols:
            raise InvalidSymbol("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise InvalidSymbol(f"duplicate symbols in alphabet {symbols!r}")
        for s in symbols:
            if s in ENDMARKERS or (s == BLANK and not allow_blank):
                raise InvalidSymbol(f"reserved symbol {s!r} in alphabet")
        return super().__new__(cls, symbols)

    def words(self, n: int) -> Iterator[Word]:
        """All words of length ``n`` in lexicographic order."""
        return itertools.product(self, repeat=n)

    def words_upto(self, n: int) -> Iterator[Word]:
        for k in range(n + 1):
            yield from self.words(k)

    def n_words(self, n: int) -> int:
        return len(self) ** n


def as_word(x, alphabet: Sequence[Symbol] | None = None) -> Word:
    """Coerce ``x`` into a word.

    Tuples and lists pass through.  A string containing whitespace is split
    on it; otherwise, when an alphabet with multi-character symbols is
    given, the string is tokenized greedily by longest match, and in every
    other case each character is one symbol.
    """
    if isinstance(x, tuple):
        return x
    if isinstance(x, list):
        return tuple(x)
    if not isinstance(x, str):
        raise TypeError(f"cannot interpret {x!r} as a word")
    if any(ch.isspace() for ch in x):
        return tuple(x.split())
    if alphabet is not None:
        tokens = sorted((s for s in alphabet if isinstance(s, str)), key=len, reverse=True)
        if any(len(t) > 1 for t in tokens):
            out, i = [], 0
            while i < len(x):
                for t in tokens:
                    if t and x.startswith(t, i):
                        out.append(t)
                        i += len(t)
                        break
                else:
                    raise InvalidSymbol(f"cannot tokenize {x!r} at offset {i}")
            return tuple(out)
    return tuple(x)


def show(word: Word) -> str:
    """Render a word compactly: concatenated when all symbols are single characters."""
    if all(isinstance(s, str) and len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(str(s) for s in word)


def _check_plain(word: Word, allow_blank: bool) -> None:
    for s in word:
        if s in ENDMARKERS or (s == BLANK and not allow_blank):
            raise InvalidSymbol(f"reserved symbol {s!r} in {word!r}")


def track_compose(x, y, allow_blank: bool = False) -> Word:
    """Pair ``x`` over ``y`` cell by cell, blank-padding the shorter one on the right."""
    x, y = as_word(x), as_word(y)
    _check_plain(x, allow_blank)
    _check_plain(y, allow_blank)
    n = max(len(x), len(y))
    x = x + (BLANK,) * (n - len(x))
    y = y + (BLANK,) * (n - len(y))
    return tuple(Track(a, b) for a, b in zip(x, y))


def upper(word: Word) -> Word:
    return tuple(c.upper for c in word)


def lower(word: Word) -> Word:
    return tuple(c.lower for c in word)


def strip_blanks(word: Word) -> Word:
    """Drop the trailing run of blanks added by padding."""
    end = len(word)
    while end and word[end - 1] == BLANK:
        end -= 1
    return word[:end]


def symbol_count(x, sigma: Symbol) -> int:
    """Number of occurrences of ``sigma`` in ``x``.

    For a plain string and a multi-character ``sigma`` this is the number
    of non-overlapping occurrences of the substring.
    """
    if isinstance(x, str):
        return x.count(sigma) if sigma != "" else 0
    return sum(1 for s in x if s == sigma)


def reverse(x):
    return x[::-1]


def inner_product_mod2(u: Word, v: Word) -> int:
    """Bitwise inner product of two equal-length binary words, mod 2."""
    if len(u) != len(v):
        raise ValueError("inner product needs equal lengths")
    return sum(1 for a, b in zip(u, v) if a == "1" and b == "1") % 2
