"""Pseudorandom density: how far a symmetric difference is from half a slice."""

from __future__ import annotations

from fractions import Fraction

from ..errors import AlphabetMismatch, ScaleLimit
from ..languages import LanguagePredicate
from ..linalg import HALF

DEFAULT_MAX_STRINGS = 1 << 20


def symmetric_difference_count(a: LanguagePredicate, b: LanguagePredicate, n: int,
                               max_strings: int = DEFAULT_MAX_STRINGS) -> int:
    if set(a.alphabet) - {"#"} != set(b.alphabet) - {"#"} and set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch(f"{a.name} and {b.name} have different alphabets")
    if a.alphabet.n_words(n) > max_strings:
        raise ScaleLimit(f"|Σ^{n}| = {a.alphabet.n_words(n)} exceeds --max-strings {max_strings}")
    return sum(1 for x in a.alphabet.words(n) if a(x) != b(x))


def density_ell(a: LanguagePredicate, b: LanguagePredicate, n: int,
                max_strings: int = DEFAULT_MAX_STRINGS) -> Fraction:
    """``| |(A △ B) ∩ Σ^n| / |Σ^n| - 1/2 |``, exactly."""
    count = symmetric_difference_count(a, b, n, max_strings)
    return abs(Fraction(count, a.alphabet.n_words(n)) - HALF)


def density_table(a, b, lengths, max_strings: int = DEFAULT_MAX_STRINGS) -> dict:
    return {n: density_ell(a, b, n, max_strings) for n in lengths}
