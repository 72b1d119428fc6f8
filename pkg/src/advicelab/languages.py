"""Membership oracles for the witness languages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import Alphabet, as_word, inner_product_mod2, symbol_count

BINARY = Alphabet(("0", "1"))
TERNARY = Alphabet(("0", "1", "#"), allow_blank=True)
SIGMA6 = Alphabet(("a1", "a2", "a3", "a4", "a5", "a6", "#"), allow_blank=True)


@dataclass(frozen=True)
class LanguagePredicate:
    """A decidable language: a name, an alphabet and a total membership test."""

    name: str
    alphabet: Alphabet
    test: Callable[[tuple], bool]

    def __call__(self, x) -> bool:
        return bool(self.test(as_word(x, self.alphabet)))

    def slice(self, n: int) -> list:
        """All members of length ``n`` in lexicographic order."""
        return [w for w in self.alphabet.words(n) if self.test(w)]


WitnessLanguage = LanguagePredicate


def _dup(w) -> bool:
    n = len(w)
    return n % 2 == 0 and w[: n // 2] == w[n // 2 :]


def _pal_hash(w) -> bool:
    n = len(w)
    if n % 2 == 0:
        return False
    h = n // 2
    left, mid, right = w[:h], w[h], w[h + 1 :]
    return mid == "#" and "#" not in left and "#" not in right and left == right[::-1]


def _ip_star(w) -> bool:
    if len(w) % 2:
        w = w[1:]
    h = len(w) // 2
    return inner_product_mod2(w[:h][::-1], w[h:]) == 0


def _l_eq(w) -> bool:
    n = len(w)
    if n % 2:
        return False
    return all(s == "0" for s in w[: n // 2]) and all(s == "1" for s in w[n // 2 :])


def _equal6(w) -> bool:
    counts = {symbol_count(w, a) for a in SIGMA6 if a != "#"}
    return len(counts) == 1


dup = LanguagePredicate("dup", BINARY, _dup)
pal_hash = LanguagePredicate("pal_hash", TERNARY, _pal_hash)
ip_star = LanguagePredicate("ip_star", BINARY, _ip_star)
l_eq = LanguagePredicate("l_eq", BINARY, _l_eq)
equal6 = LanguagePredicate("equal6", SIGMA6, _equal6)


def l_ij(i: int, j: int) -> LanguagePredicate:
    """``{w over Σ6 : #a_i(w) = #a_j(w)}``."""
    ai, aj = f"a{i}", f"a{j}"
    return LanguagePredicate(f"l_{i}_{j}", SIGMA6, lambda w: symbol_count(w, ai) == symbol_count(w, aj))


def complement(lang: LanguagePredicate) -> LanguagePredicate:
    if lang.name.startswith("co_"):
        name = lang.name[3:]
    else:
        name = f"co_{lang.name}"
    return LanguagePredicate(name, lang.alphabet, lambda w: not lang.test(w))


def empty(alphabet=BINARY) -> LanguagePredicate:
    return LanguagePredicate("empty", Alphabet(alphabet, allow_blank=True), lambda w: False)


def universe(alphabet=BINARY) -> LanguagePredicate:
    return LanguagePredicate("all", Alphabet(alphabet, allow_blank=True), lambda w: True)


def from_set(members, alphabet=BINARY, name: str = "table") -> LanguagePredicate:
    """A finite language given by an explicit member set of words."""
    members = frozenset(as_word(m, alphabet) for m in members)
    return LanguagePredicate(name, Alphabet(alphabet, allow_blank=True), lambda w: w in members)


_REGISTRY = {
    "dup": dup,
    "pal_hash": pal_hash,
    "ip_star": ip_star,
    "l_eq": l_eq,
    "equal6": equal6,
    "empty": empty(),
    "all": universe(),
}


def by_name(name: str) -> LanguagePredicate:
    """Look up a language by name; ``co_<name>`` gives a complement, ``l_i_j`` an L_{i,j}."""
    if name in _REGISTRY:
        return _REGISTRY[name]
    if name.startswith("co_"):
        return complement(by_name(name[3:]))
    parts = name.split("_")
    if len(parts) == 3 and parts[0] == "l" and parts[1].isdigit() and parts[2].isdigit():
        return l_ij(int(parts[1]), int(parts[2]))
    raise KeyError(f"unknown language {name!r}; known: {sorted(_REGISTRY)} plus co_<name>, l_i_j")


def names() -> list:
    return sorted(_REGISTRY)
