"""Deterministic advice functions, randomized advice ensembles, and exhaustive
recognition checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .automata import (
    AcceptanceMode,
    Dfa,
    Verdict,
    classify,
    pfa_accept_prob,
)
from .core import Alphabet, as_word, show, track_compose
from .errors import AdviceLengthError, AlphabetMismatch, ScaleLimit, SupportMismatch
from .linalg import ONE, ZERO, format_rational

DEFAULT_MAX_STRINGS = 1 << 20


class AdviceFunction:
    """``n -> h(n)`` over an advice alphabet, with a declared length policy.

    ``policy`` is ``"exact"`` (``|h(n)| = n``) or a pair ``(c, d)`` meaning
    ``|h(n)| <= c*n + d``.
    """

    def __init__(self, alphabet, fn: Callable[[int], object], policy="exact", name: str = "h"):
        self.alphabet = tuple(alphabet)
        self._fn = fn
        self.policy = policy
        self.name = name
        self._cache: dict = {}
        self._symbols = frozenset(self.alphabet)

    @classmethod
    def from_table(cls, alphabet, table: Mapping[int, object], policy="exact", name="h"):
        table = {int(n): as_word(v, alphabet) for n, v in table.items()}

        def lookup(n):
            try:
                return table[n]
            except KeyError:
                raise AdviceLengthError(f"advice table has no entry for length {n}") from None

        fn = cls(alphabet, lookup, policy, name)
        fn.table = table
        return fn

    def __call__(self, n: int) -> tuple:
        if n not in self._cache:
            word = as_word(self._fn(n), self.alphabet)
            self._check(n, word)
            self._cache[n] = word
        return self._cache[n]

    def _check(self, n: int, word: tuple) -> None:
        if self.policy == "exact":
            if len(word) != n:
                raise AdviceLengthError(f"|h({n})| = {len(word)}, policy requires {n}")
        else:
            c, d = self.policy
            if len(word) > c * n + d:
                raise AdviceLengthError(f"|h({n})| = {len(word)} exceeds {c}n+{d}")
        bad = [s for s in word if s not in self._symbols]
        if bad:
            raise AlphabetMismatch(f"advice symbols {bad!r} not in advice alphabet")

    def tabulate(self, lengths) -> dict:
        return {n: self(n) for n in lengths}


class AdviceEnsemble:
    """Finite-support randomized advice ``n -> D_n``.

    ``fn(n)`` returns a mapping from advice words (all of one common length)
    to rational probabilities summing to exactly 1.
    """

    def __init__(self, alphabet, fn: Callable[[int], Mapping], name: str = "D"):
        self.alphabet = tuple(alphabet)
        self._fn = fn
        self.name = name
        self._cache: dict = {}
        self._symbols = frozenset(self.alphabet)

    @classmethod
    def from_table(cls, alphabet, table: Mapping[int, Mapping], name="D"):
        table = {int(n): dict(v) for n, v in table.items()}

        def lookup(n):
            try:
                return table[n]
            except KeyError:
                raise SupportMismatch(f"ensemble has no distribution for length {n}") from None

        ens = cls(alphabet, lookup, name)
        ens.table = table
        return ens

    @classmethod
    def point_mass(cls, advice: AdviceFunction) -> "AdviceEnsemble":
        return cls(advice.alphabet, lambda n: {advice(n): ONE}, name=f"delta[{advice.name}]")

    def __call__(self, n: int) -> dict:
        if n not in self._cache:
            raw = self._fn(n)
            dist = {}
            for w, p in raw.items():
                w = as_word(w, self.alphabet)
                p = Fraction(p)
                if p < 0:
                    raise SupportMismatch(f"negative probability for {w!r}")
                if p:
                    dist[w] = dist.get(w, ZERO) + p
            if sum(dist.values()) != 1:
                raise SupportMismatch(f"D_{n} sums to {sum(dist.values())}, not 1")
            lengths = {len(w) for w in dist}
            if len(lengths) != 1:
                raise SupportMismatch(f"D_{n} support mixes advice lengths {sorted(lengths)}")
            for w in dist:
                bad = [s for s in w if s not in self._symbols]
                if bad:
                    raise AlphabetMismatch(f"advice symbols {bad!r} not in advice alphabet")
            self._cache[n] = dict(sorted(dist.items(), key=lambda kv: _sort_key(kv[0])))
        return self._cache[n]

    def support_length(self, n: int) -> int:
        return len(next(iter(self(n))))

    def mix(self, other: "AdviceEnsemble", alpha) -> "AdviceEnsemble":
        """``alpha * self + (1 - alpha) * other``."""
        alpha = Fraction(alpha)
        alphabet = tuple(dict.fromkeys(self.alphabet + other.alphabet))

        def fn(n):
            out: dict = {}
            for w, p in self(n).items():
                out[w] = out.get(w, ZERO) + alpha * p
            for w, p in other(n).items():
                out[w] = out.get(w, ZERO) + (1 - alpha) * p
            return out

        return AdviceEnsemble(alphabet, fn, name=f"mix({self.name},{other.name})")


def _sort_key(word):
    return tuple(repr(s) for s in word)


def uniform(words) -> dict:
    words = list(dict.fromkeys(words))
    return {w: Fraction(1, len(words)) for w in words}


# --------------------------------------------------------------------------- evaluation


def _compose(x, y):
    return track_compose(x, y, allow_blank=True)


def prob_with_advice(machine, x, y) -> Fraction:
    """Acceptance probability of ``machine`` on ``<x, y>``."""
    return pfa_accept_prob(machine, _compose(x, y))


def advised_prob(machine, h: AdviceFunction, x) -> Fraction:
    """Probability (0/1 for a DFA) that ``machine`` accepts ``<x, h(|x|)>``."""
    x = as_word(x)
    return prob_with_advice(machine, x, h(len(x)))


def randomized_advised_prob(machine, ensemble: AdviceEnsemble, x, length: int | None = None) -> Fraction:
    """Exact ``sum_y D_n(y) * p(machine on <x, y>)`` with ``n = |x|`` by default."""
    x = as_word(x)
    n = len(x) if length is None else length
    dist = ensemble(n)
    total = ZERO
    for y, p in dist.items():
        total += p * prob_with_advice(machine, x, y)
    return total


@dataclass
class RecognitionReport:
    n: int
    mode: str
    inputs: int
    worst_error: Fraction
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "inputs": self.inputs,
            "worst_error": format_rational(self.worst_error),
            "violations": [
                {"input": show(x), "member": m, "probability": format_rational(p), "verdict": v}
                for x, m, p, v in self.violations
            ],
            "ok": self.ok,
        }


def verify_recognition(machine, advice, language, n: int, mode: AcceptanceMode,
                       max_strings: int = DEFAULT_MAX_STRINGS, inputs=None) -> RecognitionReport:
    """Classify every ``x`` in ``Σ^n`` and report misclassifications.

    ``advice`` is an :class:`AdviceFunction`, an :class:`AdviceEnsemble`, or
    ``None`` for a machine that takes no advice.  In bounded mode an
    undetermined classification counts as a violation.  ``worst_error`` is
    the largest probability of the wrong outcome over all inputs.
    """
    alphabet = language.alphabet
    if inputs is None:
        if alphabet.n_words(n) > max_strings:
            raise ScaleLimit(f"|Σ^{n}| = {alphabet.n_words(n)} exceeds --max-strings {max_strings}")
        inputs = alphabet.words(n)
    report = RecognitionReport(n, str(mode), 0, ZERO)
    for x in inputs:
        x = as_word(x, alphabet)
        if advice is None:
            p = pfa_accept_prob(machine, x)
        elif isinstance(advice, AdviceEnsemble):
            p = randomized_advised_prob(machine, advice, x)
        else:
            p = advised_prob(machine, advice, x)
        member = language(x)
        verdict = classify(p, mode)
        report.inputs += 1
        err = 1 - p if member else p
        if mode.kind == "bounded":
            report.worst_error = max(report.worst_error, err)
        wanted = Verdict.MEMBER if member else Verdict.NON_MEMBER
        if verdict is not wanted:
            report.violations.append((x, member, p, verdict.value))
            if mode.kind != "bounded":
                report.worst_error = ONE
    return report
