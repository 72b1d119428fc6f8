"""Deterministic advice from a finite-index equivalence relation, and back.

``build_equivalence`` computes the relation on pairs ``(x, m)`` with
``|x| <= m <= horizon``: two prefixes of equal length are equivalent iff no
completion to length ``m`` separates them.  ``compile_advised_dfa`` turns
that relation into one DFA and one advice string per length whose symbols
name the per-position transition tables.  ``extract_equivalence`` goes the
other way, grouping pairs by the state an advised DFA reaches.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from ..advice import AdviceFunction
from ..automata import Dfa
from ..core import CENT, DOLLAR, Alphabet, Track
from ..errors import AdviceLengthError, MalformedPartition
from ._build import build_dfa

START, Q_ACC, Q_REJ, Q_ACC1, Q_REJ1 = "start", "q_acc", "q_rej", "q_acc'", "q_rej'"


@dataclass
class EquivalencePartition:
    """Class labels for every pair ``(x, m)`` with ``|x| <= m <= horizon``.

    ``accepting`` holds the labels of full-length pairs (``|x| = m``) whose
    strings are members.
    """

    horizon: int
    alphabet: Alphabet
    class_of: dict
    accepting: frozenset = field(default_factory=frozenset)

    def classes(self) -> dict:
        out = defaultdict(list)
        for pair, label in self.class_of.items():
            out[label].append(pair)
        return dict(out)

    @property
    def n_classes(self) -> int:
        return len(set(self.class_of.values()))

    def stratum(self, k: int, m: int) -> dict:
        """``{x: label}`` for the pairs with ``|x| = k`` at length ``m``."""
        return {x: lab for (x, mm), lab in self.class_of.items() if mm == m and len(x) == k}

    def equivalent(self, x, y, m: int) -> bool:
        return self.class_of[x, m] == self.class_of[y, m]


def _signature(language, x, m, alphabet):
    return tuple(language(x + z) for z in alphabet.words(m - len(x)))


def build_equivalence(language, horizon: int) -> EquivalencePartition:
    alphabet = language.alphabet
    class_of = {}
    accepting = set()
    for m in range(horizon + 1):
        for k in range(m + 1):
            seen: dict = {}
            for x in alphabet.words(k):
                sig = _signature(language, x, m, alphabet)
                if sig not in seen:
                    seen[sig] = f"c{m}.{k}.{len(seen)}"
                    if k == m and sig[0]:
                        accepting.add(seen[sig])
                class_of[x, m] = seen[sig]
    return EquivalencePartition(horizon, alphabet, class_of, frozenset(accepting))


def condition_b_holds(partition: EquivalencePartition, language) -> bool:
    """Within each stratum, equivalence coincides with agreement on every completion."""
    alphabet = partition.alphabet
    for m in range(partition.horizon + 1):
        for k in range(m + 1):
            label_to_sig, sig_to_label = {}, {}
            for x, lab in partition.stratum(k, m).items():
                sig = _signature(language, x, m, alphabet)
                if label_to_sig.setdefault(lab, sig) != sig or sig_to_label.setdefault(sig, lab) != lab:
                    return False
    return True


def refines(fine: EquivalencePartition, coarse: EquivalencePartition) -> bool:
    """Every stratum-wise class of ``fine`` sits inside one class of ``coarse``."""
    mapping = {}
    for (x, m), lab in fine.class_of.items():
        key = (len(x), m, lab)
        if mapping.setdefault(key, coarse.class_of[x, m]) != coarse.class_of[x, m]:
            return False
    return True


def advice_symbol(m: int, i: int) -> str:
    return f"h{m}.{i}"


def compile_advised_dfa(partition: EquivalencePartition):
    """DFA and advice function deciding the partition's language at every length up to the horizon.

    Raises :class:`MalformedPartition` when some class has two different
    successors on one symbol, or when members (non-members) of one length
    are split over several classes.
    """
    alphabet = partition.alphabet
    table: dict = {}  # (advice symbol, state, sigma) -> state
    for m in range(1, partition.horizon + 1):
        labels = {k: partition.stratum(k, m) for k in range(m + 1)}
        full = labels[m]
        if len({lab for x, lab in full.items() if lab in partition.accepting}) > 1 or len(
            {lab for x, lab in full.items() if lab not in partition.accepting}
        ) > 1:
            raise MalformedPartition(f"length-{m} strings do not fall into one accepting and one rejecting class")
        for i in range(1, m + 1):
            sym = advice_symbol(m, i)
            for x, lab in labels[i - 1].items():
                src = START if i == 1 else lab
                for sigma in alphabet:
                    target = partition.class_of[x + (sigma,), m]
                    if i == m:
                        target = Q_ACC1 if target in partition.accepting else Q_REJ1
                    prev = table.setdefault((sym, src, sigma), target)
                    if prev != target:
                        raise MalformedPartition(
                            f"class {src} has two successors {prev}, {target} on {sigma!r} at position {i} of length {m}"
                        )
    gamma = tuple(advice_symbol(m, i) for m in range(1, partition.horizon + 1) for i in range(1, m + 1))
    labels = sorted(set(partition.class_of.values()))
    states = (START,) + tuple(labels) + (Q_ACC1, Q_REJ1, Q_ACC, Q_REJ)
    dfa_alphabet = tuple(Track(s, g) for s in alphabet for g in gamma)
    empty_accepted = partition.class_of.get(((), 0)) in partition.accepting

    def rule(q, s):
        if q in (Q_ACC, Q_REJ):
            return q
        if s == CENT:
            return q if q == START else Q_REJ
        if s == DOLLAR:
            if q == START:
                return Q_ACC if empty_accepted else Q_REJ
            return {Q_ACC1: Q_ACC}.get(q, Q_REJ)
        return table.get((s.lower, q, s.upper), Q_REJ)

    dfa = build_dfa(states, dfa_alphabet, rule, START, {Q_ACC}, {Q_REJ})
    advice = AdviceFunction.from_table(
        gamma,
        {m: tuple(advice_symbol(m, i) for i in range(1, m + 1)) for m in range(partition.horizon + 1)},
        name="compiled",
    )
    return dfa, advice


def extract_equivalence(machine: Dfa, advice, horizon: int, alphabet=None) -> EquivalencePartition:
    """Group pairs ``(x, m)`` by the state reached on ``¢<x, prefix of h(m)>`` (plus ``$`` at full length)."""
    if alphabet is None:
        alphabet = Alphabet(dict.fromkeys(s.upper for s in machine.alphabet), allow_blank=True)
    class_of = {}
    accepting = set()
    for m in range(horizon + 1):
        h = advice(m)
        if len(h) != m:
            raise AdviceLengthError(f"|h({m})| = {len(h)}, expected {m}")
        for k in range(m + 1):
            for x in alphabet.words(k):
                q = machine.step(machine.initial, CENT)
                for sigma, tau in zip(x, h):
                    q = machine.step(q, Track(sigma, tau))
                if k == m:
                    q = machine.step(q, DOLLAR)
                    if q in machine.accepting:
                        accepting.add(q)
                class_of[x, m] = q
    return EquivalencePartition(horizon, alphabet, class_of, frozenset(accepting))
