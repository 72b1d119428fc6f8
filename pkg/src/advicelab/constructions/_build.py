"""Small helpers for writing machines as transition rules instead of matrices."""

from __future__ import annotations

from fractions import Fraction

from ..automata import Dfa, Pfa
from ..core import ENDMARKERS


def build_pfa(states, alphabet, rule, final, initial=None) -> Pfa:
    """Assemble a :class:`Pfa` from ``rule(state, symbol) -> {target: prob}``.

    A rule returning ``None`` means "stay put".
    """
    states = tuple(states)
    index = {q: i for i, q in enumerate(states)}
    mats = {}
    for s in tuple(alphabet) + ENDMARKERS:
        rows = []
        for q in states:
            out = rule(q, s)
            if out is None:
                rows.append({index[q]: Fraction(1)})
            else:
                row: dict = {}
                for t, p in out.items():
                    if p:
                        row[index[t]] = row.get(index[t], 0) + Fraction(p)
                rows.append(row)
        mats[s] = tuple(rows)
    return Pfa(states, alphabet, mats, final, initial)


def build_dfa(states, alphabet, rule, initial, accepting, rejecting=()) -> Dfa:
    """Assemble a :class:`Dfa` from ``rule(state, symbol) -> state`` (``None`` = stay)."""
    states = tuple(states)
    delta = {}
    for q in states:
        for s in tuple(alphabet) + ENDMARKERS:
            t = rule(q, s)
            delta[q, s] = q if t is None else t
    return Dfa(states, alphabet, delta, initial, frozenset(accepting), frozenset(rejecting))
