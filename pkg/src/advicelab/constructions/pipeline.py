"""Uniform-1/d normalization of a 1pfa and derandomization into advice.

``dnormalize`` blows every state up into ``d`` interchangeable copies so
that each transition probability becomes 0 or 1/d.  ``derandomize`` then
moves the remaining coin flips into the advice: the advice symbol at each
cell carries the index of the successor to take, which leaves a DFA.

Endmarker steps have no advice cell of their own, so their successor
indices ride on the first and last cells (or on a single padding cell for
the empty input).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from ..advice import AdviceEnsemble
from ..automata import Dfa, Pfa
from ..core import BLANK, CENT, DOLLAR, Track
from ..errors import NotUniformD
from ._build import build_dfa


def common_denominator(machine: Pfa) -> int:
    return math.lcm(*machine.denominators()) if machine.denominators() else 1


def dnormalize(machine: Pfa) -> Pfa:
    """Equivalent 1pfa whose transition probabilities are all 0 or 1/d, d = lcm of denominators."""
    d = common_denominator(machine)
    n = machine.size

    def copy(i, k):
        return i * d + k

    states = tuple(f"{q}.{k + 1}" if d > 1 else q for q in machine.states for k in range(d))
    unit = Fraction(1, d)
    mats = {}
    for s in machine.symbols:
        rows = []
        for i in range(n):
            targets = {}
            for j, p in machine.matrices[s][i].items():
                for k in range(int(p * d)):
                    targets[copy(j, k)] = unit
            rows.extend([targets] * d)
        mats[s] = tuple(rows)
    final = {states[copy(machine.index(q), k)] for q in machine.final for k in range(d)}
    return Pfa(states, machine.alphabet, mats, final, states[copy(machine.index(machine.initial), 0)])


def uniform_degree(machine: Pfa) -> int:
    """The ``d`` with every row made of exactly ``d`` entries equal to 1/d, else :class:`NotUniformD`."""
    d = None
    for s in machine.symbols:
        for i, row in enumerate(machine.matrices[s]):
            k = len(row)
            if any(v != Fraction(1, k) for v in row.values()):
                raise NotUniformD(f"row {machine.states[i]!r} of M[{s!r}] is not uniform")
            if d is None:
                d = k
            elif k != d:
                raise NotUniformD(f"row {machine.states[i]!r} of M[{s!r}] has {k} successors, expected {d}")
    return d or 1


def derandomize(machine: Pfa, ensemble: AdviceEnsemble):
    """DFA and ensemble over ``Γ x [d]`` reproducing ``sum_y D(y) p(<x, y>)`` exactly.

    An advice cell is ``(τ, ks)`` with ``ks`` a tuple of successor indices
    (1-based): the first cell additionally carries the ``¢`` choice in front
    and the last cell the ``$`` choice at the back.  The probability of an
    annotated string is ``D(τ_1..τ_n) / d^(n+2)``.
    """
    d = uniform_degree(machine)
    gamma = tuple(ensemble.alphabet)
    uppers = tuple(dict.fromkeys(s.upper for s in machine.alphabet)) + (BLANK,)
    succ = {
        s: [sorted(row) for row in machine.matrices[s]] for s in machine.symbols
    }
    idx = {q: i for i, q in enumerate(machine.states)}
    ks_choices = [tuple(k) for r in (1, 2, 3) for k in itertools.product(range(1, d + 1), repeat=r)]
    lowers = tuple((t, ks) for t in gamma for ks in ks_choices) + tuple(
        (BLANK, ks) for ks in itertools.product(range(1, d + 1), repeat=2)
    )
    alphabet = tuple(Track(u, lw) for u in uppers for lw in lowers if (u == BLANK) == (lw[0] == BLANK))
    alphabet = tuple(a for a in alphabet if a.upper != BLANK or len(a.lower[1]) == 2)
    init, dead = "init", "dead"
    states = (init, dead) + tuple(f"q:{q}" for q in machine.states) + tuple(f"f:{q}" for q in machine.states)
    accepting = {f"f:{q}" for q in machine.final}

    def move(i, s, k):
        return succ[s][i][k - 1]

    def rule(q, s):
        if q == dead:
            return dead
        if s == CENT:
            return q if q == init else dead
        if s == DOLLAR:
            return q if q.startswith("f:") else dead
        if q.startswith("f:"):
            return dead
        sigma, (tau, ks) = s.upper, s.lower
        ks = list(ks)
        if q == init:
            i = move(idx[machine.initial], CENT, ks.pop(0))
        else:
            i = idx[q[2:]]
        if sigma == BLANK:
            # empty input: the single padding cell carries only the ¢ and $ choices
            if q != init or len(ks) != 1:
                return dead
            return f"f:{machine.states[move(i, DOLLAR, ks[0])]}"
        if not ks:
            return dead
        i = move(i, Track(sigma, tau), ks.pop(0))
        if len(ks) == 1:
            return f"f:{machine.states[move(i, DOLLAR, ks[0])]}"
        if ks:
            return dead
        return f"q:{machine.states[i]}"

    dfa = build_dfa(states, alphabet, rule, init, accepting, {dead})

    def dist(n):
        out = {}
        weight = Fraction(1, d ** (n + 2))
        for y, p in ensemble(n).items():
            if n == 0:
                for kc, kd in itertools.product(range(1, d + 1), repeat=2):
                    out[((BLANK, (kc, kd)),)] = p * weight
                continue
            for ks in itertools.product(range(1, d + 1), repeat=n + 2):
                cells = []
                for pos, tau in enumerate(y):
                    k = (ks[pos + 1],)
                    if pos == 0:
                        k = (ks[0],) + k
                    if pos == n - 1:
                        k = k + (ks[n + 1],)
                    cells.append((tau, k))
                out[tuple(cells)] = p * weight
        return out

    return dfa, AdviceEnsemble(lowers, dist, name=f"derandomized[{ensemble.name}]")
