"""Explicit machines: counting comparators, the C= intersection, the Dup and
Pal# recognizers, and the universal randomized-advice machine."""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..advice import AdviceEnsemble, AdviceFunction, uniform
from ..automata import Dfa, Pfa, PfaFamily, as_pfa
from ..core import CENT, DOLLAR, Track
from ..errors import AlphabetMismatch, EmptyStringInLanguage, SupportMismatch
from ..languages import BINARY, SIGMA6, TERNARY
from ..linalg import HALF, ONE, ZERO
from ._build import build_dfa, build_pfa

# --------------------------------------------------------------------------- L_{i,j}


def lij_cequal(i: int, j: int) -> Pfa:
    """1pfa over Σ6 accepting with probability exactly 1/2 iff ``#a_i = #a_j``.

    ``¢`` splits the start state into two chains.  Chain A halves its live
    mass on every ``a_i``, chain B on every ``a_j``; the final states are
    A-live and B-dead, so ``p = 1/2 + (2^-#a_i - 2^-#a_j) / 2``.
    """
    if i == j:
        raise ValueError("L_{i,j} needs i != j")
    ai, aj = f"a{i}", f"a{j}"

    def rule(q, s):
        if s == CENT:
            return {"A": HALF, "B": HALF} if q == "s" else None
        if q == "A" and s == ai:
            return {"A": HALF, "A-dead": HALF}
        if q == "B" and s == aj:
            return {"B": HALF, "B-dead": HALF}
        return None

    return build_pfa(("s", "A", "A-dead", "B", "B-dead"), SIGMA6, rule, {"A", "B-dead"}, "s")


def lij_closed_form(i: int, j: int, word) -> Fraction:
    ci = sum(1 for s in word if s == f"a{i}")
    cj = sum(1 for s in word if s == f"a{j}")
    return HALF + (Fraction(1, 2**ci) - Fraction(1, 2**cj)) / 2


# --------------------------------------------------------------------------- C= intersection


class IntersectionPfa:
    """Five-way mixture realizing the intersection of two C= languages.

    With weight 1/5 each the start state branches into: an accepting sink,
    ``M1 x M1`` (accept iff both copies accept), ``M2 x M2``, ``M1`` with its
    final states flipped, and ``M2`` flipped.  Hence
    ``p - 1/2 = ((p1 - 1/2)^2 + (p2 - 1/2)^2) / 5``.

    Evaluation runs the components; :meth:`materialize` writes out the flat
    1pfa (its state count grows quadratically per nesting level).
    """

    WEIGHT = Fraction(1, 5)

    def __init__(self, m1, m2):
        if tuple(m1.alphabet) != tuple(m2.alphabet):
            raise AlphabetMismatch("intersection needs a common input alphabet")
        self.m1, self.m2 = m1, m2
        self.alphabet = tuple(m1.alphabet)
        self._flat = None

    @property
    def size(self) -> int:
        a, b = self.m1.size, self.m2.size
        return 2 + a * a + b * b + a + b

    def component_probs(self, word):
        p1 = self.m1.accept_prob(word)
        p2 = self.m2.accept_prob(word)
        return p1, p2

    def accept_prob(self, word) -> Fraction:
        p1, p2 = self.component_probs(word)
        return self.WEIGHT * (1 + p1 * p1 + p2 * p2 + (1 - p1) + (1 - p2))

    def materialize(self) -> Pfa:
        if self._flat is None:
            self._flat = _materialize_intersection(_flat(self.m1), _flat(self.m2))
        return self._flat


def _flat(m) -> Pfa:
    return m.materialize() if isinstance(m, IntersectionPfa) else m


def _materialize_intersection(m1: Pfa, m2: Pfa) -> Pfa:
    w = IntersectionPfa.WEIGHT
    states = ["s", "T"]
    blocks = []  # (kind, machine, offset)
    for kind, m in (("sq1", m1), ("sq2", m2)):
        blocks.append((kind, m, len(states)))
        states += [f"{kind}({a},{b})" for a in m.states for b in m.states]
    for kind, m in (("fl1", m1), ("fl2", m2)):
        blocks.append((kind, m, len(states)))
        states += [f"{kind}:{q}" for q in m.states]
    final = {"T"}
    for kind, m, _ in blocks:
        if kind.startswith("sq"):
            final |= {f"{kind}({a},{b})" for a in m.final for b in m.final}
        else:
            final |= {f"{kind}:{q}" for q in m.states if q not in m.final}
    n = len(states)
    mats = {}
    for sym in m1.symbols:
        rows: list = [None] * n
        rows[1] = {1: ONE}
        if sym == CENT:
            start = {1: w}
        else:
            start = None
        for kind, m, off in blocks:
            mat = m.matrices[sym]
            k = m.size
            if kind.startswith("sq"):
                for a in range(k):
                    for b in range(k):
                        if sym == CENT:
                            rows[off + a * k + b] = {off + a * k + b: ONE}
                        else:
                            rows[off + a * k + b] = {
                                off + ja * k + jb: pa * pb for ja, pa in mat[a].items() for jb, pb in mat[b].items()
                            }
                if sym == CENT:
                    q0 = m.index(m.initial)
                    for ja, pa in mat[q0].items():
                        for jb, pb in mat[q0].items():
                            key = off + ja * k + jb
                            start[key] = start.get(key, ZERO) + w * pa * pb
            else:
                for a in range(k):
                    if sym == CENT:
                        rows[off + a] = {off + a: ONE}
                    else:
                        rows[off + a] = {off + j: p for j, p in mat[a].items()}
                if sym == CENT:
                    for j, p in mat[m.index(m.initial)].items():
                        start[off + j] = start.get(off + j, ZERO) + w * p
        rows[0] = start if sym == CENT else {0: ONE}
        mats[sym] = tuple(rows)
    return Pfa(tuple(states), m1.alphabet, mats, final, "s")


def cequal_intersect(m1, m2) -> IntersectionPfa:
    return IntersectionPfa(m1, m2)


def equal6_cequal() -> IntersectionPfa:
    """Fold of :func:`cequal_intersect` over ``L_{1,i}``, ``i = 2..6``."""
    machine = lij_cequal(1, 2)
    for i in range(3, 7):
        machine = cequal_intersect(machine, lij_cequal(1, i))
    return machine


# --------------------------------------------------------------------------- Dup with deterministic advice

DUP_ADVICE = ("a", "b", "c")
DUP_TRACK = tuple(Track(s, t) for s in BINARY for t in DUP_ADVICE)
_DUP_CORE = ("q0", "q1", "q2", "q3")
_DUP_STATES = _DUP_CORE + ("acc", "rej")


def dup_advice() -> AdviceFunction:
    """``h(2n) = a^(n-1) b c^n``; odd lengths get ``c^m``."""

    def h(m):
        if m == 0:
            return ()
        if m % 2:
            return ("c",) * m
        n = m // 2
        return ("a",) * (n - 1) + ("b",) + ("c",) * n

    return AdviceFunction(DUP_ADVICE, h, name="dup_center")


def dup_first_half(sigma: str) -> tuple:
    """The first-half matrix for input bit ``sigma`` on ``q0..q3``."""
    h = HALF
    a = ((1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, 0, 0, 1))
    b = ((1, 0, 0, 0), (0, 1, 0, 0), (0, h, h, 0), (0, 0, 0, 1))
    return tuple(tuple(Fraction(v) for v in row) for row in (a if sigma == "0" else b))


def dup_middle_scale(n: int) -> Fraction:
    """The factor ``2^-(n-1)``; at ``n = 1`` it would be 1, which cannot be
    stochastic, so 1/2 is used there."""
    return Fraction(1, 2 ** (n - 1)) if n >= 2 else HALF


def dup_middle(n: int) -> tuple:
    """``M_middle`` for half-length ``n`` with the q2 row completed to sum 1."""
    c = dup_middle_scale(n)
    return (
        (c, ZERO, c, 1 - 2 * c),
        (ZERO, c, c, 1 - 2 * c),
        (ZERO, ZERO, c, 1 - c),
        (ZERO, ZERO, ZERO, ONE),
    )


def _mul4(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))


def _dup_family_machine(m: int) -> Pfa:
    index = {q: i for i, q in enumerate(_DUP_STATES)}
    acc, rej = index["acc"], index["rej"]

    def lift(block):
        rows = [{j: v for j, v in enumerate(row) if v} for row in block]
        return tuple(rows) + ({acc: ONE}, {rej: ONE})

    ident = lift(tuple(tuple(ONE if i == j else ZERO for j in range(4)) for i in range(4)))
    mats = {}
    if m % 2:
        mats[CENT] = ({rej: ONE},) + ident[1:]
        for s in DUP_TRACK + (DOLLAR,):
            mats[s] = ident
        return Pfa(_DUP_STATES, DUP_TRACK, mats, {"acc"}, "q0")
    n = m // 2
    first = {s: dup_first_half(s) for s in BINARY}
    middle = dup_middle(n) if n >= 1 else None
    for s in DUP_TRACK:
        bit, adv = s
        if adv == "a":
            mats[s] = lift(first[bit])
        elif adv == "b":
            mats[s] = lift(_mul4(first[bit], middle)) if middle else ident
        else:
            mats[s] = lift(first["1" if bit == "0" else "0"])
    mats[CENT] = ({index["q2"]: ONE},) + ident[1:]
    mats[DOLLAR] = (
        {rej: ONE},
        {acc: ONE},
        {acc: HALF, rej: HALF},
        {acc: HALF, rej: HALF},
        {acc: ONE},
        {rej: ONE},
    )
    return Pfa(_DUP_STATES, DUP_TRACK, mats, {"acc"}, "q0")


def dup_cequal_family():
    """Per-length 4-state (plus halting states) C= machine for Dup with center-marking advice."""
    return PfaFamily(_dup_family_machine, name="dup_cequal_family"), dup_advice()


def dup_cequal_uniform():
    """Length-independent C= machine for Dup using the same advice.

    Component X records ``sum_{w_i=1} 2^-i`` over the a/b region, component
    Y records the same sum over the c region; ``p = 1/2 + (p_X - p_Y)/2``.
    """
    states = ("s", "X", "X0", "X1", "Y", "Y0", "Y1", "acc", "rej")

    def rule(q, s):
        if s == CENT:
            return {"X": HALF, "Y": HALF} if q == "s" else None
        if s == DOLLAR:
            return {
                "X1": {"acc": ONE},
                "X0": {"rej": ONE},
                "X": {"acc": HALF, "rej": HALF},
                "Y1": {"rej": ONE},
                "Y0": {"acc": ONE},
                "Y": {"acc": HALF, "rej": HALF},
            }.get(q)
        bit, adv = s
        live = "X" if adv in ("a", "b") else "Y"
        if q == live:
            return {live: HALF, f"{live}{bit}": HALF}
        return None

    return build_pfa(states, DUP_TRACK, rule, {"acc"}, "s"), dup_advice()


# --------------------------------------------------------------------------- randomized advice recognizers


def _parallel(base: Dfa, copies: int, lower_alphabet) -> Dfa:
    """Run ``copies`` instances of ``base``, copy k reading lower-track component k.

    Accepts iff every copy accepts.
    """
    upper = tuple(dict.fromkeys(s.upper for s in base.alphabet))
    lowers = list(itertools.product(lower_alphabet, repeat=copies))
    alphabet = tuple(Track(u, Track(*l) if copies == 2 else l) for u in upper for l in lowers)
    combos = list(itertools.product(base.states, repeat=copies))
    name = {c: "|".join(c) for c in combos}

    def rule(q, s):
        parts = q.split("|")
        if s in (CENT, DOLLAR):
            nxt = tuple(base.delta[p, s] for p in parts)
        else:
            nxt = tuple(base.delta[p, Track(s.upper, s.lower[k])] for k, p in enumerate(parts))
        return name[nxt]

    accepting = {name[c] for c in combos if all(p in base.accepting for p in c)}
    rejecting = {name[c] for c in combos if all(p in base.accepting | base.rejecting for p in c)} - accepting
    return build_dfa([name[c] for c in combos], alphabet, rule, name[(base.initial,) * copies], accepting, rejecting)


def _palhash_dfa() -> Dfa:
    alphabet = tuple(Track(s, t) for s in TERNARY for t in TERNARY)
    states = ("pre0", "pre1") + tuple(f"post{a}{b}" for a in "01" for b in "01") + ("acc", "rej")

    def rule(q, s):
        if q in ("acc", "rej"):
            return q
        if s == CENT:
            return q
        if s == DOLLAR:
            return "acc" if q.startswith("post") and q[4] == q[5] else "rej"
        x, y = s
        bits = x in "01" and y in "01"
        prod = "1" if x == "1" and y == "1" else "0"
        if q.startswith("pre"):
            a = q[3]
            if bits:
                return "pre" + str(int(a) ^ int(prod))
            if x == "#" and y == "#":
                return f"post{a}0"
            return "rej"
        a, b = q[4], q[5]
        if bits:
            return f"post{a}{int(b) ^ int(prod)}"
        return "rej"

    return build_dfa(states, alphabet, rule, "pre0", {"acc"}, {"rej"})


def _palhash_dist(m: int) -> dict:
    if m % 2 == 0:
        return {("0",) * m: ONE}
    n = m // 2
    return uniform(y + ("#",) + y[::-1] for y in itertools.product("01", repeat=n))


def palhash_rn(amplified: bool = False):
    """DFA plus uniform ``y#y^R`` advice recognizing Pal# with bounded error.

    Single round: members accepted with probability 1, non-members with 1/2
    at most.  Amplified: two independent rounds on a paired advice track,
    non-member error at most 1/4.
    """
    base = _palhash_dfa()
    if not amplified:
        return base, AdviceEnsemble(TERNARY, _palhash_dist, name="pal_hash_uniform")
    machine = _parallel(base, 2, TERNARY)
    pair_alphabet = tuple(Track(a, b) for a in TERNARY for b in TERNARY)

    def dist(m):
        single = _palhash_dist(m)
        return {
            tuple(Track(a, b) for a, b in zip(y1, y2)): p1 * p2
            for (y1, p1), (y2, p2) in itertools.product(single.items(), repeat=2)
        }

    return machine, AdviceEnsemble(pair_alphabet, dist, name="pal_hash_uniform_x2")


_DUP_RN_ADVICE = ("0", "1", "#")


def _dup_rn_dfa() -> Dfa:
    alphabet = tuple(Track(s, t) for s in BINARY for t in _DUP_RN_ADVICE)

    def rule(q, s):
        if q in ("acc", "rej") or s == CENT:
            return q
        if s == DOLLAR:
            return "acc" if q == "p0" else "rej"
        x, y = s
        if y == "#":
            return "rej"
        if x == "1" and y == "1":
            return "p1" if q == "p0" else "p0"
        return q

    return build_dfa(("p0", "p1", "acc", "rej"), alphabet, rule, "p0", {"acc"}, {"rej"})


def _dup_rn_dist(m: int) -> dict:
    if m % 2:
        return {("#",) * m: ONE}
    return uniform(y + y for y in itertools.product("01", repeat=m // 2))


def dup_rn(amplified: bool = False):
    """DFA plus uniform ``yy`` advice: accept iff ``(u xor v) . y = 0`` for input ``uv``."""
    base = _dup_rn_dfa()
    if not amplified:
        return base, AdviceEnsemble(_DUP_RN_ADVICE, _dup_rn_dist, name="dup_uniform")
    machine = _parallel(base, 2, _DUP_RN_ADVICE)
    pair_alphabet = tuple(Track(a, b) for a in _DUP_RN_ADVICE for b in _DUP_RN_ADVICE)

    def dist(m):
        single = _dup_rn_dist(m)
        return {
            tuple(Track(a, b) for a, b in zip(y1, y2)): p1 * p2
            for (y1, p1), (y2, p2) in itertools.product(single.items(), repeat=2)
        }

    return machine, AdviceEnsemble(pair_alphabet, dist, name="dup_uniform_x2")


# --------------------------------------------------------------------------- every language in C=/Rlin


def universal_cequal_rlin(language, n: int):
    """C= machine with randomized advice for an arbitrary language, lengths ``0..n``.

    ``D_m`` is uniform over the non-members of length ``m`` (or the point
    mass on ``#^m`` when there are none).  The machine accepts surely when
    the input equals the advice and flips a fair coin otherwise.
    """
    sigma = tuple(language.alphabet)
    if "#" in sigma:
        raise AlphabetMismatch("input alphabet must not contain the blank '#'")
    if language(()):
        raise EmptyStringInLanguage("the construction requires the empty string to be a non-member")
    gamma = sigma + ("#",)
    alphabet = tuple(Track(s, t) for s in sigma for t in gamma)

    def rule(q, s):
        if s == CENT:
            return None
        if s == DOLLAR:
            return {"eq": {"acc": ONE}, "neq": {"acc": HALF, "rej": HALF}}.get(q)
        if q == "eq" and s.upper != s.lower:
            return {"neq": ONE}
        return None

    machine = build_pfa(("eq", "neq", "acc", "rej"), alphabet, rule, {"acc"}, "eq")

    def dist(m):
        if m > n:
            raise SupportMismatch(f"ensemble built for lengths up to {n}, asked for {m}")
        if m == 0:
            return {(): ONE}
        outside = [w for w in language.alphabet.words(m) if not language(w)]
        if not outside:
            return {("#",) * m: ONE}
        return uniform(outside)

    return machine, AdviceEnsemble(gamma, dist, name=f"universal[{language.name}]")


def fix_advice(ensemble: AdviceEnsemble, pick: int = 0) -> AdviceFunction:
    """Deterministic advice taking the ``pick``-th support string of each ``D_n``."""

    def h(n):
        support = list(ensemble(n))
        return support[min(pick, len(support) - 1)]

    return AdviceFunction(ensemble.alphabet, h, name=f"fixed[{ensemble.name}]")
