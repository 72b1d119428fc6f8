"""Refutation procedures: given a candidate advised 1pfa, exhibit an input it gets wrong.

Both procedures follow the counting arguments of the certificates: they pick
the length from the candidate's state count, build a basis certificate, and
derive a small set of inputs among which at least one must be misclassified.
Every witness is re-checked by direct evaluation before it is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..advice import prob_with_advice
from ..automata import PfaFamily, Verdict, as_pfa, classify, ExactHalf, UnboundedError
from ..core import show
from ..errors import NoSolution, ScaleLimit, VerificationGap
from ..languages import BINARY, complement, dup, ip_star
from ..linalg import HALF, ZERO, basis_extract, format_rational
from .certificates import _cells, cequal_certificate, plin_certificate
from .gf2 import gf2_nullspace, gf2_rank, gf2_solve

DEFAULT_BUDGET = 1 << 12


@dataclass
class RefutationReport:
    criterion: str
    n: int
    states: int
    witness: tuple
    probability: Fraction
    member: bool
    verdict: str
    confirmed: bool
    reason: str
    basis: list = field(default_factory=list)
    pair: tuple | None = None
    trace: list = field(default_factory=list)

    def as_record(self) -> dict:
        return {
            "criterion": self.criterion,
            "n": self.n,
            "states": self.states,
            "witness": show(self.witness),
            "probability": format_rational(self.probability),
            "member": self.member,
            "verdict": self.verdict,
            "confirmed": self.confirmed,
            "reason": self.reason,
            "basis": [show(w) for w in self.basis],
            "pair": None if self.pair is None else [show(y) for y in self.pair],
            "trace": list(self.trace),
        }


def _advice_at(h, n):
    return None if h is None else h(n)


def _direct_prob(machine, h, x) -> Fraction:
    if isinstance(machine, PfaFamily):
        machine = machine(len(x))
    y = _advice_at(h, len(x))
    if y is None:
        return as_pfa(machine).accept_prob(x)
    return prob_with_advice(machine, x, y)


def _confirm(machine, h, x, language, mode):
    """Re-evaluate ``x`` from scratch; returns (p, member, verdict, wrong?)."""
    p = _direct_prob(machine, h, x)
    member = language(x)
    verdict = classify(p, mode)
    wanted = Verdict.MEMBER if member else Verdict.NON_MEMBER
    return p, member, verdict, verdict is not wanted


def _report(criterion, n, states, machine, h, x, language, mode, reason, basis, trace, pair=None):
    p, member, verdict, wrong = _confirm(machine, h, x, language, mode)
    trace.append(f"direct re-evaluation of {show(x)}: p = {format_rational(p)}, "
                 f"member = {member}, verdict = {verdict.value}")
    return RefutationReport(criterion, n, states, x, p, member, verdict.value, wrong, reason,
                            list(basis), pair, trace)


def _size(machine) -> int:
    if isinstance(machine, PfaFamily):
        return machine._any().size
    return as_pfa(machine).size


# --------------------------------------------------------------------------- complement of Dup


def cequal_refutation_length(m: int) -> int:
    """Smallest even ``n`` with ``2^(n/2) - 1 > m + 1``."""
    k = 1
    while 2**k - 1 <= m + 1:
        k += 1
    return 2 * k


def refute_cequal_complement_dup(machine, h) -> RefutationReport:
    """Find an input on which ``(machine, h)`` fails to recognize the complement of Dup with cut-point exactly 1/2."""
    language = complement(dup)
    m = _size(machine)
    n = cequal_refutation_length(m)
    target = machine(n) if isinstance(machine, PfaFamily) else machine
    m = as_pfa(target).size
    n = cequal_refutation_length(m)
    if isinstance(machine, PfaFamily):
        target = machine(n)
    half = n // 2
    z = ("1",) * half
    trace = [f"|Q| = {m}, n = {n}, z = {show(z)}"]
    cert = cequal_certificate(target, h, n, half, z, language)
    basis = cert.basis
    trace.append(f"|A_(n,z)| = {len(cert.expanded)}, basis S = {[show(w) for w in basis]}")
    trace.append(f"coefficient sums equal 1: {cert.sums_to_one}")
    report = lambda x, reason: _report(  # noqa: E731
        "co_dup/exact-half", n, m, machine, h, x, language, ExactHalf, reason, basis, trace)

    for w in basis:
        p = cert.prob(w, z)
        if p != HALF:
            trace.append(f"p({show(w + z)}) = {format_rational(p)} but {show(w + z)} is a member")
            return report(w + z, "member with probability other than 1/2")
    y = next(u for u in BINARY.words(half) if u != z and u not in basis)
    trace.append(f"y = {show(y)}")
    for w in basis:
        p = cert.prob(w, y)
        trace.append(f"p({show(w + y)}) = {format_rational(p)}")
        if p != HALF:
            return report(w + y, "member with probability other than 1/2")
    alpha = cert.coefficients[y]
    p_yy = cert.prob(y, y)
    predicted = sum((a * HALF for a in alpha), ZERO)
    trace.append(f"α(y) = {[format_rational(a) for a in alpha]}, sum = {format_rational(sum(alpha))}")
    trace.append(f"p({show(y + y)}) = {format_rational(p_yy)} = Σα·1/2 = {format_rational(predicted)}")
    if p_yy == HALF:
        return report(y + y, "yy is in Dup yet accepted with probability exactly 1/2")
    raise VerificationGap(f"no misclassified input found at n = {n}; p(yy) = {p_yy}")


# --------------------------------------------------------------------------- IP*


def _in_span(basis_vecs, v) -> tuple | None:
    idx, coeffs = basis_extract(list(basis_vecs) + [v])
    return coeffs[-1] if len(idx) == len(basis_vecs) else None


def _ones_zeros(bits):
    return tuple("1" if b else "0" for b in bits)


def _search(machine, h, language, mode, lengths, budget, trace):
    for n in lengths:
        if 2**n > budget * 16:
            raise ScaleLimit(f"exhaustive fallback would enumerate 2^{n} inputs")
        for x in BINARY.words(n):
            p, member, verdict, wrong = _confirm(machine, h, x, language, mode)
            if wrong:
                trace.append(f"exhaustive search at n = {n}: {show(x)} misclassified")
                return x
    return None


def refute_plin_ipstar(machine, h, budget: int = DEFAULT_BUDGET) -> RefutationReport:
    """Find an input on which ``(machine, h)`` fails to recognize IP* with unbounded error.

    With ``ℓ = |Q| + 2`` and ``n = 2ℓ``: a basis ``S`` of prefixes that is
    also independent over GF(2), suffixes ``y_r`` with ``IP*(w_i y_r) = r_i``
    for every ``r in {0,1}^m``, and a prefix ``x`` with ``x^R . y_r = 0`` for
    all ``r``.  If the candidate is right on every ``w_i y_r`` then the sign
    pattern of the coefficients of ``x`` forces ``p(x y) > 1/2`` and
    ``p(x y') < 1/2`` for ``y = y_r`` and ``y' = y_(not r)``, while both
    ``xy`` and ``xy'`` are members.
    """
    language = ip_star
    mode = UnboundedError
    states = _size(machine)
    ell = states + 2
    n = 2 * ell
    if isinstance(machine, PfaFamily):
        target = machine(n)
        states = target.size
        ell = states + 2
        n = 2 * ell
        target = machine(n)
    else:
        target = machine
    if 2**ell > budget * 16:
        raise ScaleLimit(f"2^{ell} prefixes exceed the enumeration budget")
    trace = [f"|Q| = {states}, ℓ = {ell}, n = {n}"]
    pfa = as_pfa(target)
    r_adv = _advice_at(h, n)
    prefix_adv = None if r_adv is None else r_adv[:ell]
    vec = {w: pfa.dense(pfa.distribution(_cells(w, prefix_adv))) for w in BINARY.words(ell)}
    # basis independent both over the rationals and over GF(2)
    basis, bits = [], []
    for w in BINARY.words(ell):
        cand = basis + [w]
        if len(basis_extract([vec[u] for u in cand])[0]) < len(cand):
            continue
        if gf2_rank(cand) < len(cand):
            continue
        basis.append(w)
    m = len(basis)
    if 2**m > budget:
        raise ScaleLimit(f"2^{m} suffixes exceed the enumeration budget {budget}")
    trace.append(f"basis S = {[show(w) for w in basis]} (m = {m})")
    patterns = list(itertools.product((0, 1), repeat=m))
    suffix = {}
    for r in patterns:
        suffix[r] = gf2_solve(basis, _ones_zeros(1 - b for b in r))
    T = sorted(set(suffix.values()))
    trace.append(f"|T| = {len(T)}")
    null = gf2_nullspace([y[::-1] for y in T], ell)
    basis_vecs = [vec[w] for w in basis]
    x = alpha = None
    for combo in itertools.product((0, 1), repeat=len(null)):
        bits_ = [0] * ell
        for c, v in zip(combo, null):
            if c:
                bits_ = [a ^ int(b) for a, b in zip(bits_, v)]
        cand = _ones_zeros(bits_)
        a = _in_span(basis_vecs, vec[cand])
        if a is not None:
            x, alpha = cand, a
            if any(bits_):
                break
    if x is None:
        trace.append("no prefix orthogonal to T lies in the span of the basis")
        found = _search(machine, h, language, mode, range(0, n + 1), budget, trace)
        if found is None:
            raise VerificationGap("no misclassified input found")
        return _report("ip_star/unbounded", len(found), states, machine, h, found, language, mode,
                       "exhaustive fallback", basis, trace)
    trace.append(f"x = {show(x)}, α = {[format_rational(a) for a in alpha]}")
    cert = plin_certificate(target, h, n, ell, focus=[x], select="gf2", max_strings=max(budget * 16, 2**ell))
    assert cert.basis == basis
    trace.append(f"off-half adjustment θ = {format_rational(cert.adjustment.theta)}")
    sign = tuple(1 if a >= 0 else 0 for a in alpha)
    y, y2 = suffix[sign], suffix[tuple(1 - b for b in sign)]
    trace.append(f"sign vector r = {''.join(map(str, sign))}, y = {show(y)}, y' = {show(y2)}")
    rep = lambda w, why, pair=(y, y2): _report(  # noqa: E731
        "ip_star/unbounded", n, states, machine, h, w, language, mode, why, basis, trace, pair)
    for u in (y, y2):
        for w in basis:
            p = cert.adjusted_prob(w, u)
            member = language(w + u)
            if (p > HALF) != member:
                trace.append(f"p'({show(w + u)}) = {format_rational(p)}, member = {member}")
                return rep(w + u, "basis input misclassified")
    beta = lambda u: [cert.adjusted_prob(w, u) - HALF for w in basis]  # noqa: E731
    p_xy, p_xy2 = cert.adjusted_prob(x, y), cert.adjusted_prob(x, y2)
    id1 = HALF + sum((a * b for a, b in zip(alpha, beta(y))), ZERO)
    id2 = HALF + sum((a * b for a, b in zip(alpha, beta(y2))), ZERO)
    trace.append(f"p'({show(x + y)}) = {format_rational(p_xy)} (identity: {format_rational(id1)})")
    trace.append(f"p'({show(x + y2)}) = {format_rational(p_xy2)} (identity: {format_rational(id2)})")
    for w in (x + y, x + y2):
        p = cert.adjusted_prob(w[:ell], w[ell:])
        if (p > HALF) != language(w):
            return rep(w, "xy and xy' are both members, but they cannot both be accepted")
    raise VerificationGap(f"no misclassified input among the derived candidates at n = {n}")
