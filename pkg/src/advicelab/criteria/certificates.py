"""Basis certificates for exact-half and unbounded-error advised 1pfa's.

A certificate fixes a length ``n``, a split ``n = (n - ℓ) + ℓ`` of the
input and of the advice ``h(n) = r s``, and extracts a maximal linearly
independent set of state vectors ``ν_ini M_{¢<w, r>}`` over prefixes ``w``.
Every other prefix vector is an exact combination of the basis, and the
combination weights always sum to one because the vectors are probability
distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..automata import Pfa, as_pfa
from ..core import Alphabet, Track, show
from ..errors import AdjustmentFailure, AdviceLengthError, DegenerateContext, ScaleLimit
from ..linalg import HALF, ONE, ZERO, basis_extract, combine, format_rational
from .gf2 import gf2_rank


def _cells(word, advice):
    if advice is None:
        return tuple(word)
    return tuple(Track(a, b) for a, b in zip(word, advice))


def _input_alphabet(machine) -> Alphabet:
    syms = machine.alphabet
    if syms and isinstance(syms[0], Track):
        syms = dict.fromkeys(s.upper for s in syms)
    return Alphabet(syms, allow_blank=True)


def _split_advice(h, n, ell):
    if h is None:
        return None, None
    word = h(n)
    if len(word) != n:
        raise AdviceLengthError(f"|h({n})| = {len(word)}, expected {n}")
    return word[: n - ell], word[n - ell :]


def _check_context(n, ell):
    if not (0 < ell <= n - 1):
        raise ValueError(f"need 0 < ℓ <= n - 1, got n={n}, ℓ={ell}")


@dataclass
class BasisCertificate:
    machine: Pfa
    n: int
    ell: int
    z: tuple | None
    prefix_advice: tuple | None
    suffix_advice: tuple | None
    basis: list
    expanded: list
    coefficients: dict
    vectors: dict
    language: object = None
    sums_to_one: bool = False
    trivial: bool = False

    @property
    def m(self) -> int:
        return self.machine.size

    def reconstruction_exact(self) -> bool:
        vs = [self.vectors[w] for w in self.basis]
        return all(combine(self.coefficients[x], vs) == self.vectors[x] for x in self.expanded)

    def prob(self, prefix, suffix) -> Fraction:
        dist = {i: v for i, v in enumerate(self.vectors[prefix]) if v} if prefix in self.vectors else \
            self.machine.distribution(_cells(prefix, self.prefix_advice))
        return self.machine.accept_from(dist, _cells(suffix, self.suffix_advice))

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "z": show(self.z) if self.z is not None else None,
            "states": self.m,
            "basis": [show(w) for w in self.basis],
            "expanded": len(self.expanded),
            "coefficients": {
                show(x): [format_rational(a) for a in self.coefficients[x]] for x in self.expanded
            },
            "sums_to_one": self.sums_to_one,
        }


def _certify(machine, prefixes, prefix_advice):
    vectors = {w: machine.dense(machine.distribution(_cells(w, prefix_advice))) for w in prefixes}
    basis_idx, coeffs = basis_extract([vectors[w] for w in prefixes])
    basis = [prefixes[i] for i in basis_idx]
    coefficients = {w: coeffs[k] for k, w in enumerate(prefixes)}
    sums = all(sum(c) == 1 for c in coefficients.values())
    return basis, coefficients, vectors, sums


def cequal_certificate(machine, h, n: int, ell: int, z, language) -> BasisCertificate:
    """Certificate over ``A_{n,z} = {w in Σ^(n-ℓ) : wz in A}``."""
    _check_context(n, ell)
    z = tuple(z)
    if len(z) != ell:
        raise ValueError(f"|z| = {len(z)}, expected ℓ = {ell}")
    machine = as_pfa(machine)
    r, s = _split_advice(h, n, ell)
    expanded = [w for w in language.alphabet.words(n - ell) if language(w + z)]
    if not expanded:
        raise DegenerateContext(f"A_(n,z) is empty for n={n}, z={show(z)}")
    basis, coefficients, vectors, sums = _certify(machine, expanded, r)
    return BasisCertificate(
        machine, n, ell, z, r, s, basis, expanded, coefficients, vectors, language, sums,
        trivial=len(expanded) <= machine.size,
    )


@dataclass
class ImplicationResult:
    y: tuple
    antecedent: bool
    holds: bool
    violations: list = field(default_factory=list)
    identity_violations: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def cequal_implication_test(cert: BasisCertificate, y) -> ImplicationResult:
    """If every ``wy`` (w in the basis) is in A, then every ``xy`` (x in ``A_{n,z}``) must be.

    Also checks the linear identity ``p(xy) = sum_w α_w p(wy)`` behind it,
    using the stored coefficients.
    """
    y = tuple(y)
    if len(y) != cert.ell:
        raise ValueError(f"|y| = {len(y)}, expected ℓ = {cert.ell}")
    lang = cert.language
    antecedent = all(lang(w + y) for w in cert.basis)
    violations = [x for x in cert.expanded if not lang(x + y)] if antecedent else []
    basis_probs = [cert.prob(w, y) for w in cert.basis]
    identity_violations = []
    for x in cert.expanded:
        predicted = sum((a * p for a, p in zip(cert.coefficients[x], basis_probs)), ZERO)
        if cert.prob(x, y) != predicted:
            identity_violations.append(x)
    return ImplicationResult(y, antecedent, not violations and not identity_violations, violations, identity_violations)


# --------------------------------------------------------------------------- unbounded error


@dataclass
class Adjustment:
    """Mixture ``(1 - θ) M + θ (reject)`` moving every probability off 1/2."""

    theta: Fraction
    machine: Pfa
    inputs_checked: int


def reject_mixture(machine: Pfa, theta: Fraction) -> Pfa:
    """Run ``machine`` with probability ``1 - θ`` and reject outright with probability ``θ``."""
    start, sink = "mix.start", "mix.reject"
    states = (start,) + machine.states + (sink,)
    n = machine.size
    q0 = machine.index(machine.initial)
    mats = {}
    for s in machine.symbols:
        rows = [None] * (n + 2)
        for i, row in enumerate(machine.matrices[s]):
            rows[i + 1] = {j + 1: v for j, v in row.items()}
        rows[n + 1] = {n + 1: ONE}
        if s == "¢":
            first = {j + 1: (1 - theta) * v for j, v in machine.matrices[s][q0].items()}
            if theta:
                first[n + 1] = theta
            rows[0] = first
        else:
            rows[0] = {0: ONE}
        mats[s] = tuple(rows)
    return Pfa(states, machine.alphabet, mats, machine.final, start)


def choose_theta(probs) -> Fraction:
    """Largest ``θ = 2^-k`` (k >= 1) keeping every ``p > 1/2`` above 1/2 after scaling by ``1 - θ``."""
    above = [p for p in probs if p > HALF]
    if not above:
        return HALF
    bound = min(1 - 1 / (2 * p) for p in above)
    k = 1
    while Fraction(1, 2**k) >= bound:
        k += 1
    return Fraction(1, 2**k)


@dataclass
class PlinCertificate:
    machine: Pfa  # adjusted
    original: Pfa
    adjustment: Adjustment
    n: int
    ell: int
    prefix_advice: tuple | None
    suffix_advice: tuple | None
    basis: list
    prefixes: list
    coefficients: dict  # prefix -> tuple of α over basis (None when outside the span)
    vectors: dict
    margins: dict  # (i, y) -> β
    sums_to_one: bool

    @property
    def m(self) -> int:
        return len(self.basis)

    def adjusted_prob(self, prefix, suffix) -> Fraction:
        dist = self.machine.distribution(_cells(prefix, self.prefix_advice))
        return self.machine.accept_from(dist, _cells(suffix, self.suffix_advice))

    def sign_vector(self, x) -> tuple:
        """``r_i = 1`` when ``α_{w_i} >= 0`` and ``0`` otherwise."""
        return tuple(1 if a >= 0 else 0 for a in self.coefficients[x])

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "theta": format_rational(self.adjustment.theta),
            "basis": [show(w) for w in self.basis],
            "sums_to_one": self.sums_to_one,
        }


def plin_certificate(machine, h, n: int, ell: int, focus=(), select: str = "greedy",
                     max_strings: int = 1 << 16) -> PlinCertificate:
    """Certificate over all prefixes in ``Σ^(n-ℓ)`` with margins ``p(w_i y) - 1/2``.

    The machine is first mixed with a rejecting branch so that none of the
    probabilities involved equals 1/2 (verdicts unchanged).  The affected
    inputs are ``w_i y`` for every basis prefix and every suffix, plus
    ``x y`` for each ``x`` in ``focus``.

    ``select="gf2"`` additionally keeps the basis prefixes linearly
    independent as bit vectors over GF(2); prefixes whose state vector then
    falls outside the span get ``None`` coefficients.
    """
    _check_context(n, ell)
    original = as_pfa(machine)
    sigma = _input_alphabet(original)
    if sigma.n_words(max(n - ell, ell)) > max_strings:
        raise ScaleLimit(f"|Σ|^{max(n - ell, ell)} exceeds the enumeration budget {max_strings}")
    r, s = _split_advice(h, n, ell)
    prefixes = list(sigma.words(n - ell))
    vectors = {w: original.dense(original.distribution(_cells(w, r))) for w in prefixes}
    if select == "greedy":
        idx, _ = basis_extract([vectors[w] for w in prefixes])
        basis = [prefixes[i] for i in idx]
    elif select == "gf2":
        basis = []
        for w in prefixes:
            cand = basis + [w]
            if gf2_rank(cand) == len(cand) and len(basis_extract([vectors[u] for u in cand])[0]) == len(cand):
                basis.append(w)
    else:
        raise ValueError(f"unknown selection {select!r}")
    basis_vecs = [vectors[w] for w in basis]
    coefficients = {}
    for x in prefixes:
        idx, coeffs = basis_extract(basis_vecs + [vectors[x]])
        coefficients[x] = coeffs[-1] if len(idx) == len(basis) else None
    sums = all(sum(c) == 1 for c in coefficients.values() if c is not None)
    suffixes = list(sigma.words(ell))

    def prob(m, prefix, y):
        return m.accept_from(m.distribution(_cells(prefix, r)), _cells(y, s))

    probs = {}
    for w in list(basis) + [tuple(x) for x in focus]:
        dist = original.distribution(_cells(w, r))
        for y in suffixes:
            probs[w, y] = original.accept_from(dist, _cells(y, s))
    theta = choose_theta(probs.values())
    adjusted = reject_mixture(original, theta)
    margins = {}
    for (w, y), p in probs.items():
        q = (1 - theta) * p
        if q == HALF or (q > HALF) != (p > HALF):
            raise AdjustmentFailure(f"θ = {theta} changes the verdict on {show(w + y)}")
        if w in basis:
            margins[basis.index(w), y] = q - HALF
    for (i, y), beta in margins.items():
        if prob(adjusted, basis[i], y) - HALF != beta:
            raise AdjustmentFailure("adjusted machine disagrees with the scaled probabilities")
    adjustment = Adjustment(theta, adjusted, len(probs))
    return PlinCertificate(adjusted, original, adjustment, n, ell, r, s, basis, prefixes,
                           coefficients, vectors, margins, sums)
