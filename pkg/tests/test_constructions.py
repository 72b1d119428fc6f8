import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advicelab.advice import AdviceEnsemble, advised_prob, randomized_advised_prob, verify_recognition
from advicelab.automata import BoundedError, ExactHalf, Pfa
from advicelab.constructions import (
    EquivalencePartition, build_equivalence, cequal_intersect, common_denominator, compile_advised_dfa,
    condition_b_holds, derandomize, dnormalize, dup_cequal_family, dup_cequal_uniform,
    dup_middle, dup_rn, equal6_cequal, extract_equivalence, fix_advice, lij_cequal,
    lij_closed_form, palhash_rn, refines, uniform_degree, universal_cequal_rlin,
)
from advicelab.core import Track, as_word
from advicelab.errors import EmptyStringInLanguage, MalformedPartition, NotUniformD
from advicelab.languages import SIGMA6, complement, dup, l_eq, pal_hash
from advicelab.linalg import is_stochastic

from helpers import make_rng, random_pfa

HALF = Fraction(1, 2)
LETTERS = [s for s in SIGMA6 if s != "#"]
six = st.lists(st.sampled_from(LETTERS), max_size=7).map(tuple)


def test_lij_examples():
    m = lij_cequal(1, 2)
    assert m.accept_prob(()) == HALF
    assert m.accept_prob(as_word("a1 a2")) == HALF
    assert m.accept_prob(as_word("a1 a1")) == Fraction(1, 8)


@given(six)
def test_lij_closed_form(w):
    m = lij_cequal(1, 2)
    p = m.accept_prob(w)
    assert p == lij_closed_form(1, 2, w)
    assert (p == HALF) == (w.count("a1") == w.count("a2"))


@settings(max_examples=40, deadline=None)
@given(six)
def test_intersection_identity(w):
    m = cequal_intersect(lij_cequal(1, 2), lij_cequal(3, 4))
    p1, p2 = m.component_probs(w)
    p = m.accept_prob(w)
    assert p - HALF == ((p1 - HALF) ** 2 + (p2 - HALF) ** 2) / 5
    assert (p == HALF) == (p1 == HALF and p2 == HALF)


def test_materialized_intersection_agrees():
    m = cequal_intersect(lij_cequal(1, 2), lij_cequal(1, 3))
    flat = m.materialize()
    assert isinstance(flat, Pfa)
    for n in range(4):
        for w in itertools.product(["a1", "a2", "a3"], repeat=n):
            assert flat.accept_prob(w) == m.accept_prob(w)


def test_equal6_small():
    m = equal6_cequal()
    assert m.accept_prob(()) == HALF
    assert m.accept_prob(tuple(LETTERS)) == HALF
    assert m.accept_prob(("a1",)) != HALF


def test_dup_middle_rows_are_stochastic():
    for n in range(1, 8):
        assert is_stochastic(dup_middle(n))


def test_dup_builders_small():
    for machine, h in (dup_cequal_family(), dup_cequal_uniform()):
        for n in range(4):
            for w in itertools.product("01", repeat=n):
                for v in itertools.product("01", repeat=n):
                    assert (advised_prob(machine, h, w + v) == HALF) == (w == v)
        for n in range(6):
            assert verify_recognition(machine, h, dup, n, ExactHalf).ok


def _shaped(n):
    for u in itertools.product("01", repeat=n):
        for v in itertools.product("01", repeat=n):
            yield u + ("#",) + v


@pytest.mark.parametrize("amplified, err", [(False, HALF), (True, Fraction(1, 4))])
def test_palhash_randomized_advice(amplified, err):
    m, d = palhash_rn(amplified)
    for n in range(4):
        for x in itertools.product("01#", repeat=2 * n + 1):
            p = randomized_advised_prob(m, d, x)
            if pal_hash(x):
                assert p == 1
            elif x in set(_shaped(n)):
                assert p == err
            else:
                assert p == 0
        assert verify_recognition(m, d, pal_hash, 2 * n + 1, BoundedError(err) if amplified else
                                  BoundedError(Fraction(0)), inputs=[u + ("#",) + u[::-1] for u in
                                                                     itertools.product("01", repeat=n)]).ok


@pytest.mark.parametrize("amplified, err", [(False, HALF), (True, Fraction(1, 4))])
def test_dup_randomized_advice(amplified, err):
    m, d = dup_rn(amplified)
    for n in range(4):
        for x in itertools.product("01", repeat=n):
            p = randomized_advised_prob(m, d, x)
            assert p == (1 if dup(x) else (err if n % 2 == 0 else 0))


def test_universal_machine_and_fixed_advice():
    lang = complement(dup)
    m, d = universal_cequal_rlin(lang, 4)
    for n in range(5):
        assert verify_recognition(m, d, lang, n, ExactHalf).ok
    h = fix_advice(d)
    assert len(h(4)) == 4 and not lang(h(4))
    with pytest.raises(EmptyStringInLanguage):
        universal_cequal_rlin(dup, 3)


def test_compiler_on_leq():
    part = build_equivalence(l_eq, 4)
    assert condition_b_holds(part, l_eq)
    dfa, h = compile_advised_dfa(part)
    for n in range(5):
        for x in itertools.product("01", repeat=n):
            w = tuple(Track(a, b) for a, b in zip(x, h(n)))
            assert dfa.accepts(w) == l_eq(x)
    ext = extract_equivalence(dfa, h, 4, part.alphabet)
    assert refines(ext, part)
    assert ext.n_classes <= len(dfa.states)


def test_compiler_rejects_malformed_partition():
    part = build_equivalence(l_eq, 2)
    bad = dict(part.class_of)
    bad[("1", "1"), 2] = "odd-one"  # a second rejecting class at length 2
    with pytest.raises(MalformedPartition):
        compile_advised_dfa(EquivalencePartition(2, part.alphabet, bad, part.accepting))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_dnormalize_preserves_probabilities(seed):
    rng = make_rng(seed)
    m = random_pfa(rng, 3, ("0", "1"), den=rng.choice([2, 3, 4, 6]))
    d = common_denominator(m)
    norm = dnormalize(m)
    assert uniform_degree(norm) == d
    for s in norm.symbols:
        for row in norm.matrices[s]:
            assert set(row.values()) <= {Fraction(1, d)}
    for n in range(4):
        for x in itertools.product("01", repeat=n):
            assert norm.accept_prob(x) == m.accept_prob(x)


def test_derandomize_uniform_dup():
    m, h = dup_cequal_uniform()
    norm = dnormalize(m)
    dfa, ens = derandomize(norm, AdviceEnsemble.point_mass(h))
    for n in range(5):
        for x in itertools.product("01", repeat=n):
            assert randomized_advised_prob(dfa, ens, x) == advised_prob(m, h, x)
    with pytest.raises(NotUniformD):
        derandomize(m, AdviceEnsemble.point_mass(h))
