"""The ten acceptance criteria, one test each.

Every test records a PASS/FAIL line (shown in the terminal summary and
printed directly) whether or not its assertions succeed.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE
from helpers import make_rng, random_advice, random_pfa, track_alphabet

from advicelab.advice import AdviceEnsemble, advised_prob, randomized_advised_prob
from advicelab.automata import Pfa
from advicelab.constructions import (
    build_equivalence, common_denominator, compile_advised_dfa, derandomize, dnormalize,
    dup_cequal_family, dup_cequal_uniform, dup_rn, equal6_cequal, extract_equivalence,
    fix_advice, palhash_rn, universal_cequal_rlin,
)
from advicelab.constructions.machines import IntersectionPfa
from advicelab.core import Track
from advicelab.criteria import (
    cequal_certificate, check_solution, density_ell, gf2_rank, gf2_solve,
    refute_cequal_complement_dup, refute_plin_ipstar,
)
from advicelab.errors import DegenerateContext, NoSolution, VerificationGap
from advicelab.game import optimal_randomized_advice, payoff_matrix, worst_case_distribution
from advicelab.languages import BINARY, SIGMA6, LanguagePredicate, complement, dup, empty, equal6, ip_star, pal_hash

HALF = Fraction(1, 2)


@contextmanager
def criterion(number, title):
    info = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        detail = f"{info['detail']}; {time.perf_counter() - start:.1f}s".lstrip("; ")
        ACCEPTANCE[number] = (ok, title, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title} ({detail})")


def test_c01_dup_exact_half():
    with criterion(1, "Dup builders: p = 1/2 iff w = w'") as info:
        builders = [dup_cequal_family(), dup_cequal_uniform()]
        pairs = 0
        start = time.perf_counter()
        for n in range(1, 7):
            for w in itertools.product("01", repeat=n):
                for v in itertools.product("01", repeat=n):
                    pairs += 1
                    for machine, h in builders:
                        assert (advised_prob(machine, h, w + v) == HALF) == (w == v), (w, v)
        info["detail"] = f"{pairs} pairs x 2 builders"
        assert pairs == 5460
        assert time.perf_counter() - start < 60


def _shaped(n):
    for u in itertools.product("01", repeat=n):
        for v in itertools.product("01", repeat=n):
            yield u + ("#",) + v


def test_c02_palhash_randomized_advice():
    with criterion(2, "Pal# randomized advice: 1 / (1/2 single, 1/4 amplified)") as info:
        checked = 0
        for amplified, err in ((False, HALF), (True, Fraction(1, 4))):
            m, d = palhash_rn(amplified)
            for n in range(5):
                for x in _shaped(n):
                    p = randomized_advised_prob(m, d, x)
                    assert p == (1 if pal_hash(x) else err), x
                    checked += 1
        info["detail"] = f"{checked} inputs"


def test_c03_compiler():
    with criterion(3, "compiled advised DFA decides 100 random languages up to length 5") as info:
        rng = random.Random(3)
        errors = 0
        for _ in range(100):
            members = {w for w in BINARY.words_upto(5) if rng.random() < 0.5}
            lang = LanguagePredicate("random", BINARY, lambda w, s=frozenset(members): w in s)
            part = build_equivalence(lang, 5)
            dfa, h = compile_advised_dfa(part)
            for x in BINARY.words_upto(5):
                word = tuple(Track(a, b) for a, b in zip(x, h(len(x))))
                errors += dfa.accepts(word) != lang(x)
            ext = extract_equivalence(dfa, h, 5, BINARY)
            assert ext.n_classes <= len(dfa.states)
        info["detail"] = f"{errors} errors"
        assert errors == 0


def _identity_holds(machine, w):
    if not isinstance(machine, IntersectionPfa):
        return True
    p1, p2 = machine.component_probs(w)
    p = machine.accept_prob(w)
    return (p - HALF == ((p1 - HALF) ** 2 + (p2 - HALF) ** 2) / 5
            and _identity_holds(machine.m1, w) and _identity_holds(machine.m2, w))


def test_c04_equal6():
    with criterion(4, "Equal6 fold: p = 1/2 iff all counts equal; identity exact") as info:
        m = equal6_cequal()
        letters = [s for s in SIGMA6 if s != "#"]
        rng = random.Random(4)
        inputs = list(itertools.chain.from_iterable(itertools.product(letters, repeat=n) for n in range(5)))
        inputs += [tuple(rng.choice(letters) for _ in range(rng.randint(0, 8))) for _ in range(10000)]
        for w in inputs:
            assert (m.accept_prob(w) == HALF) == equal6(w), w
            assert _identity_holds(m, w), w
        info["detail"] = f"{len(inputs)} inputs"


def test_c05_pipeline():
    with criterion(5, "dnormalize + derandomize preserve probabilities") as info:
        rng = make_rng(5)
        cases = [dup_cequal_uniform()]
        for _ in range(20):
            m = random_pfa(rng, rng.randint(1, 3), track_alphabet(), den=rng.choice([2, 3]))
            h1, h2 = random_advice(rng), random_advice(rng)
            ens = AdviceEnsemble(("a", "b"), lambda n, h1=h1, h2=h2: {h1(n): Fraction(1, 3), h2(n): Fraction(2, 3)}
                                 if h1(n) != h2(n) else {h1(n): 1})
            cases.append((m, ens))
        checked = 0
        for m, adv in cases:
            ens = adv if isinstance(adv, AdviceEnsemble) else AdviceEnsemble.point_mass(adv)
            d = common_denominator(m)
            norm = dnormalize(m)
            for s in norm.symbols:
                for row in norm.matrices[s]:
                    assert set(row.values()) <= {Fraction(1, d)}
            dfa, dens = derandomize(norm, ens)
            for x in BINARY.words_upto(5):
                assert randomized_advised_prob(dfa, dens, x) == randomized_advised_prob(m, ens, x), x
                checked += 1
        info["detail"] = f"{len(cases)} machines, {checked} inputs"


def test_c06_claim_sums():
    with criterion(6, "coefficient sums equal 1 on random certificates") as info:
        rng = make_rng(6)
        built = 0
        while built < 50:
            m = random_pfa(rng, rng.randint(1, 5), track_alphabet())
            h = random_advice(rng)
            n = rng.randint(2, 7)
            ell = rng.randint(1, n - 1)
            z = tuple(rng.choice("01") for _ in range(ell))
            members = {w for w in BINARY.words(n) if rng.random() < 0.6}
            lang = LanguagePredicate("random", BINARY, lambda w, s=frozenset(members): w in s)
            try:
                cert = cequal_certificate(m, h, n, ell, z, lang)
            except DegenerateContext:
                continue
            assert cert.sums_to_one and cert.reconstruction_exact()
            assert all(sum(c) == 1 for c in cert.coefficients.values())
            built += 1
        info["detail"] = f"{built} certificates"


def _cequal_fixtures():
    rng = make_rng(71)
    out = [dup_cequal_uniform(), dup_cequal_family()]
    u, d = universal_cequal_rlin(complement(dup), 8)
    out += [(u, fix_advice(d, 0)), (u, fix_advice(d, 3))]
    for k in (1, 2, 3, 4, 5, 6):
        out.append((random_pfa(rng, k, track_alphabet()), random_advice(rng)))
    return out


def _ipstar_fixtures():
    rng = make_rng(72)
    coin_mats = {s: ({0: 1}, {1: 1}) for s in ("0", "1", "$")}
    coin_mats["¢"] = ({0: HALF, 1: HALF}, {1: 1})
    out = [(Pfa(("a", "b"), ("0", "1"), coin_mats, {"b"}), None)]
    always = {s: ({0: 1},) for s in track_alphabet() + ("¢", "$")}
    out.append((Pfa(("q",), track_alphabet(), always, {"q"}), random_advice(rng)))
    u, d = universal_cequal_rlin(complement(ip_star), 12)
    out.append((u, fix_advice(d)))
    m, d = dup_rn()
    out.append((m, fix_advice(d)))
    for k in (1, 2, 2, 3, 3, 4, 4):
        out.append((random_pfa(rng, k, track_alphabet()), random_advice(rng)))
    return out


def test_c07_refuters():
    with criterion(7, "refuters return confirmed counterexamples") as info:
        gaps = 0
        a = b = 0
        for m, h in _cequal_fixtures():
            try:
                rep = refute_cequal_complement_dup(m, h)
            except VerificationGap:
                gaps += 1
                continue
            assert rep.confirmed
            a += 1
        for m, h in _ipstar_fixtures():
            try:
                rep = refute_plin_ipstar(m, h)
            except VerificationGap:
                gaps += 1
                continue
            assert rep.confirmed
            b += 1
        info["detail"] = f"co-Dup {a} confirmed, IP* {b} confirmed, {gaps} gaps"
        assert gaps == 0 and a >= 10 and b >= 10


def test_c08_duality():
    with criterion(8, "maximin = minimax; ensemble guarantees the value") as info:
        rng = random.Random(8)
        games = []
        for _ in range(100):
            r, c = rng.randint(1, 16), rng.randint(1, 16)
            games.append([[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(c)] for _ in range(r)])
        for builder, lang, lengths in ((palhash_rn, pal_hash, (1, 2, 3)), (dup_rn, dup, (1, 2, 3))):
            for amplified in (False, True):
                m, d = builder(amplified)
                for n in lengths if not amplified else (1, 2):
                    games.append(payoff_matrix(m, lang, n, d.alphabet))
        for g in games:
            sol = optimal_randomized_advice(g)
            wc = worst_case_distribution(g)
            assert sol.value == wc.attained
            grid = g.grid if hasattr(g, "grid") else g
            cols = list(sol.advice_strategy)
            for row in grid:
                assert sum(sol.advice_strategy[y] * v for y, v in zip(cols, row)) >= sol.value
        info["detail"] = f"{len(games)} games"


def test_c09_gf2():
    with criterion(9, "GF(2) solutions verify; full-rank square never NoSolution") as info:
        rng = random.Random(9)
        square = 0
        for _ in range(100):
            m = rng.randint(1, 8)
            n = rng.randint(m, 8)
            while True:
                words = [tuple(rng.choice("01") for _ in range(n)) for _ in range(m)]
                if gf2_rank(words) == m:
                    break
            r = tuple(rng.choice("01") for _ in range(m))
            try:
                y = gf2_solve(words, r)
            except NoSolution:
                raise AssertionError("NoSolution on an independent system")
            assert check_solution(words, r, y)
            square += m == n
        info["detail"] = f"100 systems, {square} square"


def test_c10_density():
    with criterion(10, "density values") as info:
        assert density_ell(ip_star, empty(), 2) == Fraction(1, 4)
        start = time.perf_counter()
        table = {n: density_ell(ip_star, empty(), n) for n in range(1, 15)}
        table2 = {n: density_ell(ip_star, dup, n) for n in range(1, 15)}
        elapsed = time.perf_counter() - start
        assert all(0 <= v <= HALF for v in list(table.values()) + list(table2.values()))
        assert elapsed < 60
        info["detail"] = f"table n=1..14 in {elapsed:.1f}s"
