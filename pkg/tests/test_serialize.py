import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advicelab.advice import AdviceEnsemble, advised_prob, randomized_advised_prob
from advicelab.constructions import (
    derandomize, dnormalize, dup_cequal_family, dup_cequal_uniform, lij_cequal, palhash_rn,
)
from advicelab.core import Track
from advicelab.errors import DocumentError
from advicelab.languages import by_name
from advicelab.serialize import (
    decode_symbol, decode_word, dumps, encode_symbol, encode_word, loads, to_document,
)

from helpers import make_rng, random_dfa, random_pfa, track_alphabet


def test_symbol_encoding():
    for s in ("0", "a1", Track("0", "#"), Track("1", Track("0", "1")), ("x", (1, 2)), 3):
        assert decode_symbol(json.loads(json.dumps(encode_symbol(s)))) == s
    assert encode_word(("a1", "a2")) == "a1 a2"
    assert decode_word("") == ()
    assert decode_word(encode_word((Track("0", "a"),))) == (Track("0", "a"),)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_pfa_roundtrip(seed):
    rng = make_rng(seed)
    m = random_pfa(rng, 3, track_alphabet(), den=rng.choice([3, 4, 5]))
    text = dumps(m)
    back = loads(text)
    assert dumps(back) == text
    for x in itertools.product(track_alphabet(), repeat=2):
        assert back.accept_prob(x) == m.accept_prob(x)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_dfa_roundtrip(seed):
    d = random_dfa(make_rng(seed), 4, ("0", "1"))
    text = dumps(d)
    assert dumps(loads(text)) == text


def test_construction_documents_roundtrip():
    fam, h = dup_cequal_family()
    text = dumps(fam, range(0, 7, 2))
    back = loads(text)
    assert dumps(back) == text
    assert advised_prob(back, h, "011011") == Fraction(1, 2)
    adv = loads(dumps(h, range(7)))
    assert adv(6) == h(6)
    m, d = palhash_rn(True)
    ens = loads(dumps(d, range(4)))
    assert ens(3) == d(3)
    assert dumps(lij_cequal(1, 2)) == dumps(loads(dumps(lij_cequal(1, 2))))
    assert loads(dumps(by_name("co_dup"))).name == "co_dup"


def test_derandomized_documents():
    m, h = dup_cequal_uniform()
    dfa, ens = derandomize(dnormalize(m), AdviceEnsemble.point_mass(h))
    dfa2, ens2 = loads(dumps(dfa)), loads(dumps(ens, range(4)))
    for x in itertools.product("01", repeat=3):
        assert randomized_advised_prob(dfa2, ens2, x) == advised_prob(m, h, x)


def test_rationals_are_strings():
    doc = to_document(lij_cequal(1, 2))
    assert all(isinstance(t[3], str) for t in doc["transitions"])
    assert "0.5" not in dumps(doc)


@pytest.mark.parametrize("text, line", [
    ('{"kind": "pfa",\n "states": ["a"]\n}', 1),
    ('{\n "kind": "machine"\n}', 2),
    ('{"kind": "pfa", "states": ["a"], "alphabet": ["0"],\n "initial": "a", "final": [],\n'
     ' "transitions": [["0", "a", "b", "1/2"]]}', 3),
    ('{"kind": "dfa",\n "states": ["a"] "x"}', 2),
])
def test_document_errors_have_lines(text, line):
    with pytest.raises(DocumentError) as e:
        loads(text)
    assert e.value.line == line
    assert str(e.value).startswith(f"line {line}:")


def test_non_stochastic_document_rejected():
    doc = to_document(lij_cequal(1, 2))
    doc["transitions"][0][3] = "1/3"
    with pytest.raises(DocumentError):
        loads(json.dumps(doc))
    doc = to_document(lij_cequal(1, 2))
    doc["transitions"][0][3] = "0.5"
    with pytest.raises(DocumentError):
        loads(json.dumps(doc))
