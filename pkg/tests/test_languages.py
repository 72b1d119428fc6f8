import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from advicelab.languages import (
    BINARY, SIGMA6, by_name, complement, dup, empty, equal6, from_set, ip_star, l_eq, l_ij,
    names, pal_hash, universe,
)


def _binary(n):
    return ["".join(p) for p in itertools.product("01", repeat=n)]


def test_examples():
    assert dup("0101") and not dup("01")
    assert pal_hash("01#10") and pal_hash("#") and not pal_hash("0#1")
    assert ip_star("10") and not ip_star("11") and ip_star("")
    assert l_eq("0011") and l_eq("") and not l_eq("0101")
    assert equal6(()) and equal6("a1a2a3a4a5a6")
    assert complement(dup)("01")


def test_dup_and_leq_against_generated_sets():
    dup_set = {w + w for k in range(6) for w in _binary(k)}
    leq_set = {"0" * k + "1" * k for k in range(6)}
    for n in range(11):
        for x in _binary(n):
            assert dup(x) == (x in dup_set)
            assert l_eq(x) == (x in leq_set)


def test_pal_hash_against_generated_set():
    members = {w + "#" + w[::-1] for k in range(5) for w in _binary(k)}
    for n in range(10):
        for t in itertools.product("01#", repeat=n):
            x = "".join(t)
            assert pal_hash(x) == (x in members)


def test_ip_star_parse_rule():
    # even length: a is empty; odd: the first symbol is a
    for n in range(9):
        for x in _binary(n):
            body = x[n % 2:]
            h = len(body) // 2
            u, v = body[:h], body[h:]
            ip = sum(int(a) * int(b) for a, b in zip(u[::-1], v)) % 2
            assert ip_star(x) == (ip == 0)


@given(st.lists(st.sampled_from([s for s in SIGMA6 if s != "#"]), max_size=8))
def test_equal6_is_intersection(w):
    w = tuple(w)
    assert equal6(w) == all(l_ij(1, i)(w) for i in range(2, 7))
    counts = {w.count(f"a{i}") for i in range(1, 7)}
    assert equal6(w) == (len(counts) == 1)


def test_complement_involution_and_lookup():
    co = complement(dup)
    assert co.name == "co_dup"
    assert complement(co).name == "dup"
    for x in _binary(4):
        assert complement(co)(x) == dup(x)
    assert by_name("co_ip_star")("11")
    assert by_name("l_1_3")(("a1", "a3"))
    assert "dup" in names()
    with pytest.raises(KeyError):
        by_name("nope")


def test_finite_languages():
    f = from_set(["01", "1"], BINARY)
    assert f("01") and f("1") and not f("0")
    assert not empty()("0") and universe()("0")
    assert f.slice(2) == [("0", "1")]
