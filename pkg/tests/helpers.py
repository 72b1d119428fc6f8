"""Random machines and advice for property tests."""

import random
from fractions import Fraction

from advicelab.advice import AdviceFunction
from advicelab.automata import Dfa, Pfa
from advicelab.core import Track


def random_row(rng, k, den):
    cuts = sorted(rng.randint(0, den) for _ in range(k - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return {j: Fraction(p, den) for j, p in enumerate(parts) if p}


def random_pfa(rng, k, alphabet, den=4, n_final=None):
    states = tuple(f"s{i}" for i in range(k))
    mats = {s: tuple(random_row(rng, k, den) for _ in range(k)) for s in tuple(alphabet) + ("¢", "$")}
    if n_final is None:
        n_final = rng.randint(1, k)
    final = set(rng.sample(states, n_final))
    return Pfa(states, tuple(alphabet), mats, final, states[0])


def random_dfa(rng, k, alphabet):
    states = tuple(f"d{i}" for i in range(k))
    delta = {(q, s): rng.choice(states) for q in states for s in tuple(alphabet) + ("¢", "$")}
    acc = set(rng.sample(states, rng.randint(1, k)))
    return Dfa(states, tuple(alphabet), delta, states[0], acc)


def track_alphabet(upper=("0", "1"), lower=("a", "b")):
    return tuple(Track(u, l) for u in upper for l in lower)


def random_advice(rng, gamma=("a", "b")):
    table = {}

    def h(n):
        if n not in table:
            table[n] = tuple(rng.choice(gamma) for _ in range(n))
        return table[n]

    return AdviceFunction(gamma, h, name="random")


def make_rng(seed):
    return random.Random(seed)
