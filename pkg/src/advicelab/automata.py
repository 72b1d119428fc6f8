"""One-way deterministic and probabilistic finite automata.

Both machine kinds read ``¢ w $``: the endmarker steps are ordinary
transitions (for a :class:`Pfa`, two extra stochastic matrices).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .core import CENT, DOLLAR, ENDMARKERS, as_word
from .errors import DimensionMismatch, NotStochastic, UnknownSymbol
from .linalg import HALF, ONE, ZERO, format_rational

State = str


# --------------------------------------------------------------------------- DFA


@dataclass(frozen=True, eq=False)
class Dfa:
    states: tuple
    alphabet: tuple
    delta: Mapping[tuple, State]
    initial: State
    accepting: frozenset
    rejecting: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "rejecting", frozenset(self.rejecting))
        states = set(self.states)
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial!r} not a state")
        if self.accepting & self.rejecting:
            raise ValueError("accepting and rejecting sets overlap")
        if not (self.accepting | self.rejecting) <= states:
            raise ValueError("halting states must be states")
        for q in self.states:
            for s in self.symbols:
                t = self.delta.get((q, s))
                if t is None:
                    raise ValueError(f"transition function not total at ({q!r}, {s!r})")
                if t not in states:
                    raise ValueError(f"transition ({q!r}, {s!r}) -> unknown state {t!r}")
        absorbing = frozenset(q for q in self.states if all(self.delta[q, s] == q for s in self.symbols))
        object.__setattr__(self, "_absorbing", absorbing)
        object.__setattr__(self, "_alphabet_set", frozenset(self.alphabet))

    @property
    def symbols(self) -> tuple:
        return self.alphabet + ENDMARKERS

    def step(self, q: State, symbol) -> State:
        try:
            return self.delta[q, symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} not in the machine's alphabet") from None

    def run(self, word) -> State:
        """State reached after reading ``¢ word $``."""
        q = self.step(self.initial, CENT)
        absorbing = self._absorbing
        for s in word:
            if q in absorbing:
                if s not in self._alphabet_set:
                    raise UnknownSymbol(f"symbol {s!r} not in the machine's alphabet")
                continue
            q = self.step(q, s)
        return self.step(q, DOLLAR)

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    def trace(self, word) -> list:
        q = self.step(self.initial, CENT)
        out = [self.initial, q]
        for s in word:
            q = self.step(q, s)
            out.append(q)
        out.append(self.step(q, DOLLAR))
        return out


def dfa_run(machine: Dfa, word):
    """Final state and verdict of ``machine`` on ``¢ word $``."""
    word = as_word(word, machine.alphabet)
    q = machine.run(word)
    return q, q in machine.accepting


# --------------------------------------------------------------------------- PFA


def _as_rows(matrix, n: int) -> tuple:
    """Normalize a dense or sparse matrix into a tuple of ``{column: prob}`` dicts."""
    if isinstance(matrix, Mapping):
        rows = [dict() for _ in range(n)]
        for i, row in matrix.items():
            rows[i] = {j: Fraction(v) for j, v in row.items() if v}
        return tuple(rows)
    matrix = list(matrix)
    if len(matrix) != n:
        raise DimensionMismatch(f"matrix has {len(matrix)} rows, expected {n}")
    out = []
    for row in matrix:
        if isinstance(row, Mapping):
            out.append({j: Fraction(v) for j, v in row.items() if v})
        else:
            row = list(row)
            if len(row) != n:
                raise DimensionMismatch(f"row has {len(row)} entries, expected {n}")
            out.append({j: Fraction(v) for j, v in enumerate(row) if v})
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Pfa:
    """Rational 1pfa ``(Q, Σ, ν_ini, {M_σ}, F)`` with a one-hot initial vector.

    ``matrices`` maps every input symbol and both endmarkers to a stochastic
    matrix, given densely or as sparse rows ``{column_index: probability}``.
    """

    states: tuple
    alphabet: tuple
    matrices: Mapping
    final: frozenset
    initial: State | None = None

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "final", frozenset(self.final))
        if self.initial is None:
            object.__setattr__(self, "initial", states[0])
        index = {q: i for i, q in enumerate(states)}
        if len(index) != len(states):
            raise ValueError("duplicate state names")
        if self.initial not in index:
            raise ValueError(f"initial state {self.initial!r} not a state")
        if not self.final <= set(states):
            raise ValueError("final states must be states")
        n = len(states)
        rows = {}
        for s in self.alphabet + ENDMARKERS:
            if s not in self.matrices:
                raise ValueError(f"missing matrix for symbol {s!r}")
            m = _as_rows(self.matrices[s], n)
            for i, row in enumerate(m):
                if any(v < 0 or v > 1 or j < 0 or j >= n for j, v in row.items()) or sum(row.values()) != 1:
                    raise NotStochastic(f"matrix for {s!r}, row {states[i]!r} is not stochastic")
            rows[s] = m
        object.__setattr__(self, "matrices", rows)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_final_idx", frozenset(index[q] for q in self.final))

    @property
    def symbols(self) -> tuple:
        return self.alphabet + ENDMARKERS

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, q: State) -> int:
        return self._index[q]

    def matrix(self, symbol) -> tuple:
        """Dense copy of ``M_symbol``."""
        n = len(self.states)
        return tuple(tuple(row.get(j, ZERO) for j in range(n)) for row in self.matrices[symbol])

    def initial_vector(self) -> dict:
        return {self._index[self.initial]: ONE}

    def final_vector(self) -> tuple:
        return tuple(ONE if q in self.final else ZERO for q in self.states)

    def step(self, dist: Mapping[int, Fraction], symbol) -> dict:
        try:
            m = self.matrices[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} not in the machine's alphabet") from None
        out: dict = {}
        for i, p in dist.items():
            for j, v in m[i].items():
                out[j] = out.get(j, ZERO) + p * v
        return out

    def distribution(self, prefix=(), cent: bool = True, dollar: bool = False) -> dict:
        """Sparse state distribution after ``¢ prefix`` (optionally followed by ``$``)."""
        dist = self.initial_vector()
        if cent:
            dist = self.step(dist, CENT)
        for s in prefix:
            dist = self.step(dist, s)
        if dollar:
            dist = self.step(dist, DOLLAR)
        return dist

    def dense(self, dist: Mapping[int, Fraction]) -> tuple:
        return tuple(dist.get(i, ZERO) for i in range(len(self.states)))

    def accept_mass(self, dist: Mapping[int, Fraction]) -> Fraction:
        return sum((p for i, p in dist.items() if i in self._final_idx), ZERO)

    def accept_prob(self, word) -> Fraction:
        return self.accept_mass(self.distribution(word, dollar=True))

    def accept_from(self, dist: Mapping[int, Fraction], suffix) -> Fraction:
        """Acceptance probability when reading ``suffix $`` from distribution ``dist``."""
        for s in suffix:
            dist = self.step(dist, s)
        return self.accept_mass(self.step(dist, DOLLAR))

    def denominators(self) -> set:
        return {v.denominator for m in self.matrices.values() for row in m for v in row.values()}

    def describe(self) -> str:
        lines = [f"Pfa states={list(self.states)} initial={self.initial!r} final={sorted(self.final)}"]
        for s in self.symbols:
            lines.append(f"  M[{s!r}]")
            for q, row in zip(self.states, self.matrices[s]):
                cells = ", ".join(f"{self.states[j]}:{format_rational(v)}" for j, v in sorted(row.items()))
                lines.append(f"    {q}: {cells}")
        return "\n".join(lines)


class PfaFamily:
    """Length-indexed machines ``n -> Pfa`` sharing states and alphabet.

    ``generator(n)`` builds the machine used on inputs of length ``n``.
    """

    def __init__(self, generator: Callable[[int], Pfa], name: str = "family"):
        self._generator = generator
        self._cache: dict = {}
        self.name = name

    def __call__(self, n: int) -> Pfa:
        if n < 0:
            raise ValueError("length must be nonnegative")
        if n not in self._cache:
            self._cache[n] = self._generator(n)
        return self._cache[n]

    def accept_prob(self, word) -> Fraction:
        return self(len(word)).accept_prob(word)

    def _any(self) -> Pfa:
        return next(iter(self._cache.values())) if self._cache else self(1)

    @property
    def alphabet(self) -> tuple:
        return self._any().alphabet

    @property
    def states(self) -> tuple:
        return self._any().states


def pfa_accept_prob(machine, word) -> Fraction:
    """Exact ``ν_ini M_¢ M_w1 ... M_wn M_$ ξ_F^T``.

    Works for :class:`Pfa`, :class:`PfaFamily`, composite machines exposing
    ``accept_prob``, and :class:`Dfa` (returning 0 or 1).
    """
    if isinstance(machine, Dfa):
        return ONE if dfa_run(machine, word)[1] else ZERO
    return machine.accept_prob(as_word(word, machine.alphabet))


def dfa_to_pfa(machine: Dfa) -> Pfa:
    """Lift a DFA to a 1pfa with 0/1 matrices and ``F = Q_acc``."""
    index = {q: i for i, q in enumerate(machine.states)}
    mats = {}
    for s in machine.symbols:
        mats[s] = tuple({index[machine.delta[q, s]]: ONE} for q in machine.states)
    return Pfa(machine.states, machine.alphabet, mats, machine.accepting, machine.initial)


def as_pfa(machine) -> Pfa:
    return dfa_to_pfa(machine) if isinstance(machine, Dfa) else machine


# --------------------------------------------------------------------------- modes


class Verdict(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AcceptanceMode:
    """How an acceptance probability decides membership.

    ``kind`` is ``"exact-half"``, ``"unbounded"`` or ``"bounded"``; the
    bounded mode carries an error bound ``epsilon < 1/2``.
    """

    kind: str
    epsilon: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("exact-half", "unbounded", "bounded"):
            raise ValueError(f"unknown acceptance mode {self.kind!r}")
        if self.kind == "bounded":
            if self.epsilon is None or not (0 <= Fraction(self.epsilon) < HALF):
                raise ValueError("bounded error needs 0 <= epsilon < 1/2")
            object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        elif self.epsilon is not None:
            raise ValueError(f"{self.kind} mode takes no epsilon")

    def __str__(self):
        return self.kind if self.epsilon is None else f"{self.kind}({format_rational(self.epsilon)})"


ExactHalf = AcceptanceMode("exact-half")
UnboundedError = AcceptanceMode("unbounded")


def BoundedError(epsilon) -> AcceptanceMode:
    return AcceptanceMode("bounded", Fraction(epsilon))


def classify(p: Fraction, mode: AcceptanceMode) -> Verdict:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    if mode.kind == "exact-half":
        return Verdict.MEMBER if p == HALF else Verdict.NON_MEMBER
    if mode.kind == "unbounded":
        return Verdict.MEMBER if p > HALF else Verdict.NON_MEMBER
    if p >= 1 - mode.epsilon:
        return Verdict.MEMBER
    if p <= mode.epsilon:
        return Verdict.NON_MEMBER
    return Verdict.UNDETERMINED


def error_probability(p: Fraction, member: bool, mode: AcceptanceMode) -> Fraction:
    """Probability mass on the wrong outcome (bounded-error reading)."""
    return 1 - p if member else p
