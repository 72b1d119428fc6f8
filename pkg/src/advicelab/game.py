"""Advice as a zero-sum game.

Player 1 picks an advice string ``y``, Player 2 picks an input ``x``, and
Player 1 scores 1 when the advised DFA classifies ``x`` correctly.  An
optimal mixed strategy of Player 1 is the best randomized advice; an optimal
strategy of Player 2 is the hardest input distribution.  Their values
coincide (minimax), and are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .advice import AdviceEnsemble, AdviceFunction
from .automata import Dfa, pfa_accept_prob
from .core import Alphabet, as_word, show, track_compose
from .errors import ScaleLimit, SupportMismatch
from .linalg import ZERO, as_matrix, format_rational, solve_zero_sum

DEFAULT_MAX_STRINGS = 1 << 20
DEFAULT_MAX_CELLS = 1 << 16


@dataclass
class PayoffMatrix:
    """``grid[i][j]`` is Player 1's payoff on input ``rows[i]`` and advice ``cols[j]``."""

    rows: list
    cols: list
    grid: list
    subsampled: bool = False

    def as_record(self) -> dict:
        return {
            "inputs": [show(x) for x in self.rows],
            "advice": [show(y) for y in self.cols],
            "payoff": [[format_rational(v) for v in row] for row in self.grid],
            "subsampled": self.subsampled,
        }


def _accepts(machine, x, y) -> bool:
    word = track_compose(x, y, allow_blank=True)
    if isinstance(machine, Dfa):
        return machine.accepts(word)
    p = pfa_accept_prob(machine, word)
    if p not in (0, 1):
        raise ValueError("payoff matrices need a deterministic machine")
    return p == 1


def payoff_matrix(machine, language, n: int, gamma, max_strings: int = DEFAULT_MAX_STRINGS,
                  max_cells: int = DEFAULT_MAX_CELLS, columns=None) -> PayoffMatrix:
    """0/1 payoffs ``P[x][y] = 1`` iff the machine on ``<x, y>`` agrees with ``language`` on ``x``.

    ``columns`` restricts the advice strings (used for heuristic subsampling);
    by default all of ``Γ^n`` is enumerated.
    """
    sigma = language.alphabet
    gamma = Alphabet(gamma, allow_blank=True)
    if sigma.n_words(n) > max_strings:
        raise ScaleLimit(f"|Σ^{n}| = {sigma.n_words(n)} exceeds the budget {max_strings}")
    if columns is None:
        if gamma.n_words(n) > max_strings:
            raise ScaleLimit(f"|Γ^{n}| = {gamma.n_words(n)} exceeds the budget {max_strings}")
        cols = list(gamma.words(n))
        subsampled = False
    else:
        cols = [as_word(y, gamma) for y in columns]
        subsampled = True
    rows = list(sigma.words(n))
    if len(rows) * len(cols) > max_cells:
        raise ScaleLimit(f"{len(rows)} x {len(cols)} payoff matrix exceeds {max_cells} cells")
    grid = [[Fraction(int(_accepts(machine, x, y) == language(x))) for y in cols] for x in rows]
    return PayoffMatrix(rows, cols, grid, subsampled)


@dataclass
class GameSolution:
    value: Fraction
    advice_strategy: dict  # ρ: advice word -> probability
    input_strategy: dict  # μ: input word -> probability
    n: int | None = None
    alphabet: tuple = ()

    def ensemble(self) -> AdviceEnsemble:
        """The advice strategy as randomized advice for length ``n``."""
        n, rho = self.n, {y: p for y, p in self.advice_strategy.items() if p}

        def dist(m):
            if m != n:
                raise SupportMismatch(f"game solved for length {n}, asked for {m}")
            return rho

        return AdviceEnsemble(self.alphabet, dist, name=f"game[{n}]")

    def as_record(self) -> dict:
        return {
            "value": format_rational(self.value),
            "advice_strategy": {show(y): format_rational(p) for y, p in self.advice_strategy.items() if p},
            "input_strategy": {show(x): format_rational(p) for x, p in self.input_strategy.items() if p},
        }


def _grid(payoff):
    if isinstance(payoff, PayoffMatrix):
        return payoff.rows, payoff.cols, as_matrix(payoff.grid)
    grid = as_matrix(payoff)
    return list(range(len(grid))), list(range(len(grid[0]))), grid


def optimal_randomized_advice(payoff) -> GameSolution:
    """Exact game value with the advice player's optimal mixture ρ and the input player's μ.

    For every input ``x``: ``sum_y ρ(y) P[x][y] >= value``.
    """
    rows, cols, grid = _grid(payoff)
    transposed = [list(col) for col in zip(*grid)]
    sol = solve_zero_sum(transposed)  # advice strings are the maximizing rows
    rho = dict(zip(cols, sol.row_strategy))
    mu = dict(zip(rows, sol.col_strategy))
    n = len(cols[0]) if cols and isinstance(cols[0], tuple) else None
    alphabet = ()
    if n is not None:
        alphabet = tuple(dict.fromkeys(s for y in cols for s in y))
    return GameSolution(sol.value, rho, mu, n, alphabet)


@dataclass
class WorstCase:
    distribution: dict  # μ over inputs
    advice: object  # y*
    attained: Fraction
    value: Fraction
    column_payoffs: list = field(default_factory=list)

    def as_record(self) -> dict:
        return {
            "value": format_rational(self.value),
            "distribution": {show(x): format_rational(p) for x, p in self.distribution.items() if p},
            "advice": show(self.advice) if isinstance(self.advice, tuple) else self.advice,
            "attained": format_rational(self.attained),
        }


def worst_case_distribution(payoff) -> WorstCase:
    """Minimizing input distribution μ and the first advice string ``y*`` that is best against it.

    ``sum_x μ(x) P[x][y*]`` equals the game value exactly.
    """
    rows, cols, grid = _grid(payoff)
    sol = optimal_randomized_advice(payoff)
    mu = sol.input_strategy
    scores = [sum((mu[x] * grid[i][j] for i, x in enumerate(rows)), ZERO) for j in range(len(cols))]
    best = max(scores)
    j = scores.index(best)  # columns are in lexicographic order, so ties go to the first
    return WorstCase(mu, cols[j], best, sol.value, scores)


@dataclass
class AverRegResult:
    success_mass: Fraction
    epsilon: Fraction
    passed: bool
    misclassified: list = field(default_factory=list)

    def as_record(self) -> dict:
        return {
            "success_mass": format_rational(self.success_mass),
            "epsilon": format_rational(self.epsilon),
            "passed": self.passed,
            "misclassified": [show(x) for x in self.misclassified],
        }


def averreg_check(machine, h: AdviceFunction, mu, language, n: int, epsilon) -> AverRegResult:
    """Exact mass of inputs (drawn from μ) that ``machine`` with advice ``h(n)`` classifies correctly.

    Passes iff the mass is at least ``1 - epsilon``.
    """
    epsilon = Fraction(epsilon)
    mu = {as_word(x, language.alphabet): Fraction(p) for x, p in mu.items()}
    if any(len(x) != n for x in mu):
        raise SupportMismatch(f"μ has support outside Σ^{n}")
    if any(p < 0 for p in mu.values()) or sum(mu.values()) != 1:
        raise SupportMismatch("μ is not a probability distribution")
    y = h(n) if isinstance(h, AdviceFunction) or callable(h) else as_word(h)
    success, wrong = ZERO, []
    for x, p in mu.items():
        if not p:
            continue
        if _accepts(machine, x, y) == language(x):
            success += p
        else:
            wrong.append(x)
    return AverRegResult(success, epsilon, success >= 1 - epsilon, wrong)


def uniform_distribution(alphabet, n: int) -> dict:
    words = list(Alphabet(alphabet, allow_blank=True).words(n))
    return {w: Fraction(1, len(words)) for w in words}


__all__ = [
    "PayoffMatrix", "payoff_matrix", "GameSolution", "optimal_randomized_advice",
    "WorstCase", "worst_case_distribution", "AverRegResult", "averreg_check",
    "uniform_distribution",
]
