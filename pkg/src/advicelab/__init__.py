"""advicelab: exact simulation and verification of finite automata with advice.

Deterministic and probabilistic one-way automata read an input together
with an advice string that depends only on the input length.  Everything is
computed with exact rationals.
"""

from .advice import (
    AdviceEnsemble,
    AdviceFunction,
    advised_prob,
    randomized_advised_prob,
    verify_recognition,
)
from .automata import (
    AcceptanceMode,
    BoundedError,
    Dfa,
    ExactHalf,
    Pfa,
    PfaFamily,
    UnboundedError,
    Verdict,
    classify,
    dfa_run,
    pfa_accept_prob,
)
from .core import BLANK, CENT, DOLLAR, Alphabet, Track, as_word, show, track_compose

__version__ = "0.1.0"

__all__ = [
    "AdviceEnsemble", "AdviceFunction", "advised_prob", "randomized_advised_prob",
    "verify_recognition", "AcceptanceMode", "BoundedError", "Dfa", "ExactHalf", "Pfa",
    "PfaFamily", "UnboundedError", "Verdict", "classify", "dfa_run", "pfa_accept_prob",
    "BLANK", "CENT", "DOLLAR", "Alphabet", "Track", "as_word", "show", "track_compose",
]
