"""Command-line front end: ``advicelab {simulate,verify,refute,game,density,build}``.

Machines and advice come from JSON documents or from named constructions
(``builtin:<name>``).  Reports go to stdout as JSON or TSV; diagnostics and
optional timing go to stderr.  The exit code is 0 iff the report records no
violation or failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import serialize
from .advice import AdviceEnsemble, AdviceFunction, advised_prob, randomized_advised_prob, verify_recognition
from .automata import BoundedError, ExactHalf, Pfa, UnboundedError, pfa_accept_prob
from .constructions import machines as mk
from .core import Alphabet, Track, as_word, show
from .criteria import density_ell, refute_cequal_complement_dup, refute_plin_ipstar
from .errors import AdviceLabError, ScaleLimit
from .game import optimal_randomized_advice, payoff_matrix, worst_case_distribution
from .languages import LanguagePredicate, by_name
from .linalg import HALF, ONE, format_rational, parse_rational

# --------------------------------------------------------------------------- named constructions


def _coin():
    mats = {s: ({0: ONE}, {1: ONE}) for s in ("0", "1", "$")}
    mats["¢"] = ({0: HALF, 1: HALF}, {1: ONE})
    return Pfa(("flip", "out"), ("0", "1"), mats, {"out"}, "flip"), None


def _lij(i, j):
    return mk.lij_cequal(i, j), None


BUILTINS = {
    "coin": _coin,
    "dup-cequal": mk.dup_cequal_family,
    "dup-cequal-uniform": mk.dup_cequal_uniform,
    "palhash-rn": lambda: mk.palhash_rn(False),
    "palhash-rn-amplified": lambda: mk.palhash_rn(True),
    "dup-rn": lambda: mk.dup_rn(False),
    "dup-rn-amplified": lambda: mk.dup_rn(True),
    "equal6-cequal": lambda: (mk.equal6_cequal(), None),
}


def builtin(name: str):
    """``(machine, advice-or-ensemble-or-None)`` for a named construction; ``lij-cequal:i:j`` too."""
    if name.startswith("lij-cequal:"):
        _, i, j = name.split(":")
        return _lij(int(i), int(j))
    if name not in BUILTINS:
        raise SystemExit(f"unknown construction {name!r}; known: {', '.join(sorted(BUILTINS))}, lij-cequal:i:j")
    return BUILTINS[name]()


def _load(spec):
    if spec.startswith("builtin:"):
        return builtin(spec[len("builtin:"):])[0]
    return serialize.load(spec)


def _machine_and_advice(args):
    """Resolve ``--machine``/``--advice``; a builtin machine brings its own advice unless overridden."""
    advice = None
    if args.machine.startswith("builtin:"):
        machine, advice = builtin(args.machine[len("builtin:"):])
    else:
        machine = serialize.load(args.machine)
    if getattr(args, "advice", None):
        advice = _load(args.advice)
    return machine, advice


def _lengths(text: str) -> list:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


def _mode(args):
    if args.mode == "exact-half":
        return ExactHalf
    if args.mode == "unbounded":
        return UnboundedError
    return BoundedError(parse_rational(args.epsilon))


# --------------------------------------------------------------------------- reports


def _flatten(prefix, value, out):
    if isinstance(value, (dict, list)) and not value:
        out.append((prefix, json.dumps(value)))
    elif isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, "" if value is None else json.dumps(value, ensure_ascii=False)
                    if not isinstance(value, str) else value))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, ensure_ascii=False, indent=1) + "\n"
    rows: list = []
    _flatten("", report, rows)
    return "".join(f"{k}\t{v}\n" for k, v in rows)


# --------------------------------------------------------------------------- commands


def cmd_simulate(args) -> dict:
    machine, advice = _machine_and_advice(args)
    alphabet = None
    lang_alpha = getattr(machine, "alphabet", None)
    if lang_alpha and isinstance(lang_alpha[0], Track):
        alphabet = tuple(dict.fromkeys(s.upper for s in lang_alpha))
    elif lang_alpha:
        alphabet = tuple(lang_alpha)
    x = as_word(args.input, alphabet)
    if advice is None:
        p = pfa_accept_prob(machine, x)
    elif isinstance(advice, AdviceEnsemble):
        p = randomized_advised_prob(machine, advice, x)
    else:
        p = advised_prob(machine, advice, x)
    return {"command": "simulate", "input": show(x), "probability": format_rational(p), "ok": True}


def cmd_verify(args) -> dict:
    machine, advice = _machine_and_advice(args)
    language = by_name(args.language)
    mode = _mode(args)
    per_length, ok = [], True
    for n in _lengths(args.lengths):
        rep = verify_recognition(machine, advice, language, n, mode, max_strings=args.max_strings)
        per_length.append(rep.as_record())
        ok = ok and rep.ok
    return {"command": "verify", "language": language.name, "mode": str(mode),
            "lengths": per_length, "ok": ok}


def cmd_refute(args) -> dict:
    machine, advice = _machine_and_advice(args)
    if isinstance(advice, AdviceEnsemble):
        advice = mk.fix_advice(advice)
    if args.criterion in ("co_dup", "cequal"):
        rep = refute_cequal_complement_dup(machine, advice)
    elif args.criterion in ("ip_star", "plin"):
        rep = refute_plin_ipstar(machine, advice, budget=args.budget)
    else:
        raise SystemExit(f"unknown criterion {args.criterion!r}; use co_dup or ip_star")
    rec = rep.as_record()
    # a confirmed counterexample is the expected outcome of a refutation
    return {"command": "refute", **rec, "ok": rep.confirmed}


def cmd_game(args) -> dict:
    machine, advice = _machine_and_advice(args)
    language = by_name(args.language)
    if args.gamma:
        gamma = tuple(args.gamma.split(","))
    elif advice is not None:
        gamma = tuple(advice.alphabet)
    else:
        raise SystemExit("--gamma is required when the machine has no advice")
    columns = None
    total = Alphabet(gamma, allow_blank=True).n_words(args.n)
    if args.max_columns is not None and total > args.max_columns:
        rng = random.Random(args.seed)
        all_cols = list(Alphabet(gamma, allow_blank=True).words(args.n))
        columns = [all_cols[i] for i in sorted(rng.sample(range(total), args.max_columns))]
    elif total > args.max_strings:
        raise ScaleLimit(f"|Γ^{args.n}| = {total} exceeds --max-strings; use --max-columns to subsample")
    P = payoff_matrix(machine, language, args.n, gamma, max_strings=args.max_strings, columns=columns)
    sol = optimal_randomized_advice(P)
    report = {"command": "game", "n": args.n, "language": language.name,
              "heuristic_subsample": P.subsampled, "columns": len(P.cols), **sol.as_record()}
    guarantee = min(sum((sol.advice_strategy[y] * P.grid[i][j] for j, y in enumerate(P.cols)), Fraction(0))
                    for i in range(len(P.rows)))
    report["advice_guarantee"] = format_rational(guarantee)
    ok = guarantee >= sol.value
    if args.worst_case:
        wc = worst_case_distribution(P)
        report["worst_case"] = wc.as_record()
        report["duality_equal"] = wc.attained == sol.value
        ok = ok and wc.attained == sol.value
    report["ok"] = ok
    return report


def _advised_language(machine, advice, alphabet) -> LanguagePredicate:
    def test(x):
        if isinstance(advice, AdviceFunction):
            return advised_prob(machine, advice, x) > HALF
        return pfa_accept_prob(machine, x) > HALF

    return LanguagePredicate(f"advised[{getattr(advice, 'name', 'none')}]", alphabet, test)


def cmd_density(args) -> dict:
    a = by_name(args.a)
    if args.b:
        b = by_name(args.b)
    elif args.machine:
        machine, advice = _machine_and_advice(args)
        b = _advised_language(machine, advice, a.alphabet)
    else:
        raise SystemExit("give a second language or --machine")
    table = {str(n): format_rational(density_ell(a, b, n, args.max_strings)) for n in _lengths(args.lengths)}
    ok = all(0 <= parse_rational(v) <= HALF for v in table.values())
    return {"command": "density", "a": a.name, "b": b.name, "density": table, "ok": ok}


def cmd_build(args) -> dict:
    machine, advice = builtin(args.name)
    lengths = _lengths(args.lengths)
    written = []
    serialize.dump(machine, args.output, lengths)
    written.append(args.output)
    if advice is not None:
        path = args.advice_output or args.output.rsplit(".", 1)[0] + ".advice.json"
        serialize.dump(advice, path, lengths)
        written.append(path)
    return {"command": "build", "name": args.name, "written": written, "ok": True}


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="advicelab", description="Exact simulation and verification of advised automata.")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--max-strings", type=int, default=1 << 20)
    p.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="acceptance probability of one input")
    s.add_argument("machine", help="document path or builtin:<name>")
    s.add_argument("input", help="input word (tokens separated by spaces, or one symbol per character)")
    s.add_argument("--advice")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify", help="check recognition of a language over a length range")
    s.add_argument("--machine", required=True)
    s.add_argument("--advice")
    s.add_argument("--language", required=True)
    s.add_argument("--lengths", default="0..4")
    s.add_argument("--mode", choices=("exact-half", "unbounded", "bounded"), default="exact-half")
    s.add_argument("--epsilon", default="1/4")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("refute", help="exhibit a misclassified input for a candidate")
    s.add_argument("criterion", choices=("co_dup", "ip_star"))
    s.add_argument("--machine", required=True)
    s.add_argument("--advice")
    s.add_argument("--budget", type=int, default=1 << 12)
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("game", help="solve the advice game of a deterministic advised machine")
    s.add_argument("--machine", required=True)
    s.add_argument("--advice")
    s.add_argument("--language", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", help="advice alphabet, comma separated")
    s.add_argument("--worst-case", action="store_true")
    s.add_argument("--max-columns", type=int, help="heuristic: subsample this many advice strings")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("density", help="pseudorandom density table")
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.add_argument("--machine")
    s.add_argument("--advice")
    s.add_argument("--lengths", default="1..12")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("build", help="write a named construction to a document")
    s.add_argument("name")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--advice-output")
    s.add_argument("--lengths", default="0..8")
    s.set_defaults(func=cmd_build)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (AdviceLabError, ValueError) as e:  # bad documents or argument values
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.format))
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return 0 if report.get("ok", False) else 1


if __name__ == "__main__":
    raise SystemExit(main())
