"""JSON documents for machines, advice, ensembles and language references.

Every rational is a ``"p/q"`` string.  Symbols and states are encoded as:
plain strings as themselves, integers as integers, :class:`Track` cells as
``{"t": [upper, lower]}`` and other tuples as ``{"tuple": [...]}``.  Words
whose symbols are all plain strings are written as whitespace-separated
token strings, anything else as a list of encoded symbols.
"""

from __future__ import annotations

import json

from .advice import AdviceEnsemble, AdviceFunction
from .automata import Dfa, Pfa, PfaFamily
from .core import Track, show
from .errors import AdviceLabError, DocumentError
from .languages import by_name
from .linalg import format_rational, parse_rational

KINDS = ("dfa", "pfa", "pfa-family", "advice-fn", "ensemble", "language-ref")


# --------------------------------------------------------------------------- symbols and words


def encode_symbol(s):
    if isinstance(s, Track):
        return {"t": [encode_symbol(s.upper), encode_symbol(s.lower)]}
    if isinstance(s, tuple):
        return {"tuple": [encode_symbol(v) for v in s]}
    if isinstance(s, (str, int)) and not isinstance(s, bool):
        return s
    raise TypeError(f"cannot encode symbol {s!r}")


def decode_symbol(v):
    if isinstance(v, dict):
        if set(v) == {"t"} and isinstance(v["t"], list) and len(v["t"]) == 2:
            return Track(decode_symbol(v["t"][0]), decode_symbol(v["t"][1]))
        if set(v) == {"tuple"} and isinstance(v["tuple"], list):
            return tuple(decode_symbol(x) for x in v["tuple"])
        raise ValueError(f"bad symbol object {v!r}")
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    raise ValueError(f"bad symbol {v!r}")


def _plain(s) -> bool:
    return isinstance(s, str) and s != "" and not any(c.isspace() for c in s)


def encode_word(w):
    w = tuple(w)
    if all(_plain(s) for s in w):
        return " ".join(w)
    return [encode_symbol(s) for s in w]


def decode_word(v) -> tuple:
    if isinstance(v, str):
        return tuple(v.split())
    if isinstance(v, list):
        return tuple(decode_symbol(s) for s in v)
    raise ValueError(f"bad word {v!r}")


# --------------------------------------------------------------------------- emit


def _pfa_body(m: Pfa) -> dict:
    transitions = []
    for s in m.symbols:
        for i, row in enumerate(m.matrices[s]):
            for j in sorted(row):
                transitions.append([encode_symbol(s), encode_symbol(m.states[i]),
                                    encode_symbol(m.states[j]), format_rational(row[j])])
    return {
        "states": [encode_symbol(q) for q in m.states],
        "alphabet": [encode_symbol(s) for s in m.alphabet],
        "initial": encode_symbol(m.initial),
        "final": [encode_symbol(q) for q in m.states if q in m.final],
        "transitions": transitions,
    }


def to_document(obj, lengths=None) -> dict:
    """Canonical document for a machine, advice or language.

    ``lengths`` selects the tabulated lengths for families, advice functions
    and ensembles without an explicit table.
    """
    if isinstance(obj, Dfa):
        return {
            "kind": "dfa",
            "states": [encode_symbol(q) for q in obj.states],
            "alphabet": [encode_symbol(s) for s in obj.alphabet],
            "initial": encode_symbol(obj.initial),
            "accepting": [encode_symbol(q) for q in obj.states if q in obj.accepting],
            "rejecting": [encode_symbol(q) for q in obj.states if q in obj.rejecting],
            "delta": [[encode_symbol(q), encode_symbol(s), encode_symbol(obj.delta[q, s])]
                      for q in obj.states for s in obj.symbols],
        }
    if isinstance(obj, Pfa):
        return {"kind": "pfa", **_pfa_body(obj)}
    if hasattr(obj, "materialize"):
        return to_document(obj.materialize())
    if isinstance(obj, PfaFamily):
        lengths = _lengths(obj, lengths)
        return {"kind": "pfa-family", "name": obj.name,
                "machines": [{"length": n, **_pfa_body(obj(n))} for n in lengths]}
    if isinstance(obj, AdviceFunction):
        lengths = _lengths(obj, lengths)
        return {"kind": "advice-fn", "name": obj.name,
                "alphabet": [encode_symbol(s) for s in obj.alphabet],
                "policy": obj.policy if obj.policy == "exact" else list(obj.policy),
                "table": [{"length": n, "advice": encode_word(obj(n))} for n in lengths]}
    if isinstance(obj, AdviceEnsemble):
        lengths = _lengths(obj, lengths)
        return {"kind": "ensemble", "name": obj.name,
                "alphabet": [encode_symbol(s) for s in obj.alphabet],
                "table": [{"length": n, "support": [[encode_word(y), format_rational(p)]
                                                     for y, p in obj(n).items()]} for n in lengths]}
    if hasattr(obj, "test") and hasattr(obj, "name"):
        return {"kind": "language-ref", "name": obj.name}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _lengths(obj, lengths):
    if lengths is not None:
        return sorted(lengths)
    table = getattr(obj, "table", None)
    if table is not None:
        return sorted(table)
    raise ValueError(f"{type(obj).__name__} has no table; pass lengths")


def dumps(obj, lengths=None) -> str:
    doc = obj if isinstance(obj, dict) else to_document(obj, lengths)
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


# --------------------------------------------------------------------------- parse


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _pfa_from(body, where):
    states = [decode_symbol(q) for q in body["states"]]
    alphabet = [decode_symbol(s) for s in body["alphabet"]]
    index = {q: i for i, q in enumerate(states)}
    symbols = set(alphabet) | {"¢", "$"}
    mats = {s: {} for s in list(alphabet) + ["¢", "$"]}
    for entry in body["transitions"]:
        if len(entry) != 4:
            raise ValueError(f"transition {entry!r} needs [symbol, from, to, p]")
        s, a, b, p = entry
        s, a, b = decode_symbol(s), decode_symbol(a), decode_symbol(b)
        if s not in symbols:
            raise ValueError(f"undeclared symbol {show((s,))!r}")
        if a not in index or b not in index:
            raise ValueError(f"undeclared state in transition {entry!r}")
        mats[s].setdefault(index[a], {})[index[b]] = parse_rational(p)
    return Pfa(states, alphabet, mats, [decode_symbol(q) for q in body["final"]],
               decode_symbol(body["initial"]))


def _family(machines):
    table = {}
    for body in machines:
        table[int(body["length"])] = _pfa_from(body, "family")

    def gen(n):
        if n not in table:
            raise DocumentError(f"family document has no machine for length {n}")
        return table[n]

    fam = PfaFamily(gen, name="family")
    fam.table = table
    fam._cache.update(table)
    return fam


def from_document(doc: dict, text: str | None = None):
    """Rebuild the object described by a parsed document."""
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}; expected one of {', '.join(KINDS)}",
                            _line_of(text or "", '"kind"'))
    try:
        if kind == "dfa":
            states = [decode_symbol(q) for q in doc["states"]]
            alphabet = [decode_symbol(s) for s in doc["alphabet"]]
            delta = {}
            for q, s, t in doc["delta"]:
                delta[decode_symbol(q), decode_symbol(s)] = decode_symbol(t)
            return Dfa(states, alphabet, delta, decode_symbol(doc["initial"]),
                       [decode_symbol(q) for q in doc["accepting"]],
                       [decode_symbol(q) for q in doc.get("rejecting", [])])
        if kind == "pfa":
            return _pfa_from(doc, "pfa")
        if kind == "pfa-family":
            fam = _family(doc["machines"])
            fam.name = doc.get("name", "family")
            return fam
        if kind == "advice-fn":
            policy = doc.get("policy", "exact")
            if policy != "exact":
                policy = tuple(policy)
            table = {int(e["length"]): decode_word(e["advice"]) for e in doc["table"]}
            return AdviceFunction.from_table([decode_symbol(s) for s in doc["alphabet"]], table,
                                             policy=policy, name=doc.get("name", "h"))
        if kind == "ensemble":
            table = {}
            for e in doc["table"]:
                table[int(e["length"])] = {decode_word(y): parse_rational(p) for y, p in e["support"]}
            ens = AdviceEnsemble.from_table([decode_symbol(s) for s in doc["alphabet"]], table,
                                            name=doc.get("name", "D"))
            for n in table:
                ens(n)  # validate eagerly
            return ens
        return by_name(doc["name"])
    except DocumentError:
        raise
    except KeyError as e:
        key = e.args[0] if e.args else ""
        raise DocumentError(f"missing or unknown field {key!r} in {kind} document",
                            _line_of(text or "", f'"{kind}"')) from None
    except (AdviceLabError, ValueError, TypeError) as e:
        raise DocumentError(f"invalid {kind} document: {e}", _locate(text, e)) from None


def _locate(text, err):
    if not text:
        return None
    msg = str(err)
    # the most specific quoted token is usually the last one in the message
    for token in reversed(msg.replace("'", '"').split('"')):
        if len(token) > 1 and token in text:
            return _line_of(text, token)
    return None


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno) from None
    return from_document(doc, text)


def load(path):
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def dump(obj, path, lengths=None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj, lengths))


__all__ = ["encode_symbol", "decode_symbol", "encode_word", "decode_word", "to_document",
           "from_document", "dumps", "loads", "dump", "load", "KINDS"]
