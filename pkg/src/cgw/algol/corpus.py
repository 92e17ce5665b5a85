"""The built-in program corpus for the evaluator and the cross-check.

Each entry is a configuration (term plus starting store) with its
expected final configuration.  The same corpus drives three layers of
checking: exact big-step results, operational-vs-denotational
agreement at the documented bounds, and the observation harness.

Programs written here stay inside the fragment the interpretation
handles exactly at stream width 2: no cell is read more than twice
along one run, arguments of applications neither write the store nor
read cells the applied term writes, and components of pairs perform no
store effects before one component is selected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Tuple

from .bigstep import Store
from .syntax import Term, parse_term, term_to_text

__all__ = ["CorpusEntry", "CORPUS", "load_corpus", "dump_corpus"]


@dataclass(frozen=True)
class CorpusEntry:
    """One program with its expected big-step outcome."""

    name: str
    term: Term
    store: Store
    expected_value: Term
    expected_store: Store

    @property
    def source(self) -> str:
        return term_to_text(self.term)


def _store(*pairs: Tuple[str, str]) -> Store:
    return tuple(sorted((name, parse_term(text)) for name, text in pairs))


def _entry(name: str, term: str, value: str, store: Tuple[Tuple[str, str], ...] = (),
           out: Tuple[Tuple[str, str], ...] = ()) -> CorpusEntry:
    return CorpusEntry(
        name=name,
        term=parse_term(term),
        store=_store(*store),
        expected_value=parse_term(value),
        expected_store=_store(*out),
    )


CORPUS: Tuple[CorpusEntry, ...] = (
    # ground constants
    _entry("skip", "skip", "skip"),
    _entry("true", "tt", "tt"),
    _entry("false", "ff", "ff"),
    _entry("three", "3", "3"),
    _entry("bound-literal", "8", "8"),
    # zero test
    _entry("zero-of-zero", "zero(0)", "tt"),
    _entry("zero-of-seven", "zero(7)", "ff"),
    # conditionals
    _entry("if-true", "if tt then 1 else 2", "1"),
    _entry("if-false", "if ff then 1 else 2", "2"),
    _entry("if-computed", "if zero(0) then tt else ff", "tt"),
    # functions, call-by-name
    _entry("apply-identity", r"(\x:Bool. x) tt", "tt"),
    _entry("drop-argument", r"(\x:Bool. tt) ff", "tt"),
    _entry("apply-zero", r"(\x:Nat. zero(x)) 0", "tt"),
    _entry("higher-order", r"(\f:Bool->Bool. f tt)(\x:Bool. x)", "tt"),
    _entry("double-use", r"(\f:Bool->Bool. f (f tt))(\x:Bool. x)", "tt"),
    _entry("lambda-value", r"\x:Bool. x", r"\x:Bool. x"),
    # pairs
    _entry("first-of-pair", "fst <tt, 3>", "tt"),
    _entry("second-of-pair", "snd <tt, 3>", "3"),
    _entry("project-computed", "fst <zero(1), skip>", "ff"),
    # sequencing
    _entry("seq-skip", "skip; skip", "skip"),
    _entry("seq-write", "x := ff; skip", "skip",
           store=(("x", "tt"),), out=(("x", "ff"),)),
    # scoped cells and state threading
    _entry("cell-read", "new x := tt in !x", "tt"),
    _entry("cell-read-nat", "new x := 1 in !x", "1"),
    _entry("write-through-cell", "new x := 0 in new y := (x := 5) in !x", "5"),
    _entry("overwrite", "new x := tt in new u := (x := ff) in !x", "ff"),
    _entry("branch-on-cell",
           "new x := tt in new u := (if !x then x := ff else skip) in !x", "ff"),
    _entry("unused-thunk",
           r"new y := tt in new u := ((\x:Unit. skip)(y := ff)) in !y", "tt"),
    _entry("open-write", "new u := (x := 5) in !x", "5",
           store=(("x", "0"),), out=(("x", "5"),)),
    _entry("open-read", "!x", "tt", store=(("x", "tt"),), out=(("x", "tt"),)),
    _entry("pair-in-cell", "new p := <tt, ff> in snd !p", "ff"),
    _entry("function-in-cell", r"new f := (\x:Bool. x) in (!f) tt", "tt"),
)


def dump_corpus(entries: Tuple[CorpusEntry, ...] = CORPUS) -> str:
    """Serialise a corpus to the JSON file format accepted by load_corpus."""
    rows = []
    for e in entries:
        rows.append(
            {
                "name": e.name,
                "term": term_to_text(e.term),
                "store": {n: term_to_text(v) for n, v in e.store},
                "value": term_to_text(e.expected_value),
                "final_store": {n: term_to_text(v) for n, v in e.expected_store},
            }
        )
    return json.dumps(rows, indent=2)


def load_corpus(path: Optional[str] = None) -> Tuple[CorpusEntry, ...]:
    """The built-in corpus, or one read from a JSON file of entries
    {name, term, store, value, final_store} with terms in concrete syntax."""
    if path is None:
        return CORPUS
    with open(path, "r", encoding="utf-8") as handle:
        rows = json.load(handle)
    entries = []
    for row in rows:
        entries.append(
            CorpusEntry(
                name=row["name"],
                term=parse_term(row["term"]),
                store=_store(*row.get("store", {}).items()),
                expected_value=parse_term(row["value"]),
                expected_store=_store(*row.get("final_store", {}).items()),
            )
        )
    return tuple(entries)
