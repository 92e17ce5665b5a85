"""Cross-check of the operational and denotational semantics.

A configuration that evaluates to a value must denote the same strategy
before and after evaluation, once both configurations are closed over
their stores with scoped-cell binders.  The check is play-set equality
at a length bound; it can fail for two very different reasons, which
the report keeps apart:

* a genuine semantic mismatch between the two denotations, and
* a resource bound (evaluation fuel, stream width, or play length)
  cutting off behaviour before it could be compared.

Width and length truncation are detected by boundary probes: the
denotations are rebuilt one notch wider, and materialised one round
longer, and any difference means the comparison at the requested
bounds was not trustworthy.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Tuple

from ..strategies import Moves
from .bigstep import Config, FuelExhausted, Store, evaluate
from .denote import OverflowLog, denote, result_plays
from .syntax import New, Term, term_to_text
from .typecheck import Judgment, judge

__all__ = ["CorrectionReport", "close_over_store", "correction_check"]

PASS = "pass"
MISMATCH = "mismatch"
RESOURCE_BOUND = "resource-bound"

_EXIT_CODES = {PASS: 0, MISMATCH: 1, RESOURCE_BOUND: 2}


def close_over_store(term: Term, store: Store) -> Term:
    """Bind every store cell around the term with a scoped-cell binder,
    innermost-last in sorted name order."""
    closed = term
    for name, value in reversed(tuple(store)):
        closed = New(name, value, closed)
    return closed


@dataclass(frozen=True)
class CorrectionReport:
    """Outcome of one operational-vs-denotational comparison."""

    term: Term
    store: Store
    copies: int
    max_len: int
    nat_max: int
    fuel: int
    verdict: str
    reason: str
    value: Optional[Term] = None
    final_store: Optional[Store] = None
    equal: Optional[bool] = None
    witness: Optional[Moves] = None
    before_play_count: Optional[int] = None
    after_play_count: Optional[int] = None
    length_truncated: bool = False
    width_truncated: bool = False
    overflow_events: int = 0
    elapsed: float = 0.0

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.verdict]

    def line(self) -> str:
        """One-line rendering for reports and batch runs."""
        head = f"{self.verdict}: {term_to_text(self.term)}"
        return f"{head} -- {self.reason}"


def _closed_judgment(term: Term, store: Store) -> Judgment:
    return judge((), (), close_over_store(term, store))


def correction_check(
    term: Term,
    store: Store = (),
    copies: int = 2,
    max_len: int = 12,
    nat_max: int = 8,
    fuel: int = 10_000,
) -> CorrectionReport:
    """Evaluate a configuration and compare the denotations of its
    store-closed starting and final configurations."""
    started = time.time()
    judgment_before = _closed_judgment(term, store)

    def report(verdict: str, reason: str, **extra) -> CorrectionReport:
        return CorrectionReport(
            term=term,
            store=tuple(store),
            copies=copies,
            max_len=max_len,
            nat_max=nat_max,
            fuel=fuel,
            verdict=verdict,
            reason=reason,
            elapsed=time.time() - started,
            **extra,
        )

    try:
        outcome = evaluate(Config(term, tuple(store)), fuel=fuel)
    except FuelExhausted:
        return report(
            RESOURCE_BOUND,
            f"evaluation did not finish within fuel {fuel} (possible divergence)",
        )
    judgment_after = _closed_judgment(outcome.term, outcome.store)
    if judgment_after.type != judgment_before.type:
        return report(
            MISMATCH,
            "evaluation changed the type of the configuration",
            value=outcome.term,
            final_store=outcome.store,
        )

    log = OverflowLog()
    before = denote(judgment_before, copies, max_len, nat_max, log=log)
    after = denote(judgment_after, copies, max_len, nat_max, log=log)
    plays_before = before.plays(max_len)
    plays_after = after.plays(max_len)
    equal = plays_before == plays_after

    length_truncated = (
        before.plays(max_len + 2) != plays_before
        or after.plays(max_len + 2) != plays_after
    )
    wide_log = OverflowLog()
    wide_before = denote(judgment_before, copies + 1, max_len, nat_max, log=wide_log)
    wide_after = denote(judgment_after, copies + 1, max_len, nat_max, log=wide_log)
    width_truncated = (
        result_plays(wide_before, max_len) != result_plays(before, max_len)
        or result_plays(wide_after, max_len) != result_plays(after, max_len)
    )

    common = dict(
        value=outcome.term,
        final_store=outcome.store,
        equal=equal,
        before_play_count=len(plays_before),
        after_play_count=len(plays_after),
        length_truncated=length_truncated,
        width_truncated=width_truncated,
        overflow_events=len(log.events),
    )
    if length_truncated or width_truncated:
        bounds = []
        if width_truncated:
            bounds.append(f"stream width {copies}")
        if length_truncated:
            bounds.append(f"play length {max_len}")
        return report(
            RESOURCE_BOUND,
            "truncation overflow: behaviour changes beyond " + " and ".join(bounds),
            **common,
        )
    if equal:
        return report(
            PASS,
            f"both denotations defend the same {len(plays_before)} plays",
            **common,
        )
    difference = plays_before.symmetric_difference(plays_after)
    witness = min(difference, key=lambda p: (len(p), repr(p)))
    side = "starting" if witness in plays_before else "final"
    return report(
        MISMATCH,
        f"play defended only by the {side} configuration: {witness}",
        witness=witness,
        **common,
    )
