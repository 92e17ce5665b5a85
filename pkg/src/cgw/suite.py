"""Named check suites over the bundled corpora, with deterministic
line-oriented reports.

``run_suite(name, cfg)`` runs one of the named suites and returns a
report whose rendering has exactly one line per check::

    <check-id> <pass|fail> [witness]

plus ``#``-prefixed note lines for measured facts and disclaimers.  The
same seed and config always produce byte-identical output; ``jobs`` only
changes wall time, never content or order.

Suites and what they assert:

- ``payoff-axioms``     the bundled interface games and their two-sided /
                        mirrored / function-space composites satisfy all
                        four payoff laws; three deliberately broken
                        tables are rejected with the right law named.
- ``category-laws``     identity and associativity of hiding composition
                        as exact play-set equalities on a seeded corpus
                        of composable strategy triples, plus uniqueness
                        and prefix-monotonicity of interaction witnesses.
- ``traced-axioms``     yanking, naturality, strength and sliding of the
                        feedback operator on the seeded axiom corpus.
- ``winning-closure``   composing winning corpus strategies yields
                        winning strategies.
- ``bracketing``        the frozen nested/early-answer plays behave as
                        documented, and winning composites emit only
                        player-bracketed plays.
- ``comonoid``          the replicated-game structure maps satisfy the
                        counit/coassociativity/cocommutativity laws, and
                        the negativity probe works both ways.
- ``innocence``         mirror strategies on small tensors are innocent;
                        exhaustively, innocent strategies on the
                        two-boolean tensor are positional.
- ``positional``        mirror strategies are positional; position sets
                        determine innocent strategies, and measurably do
                        not determine merely-positional ones.
- ``rel-functoriality`` reading strategies as relations on positions
                        commutes with composition and juxtaposition, and
                        relational feedback agrees with brute-force
                        existential search on all small relations.
- ``algol-correction``  every corpus program evaluates exactly as
                        frozen, operational and denotational semantics
                        agree at the configured bounds, and denotational
                        equality implies identical observed behaviour
                        under a fixed finite family of observation
                        contexts (zero / if / projection / application
                        wrappers) -- a desk-scale check, not a decision
                        procedure for equivalence under all contexts.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from cgw.algol.bigstep import Config, evaluate
from cgw.algol.corpus import CorpusEntry, load_corpus
from cgw.algol.correction import PASS, close_over_store, correction_check
from cgw.algol.denote import denote
from cgw.algol.gamedefs import bool_game, nat_game
from cgw.algol.syntax import (
    App,
    ArrowType,
    BOOL,
    BoolLit,
    If,
    Lam,
    NAT,
    NatLit,
    New,
    Pair,
    ProdType,
    Proj,
    RefType,
    SKIP,
    Term,
    Type,
    UNIT,
    Zero,
    parse_term,
)
from cgw.algol.typecheck import Judgment, judge
from cgw.corpus import random_game, random_strategy
from cgw.exponential import bang, check_comonoid_negative, comonoid_law_check, comonoid_structure
from cgw.games import (
    EdgeSpec,
    Game,
    build_game,
    dual,
    game_two,
    loli,
    tensor,
    validate_payoff,
)
from cgw.monoidal import (
    axiom_corpus,
    identity,
    morphism_from_plays,
    StrategyMorphism,
    symmetry,
    trace,
    trace_axiom_suite,
    enumerate_strategies,
)
from cgw.asyncgraph import (
    AsyncGame,
    Relation,
    is_innocent,
    is_positional,
    positional_functoriality_check,
    positions_of,
    rel_trace,
)
from cgw.strategies import (
    Strategy,
    compose,
    copycat,
    hom_game,
    is_well_bracketed,
    is_winning,
    sorted_plays,
    unique_witness,
    validate_strategy,
)
__all__ = [
    "CheckLine",
    "RunConfig",
    "SuiteError",
    "SuiteReport",
    "SUITE_NAMES",
    "run_suite",
]


class SuiteError(ValueError):
    """Unknown suite name or unusable corpus file."""


@dataclass(frozen=True)
class RunConfig:
    """Bounds and inputs shared by all suites.

    ``seed`` drives every randomised corpus; fixing it fixes the whole
    report byte for byte.  ``copies`` and ``max_len`` are the stream
    width and play-length ceiling of the denotational checks (the
    comonoid laws additionally cap their play length at 8 and say so in
    their check ids).  ``nat_max`` bounds number literals, ``fuel``
    bounds evaluation steps, and ``corpus_path`` optionally replaces the
    built-in program corpus with a JSON file.
    """

    seed: int = 1
    copies: int = 2
    max_len: int = 12
    nat_max: int = 8
    fuel: int = 10_000
    corpus_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise SuiteError("seed must be a natural number")
        for name in ("copies", "max_len", "nat_max", "fuel"):
            if getattr(self, name) < 1:
                raise SuiteError(f"{name} must be at least 1")


@dataclass(frozen=True)
class CheckLine:
    """One rendered check: id, pass/fail status, optional witness text."""

    check_id: str
    status: str  # "pass" | "fail" | "note"
    witness: str = ""

    def render(self, fmt: str = "plain") -> str:
        witness = " ".join(self.witness.split())
        if fmt == "tsv":
            return "\t".join((self.check_id, self.status, witness))
        if self.status == "note":
            return f"# {self.check_id}: {witness}" if witness else f"# {self.check_id}"
        return f"{self.check_id} {self.status}" + (f"  {witness}" if witness else "")


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    config: RunConfig
    lines: Tuple[CheckLine, ...]

    @property
    def checks(self) -> Tuple[CheckLine, ...]:
        return tuple(l for l in self.lines if l.status != "note")

    @property
    def failures(self) -> Tuple[CheckLine, ...]:
        return tuple(l for l in self.lines if l.status == "fail")

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self, fmt: str = "plain") -> str:
        body = [line.render(fmt) for line in self.lines]
        summary = (
            f"{self.suite}: {len(self.checks)} checks, {len(self.failures)} failed"
        )
        body.append(f"# {summary}" if fmt == "plain" else f"#summary\tnote\t{summary}")
        return "\n".join(body) + "\n"


# One pending check: an id plus the thunk that produces its line.
Pending = Tuple[str, Callable[[], CheckLine]]
Item = Any  # CheckLine (immediate) or Pending (deferred)


def _check(check_id: str, ok: bool, witness: str = "", fail_witness: str = "") -> CheckLine:
    if ok:
        return CheckLine(check_id, "pass", witness)
    return CheckLine(check_id, "fail", fail_witness or witness)


def _note(check_id: str, text: str) -> CheckLine:
    return CheckLine(check_id, "note", text)


def _fmt_play(play: Iterable[Any]) -> str:
    return repr(tuple(play))


def _play_sets_equal(check_id: str, left: FrozenSet, right: FrozenSet) -> CheckLine:
    if left == right:
        return CheckLine(check_id, "pass", f"{len(left)} plays")
    diff = sorted_plays(left.symmetric_difference(right))[0]
    side = "left-only" if diff in left else "right-only"
    return CheckLine(check_id, "fail", f"{side} {_fmt_play(diff)}")


# --------------------------------------------------------------------------- #
# shared corpora
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class TripleInstance:
    """Three composable strategies sigma: a->b, tau: b->c, ups: c->d."""

    label: str
    a: Game
    b: Game
    c: Game
    d: Game
    sigma: Strategy
    tau: Strategy
    ups: Strategy


def composable_triples(cfg: RunConfig, count: int = 20) -> List[TripleInstance]:
    """A seeded corpus of composable strategy triples on small games."""
    rng = random.Random(cfg.seed)
    out: List[TripleInstance] = []
    for i in range(count):
        a = random_game(rng, rng.randint(2, 5), name=f"a{i}")
        b = random_game(rng, rng.randint(2, 5), name=f"b{i}")
        c = random_game(rng, rng.randint(2, 5), name=f"c{i}")
        d = random_game(rng, rng.randint(2, 5), name=f"d{i}")
        out.append(
            TripleInstance(
                label=f"seeded{i}",
                a=a,
                b=b,
                c=c,
                d=d,
                sigma=random_strategy(hom_game(a, b), rng, name=f"s{i}"),
                tau=random_strategy(hom_game(b, c), rng, name=f"t{i}"),
                ups=random_strategy(hom_game(c, d), rng, name=f"u{i}"),
            )
        )
    return out


def _interface_games(cfg: RunConfig) -> List[Tuple[str, Game]]:
    return [
        ("bool", bool_game()),
        ("two", game_two()),
        (f"nat{cfg.nat_max}", nat_game(cfg.nat_max)),
    ]


# the frozen nested-question game and its two figure plays: the fully
# nested play closes both questions; the early answer closes the outer
# question while the inner one is still pending (segment payoff (0, 1))
def _nested_game() -> Game:
    b = bool_game()
    return loli(loli(b, b), b)


_Q3 = ("R", "q")
_Q2 = ("L", ("R", "q"))
_Q1 = ("L", ("L", "q"))
_V1 = ("L", ("L", "tt"))
_V2 = ("L", ("R", "tt"))
_V3 = ("R", "tt")
_NESTED_PLAY = (_Q3, _Q2, _Q1, _V1, _V2, _V3)
_EARLY_ANSWER = (_Q3, _Q2, _Q1, _V3)


# --------------------------------------------------------------------------- #
# payoff-axioms
# --------------------------------------------------------------------------- #


def _lawful(check_id: str, game: Game) -> CheckLine:
    report = validate_payoff(game)
    if report.ok:
        return CheckLine(check_id, "pass")
    v = report.violations[0]
    return CheckLine(check_id, "fail", f"{v.law} at {_fmt_play(v.moves)}")


def _violating_tables() -> List[Tuple[str, Game]]:
    """Three explicit payoff tables, one per breakable law."""
    opener = build_game(
        ["x", "y"],
        "x",
        [EdgeSpec("a", "x", "y", -1, asks=(1, 0))],
        name="bad-compat",
    )

    def chain(overrides):
        return build_game(
            ["x", "y", "z"],
            "x",
            [
                EdgeSpec("a", "x", "y", -1, asks=(0, 1)),
                EdgeSpec("b", "y", "z", -1, asks=(0, 1)),
            ],
            path_payoffs=overrides,
        )

    return [
        ("compatibility", opener),
        ("suffix-bound", chain({("a", "b"): (0, 0)})),
        ("splitting-bound", chain({("a", "b"): (0, 5)})),
    ]


def _suite_payoff_axioms(cfg: RunConfig) -> List[Item]:
    items: List[Item] = []
    named = _interface_games(cfg)
    for label, g in named:
        items.append((f"base/{label}", lambda g=g, l=label: _lawful(f"base/{l}", g)))
        items.append((f"dual/{label}", lambda g=g, l=label: _lawful(f"dual/{l}", dual(g))))
    for (l1, g1), (l2, g2) in itertools.product(named, named):
        items.append(
            (
                f"tensor/{l1}*{l2}",
                lambda g1=g1, g2=g2, l1=l1, l2=l2: _lawful(
                    f"tensor/{l1}*{l2}", tensor(g1, g2)
                ),
            )
        )
        items.append(
            (
                f"loli/{l1}->{l2}",
                lambda g1=g1, g2=g2, l1=l1, l2=l2: _lawful(
                    f"loli/{l1}->{l2}", loli(g1, g2)
                ),
            )
        )

    def probe(law: str, game: Game) -> CheckLine:
        report = validate_payoff(game)
        laws = {v.law for v in report.violations}
        return _check(
            f"violation/{law}",
            (not report.ok) and law in laws,
            witness="rejected with the right law",
            fail_witness=f"got {sorted(laws) or 'no violation'}",
        )

    for law, game in _violating_tables():
        items.append((f"violation/{law}", lambda law=law, game=game: probe(law, game)))
    return items


# --------------------------------------------------------------------------- #
# category-laws
# --------------------------------------------------------------------------- #


def _witness_lines(label: str, sigma: Strategy, tau: Strategy) -> CheckLine:
    """Every composite play has exactly one interaction witness and the
    witness of a prefix is a prefix of the witness."""
    composite = compose(sigma, tau)
    plays = sorted_plays(composite.plays())
    for play in plays:
        w = unique_witness(play, sigma, tau)  # raises unless exactly one
        if w.project("AC") != play:
            return CheckLine(
                f"witness/{label}", "fail", f"projection mismatch at {_fmt_play(play)}"
            )
        if len(play) >= 2:
            half = unique_witness(play[:-2], sigma, tau)
            if w.moves[: len(half.moves)] != half.moves:
                return CheckLine(
                    f"witness/{label}", "fail", f"not prefix-monotone at {_fmt_play(play)}"
                )
    return CheckLine(f"witness/{label}", "pass", f"{len(plays)} plays, 1 witness each")


def _suite_category_laws(cfg: RunConfig) -> List[Item]:
    triples = composable_triples(cfg)
    items: List[Item] = []
    for t in triples:
        def id_left(t=t):
            return _play_sets_equal(
                f"identity-left/{t.label}",
                compose(copycat(t.a), t.sigma).plays(),
                t.sigma.plays(),
            )

        def id_right(t=t):
            return _play_sets_equal(
                f"identity-right/{t.label}",
                compose(t.sigma, copycat(t.b)).plays(),
                t.sigma.plays(),
            )

        def assoc(t=t):
            return _play_sets_equal(
                f"assoc/{t.label}",
                compose(compose(t.sigma, t.tau), t.ups).plays(),
                compose(t.sigma, compose(t.tau, t.ups)).plays(),
            )

        items.append((f"identity-left/{t.label}", id_left))
        items.append((f"identity-right/{t.label}", id_right))
        items.append((f"assoc/{t.label}", assoc))
        items.append(
            (
                f"witness/{t.label}-st",
                lambda t=t: _witness_lines(f"{t.label}-st", t.sigma, t.tau),
            )
        )
        items.append(
            (
                f"witness/{t.label}-tu",
                lambda t=t: _witness_lines(f"{t.label}-tu", t.tau, t.ups),
            )
        )
    return items


# --------------------------------------------------------------------------- #
# traced-axioms
# --------------------------------------------------------------------------- #


def _suite_traced_axioms(cfg: RunConfig) -> List[Item]:
    def run() -> List[CheckLine]:
        corpus = axiom_corpus(cfg.seed, 50, max_positions=6)
        report = trace_axiom_suite(corpus)
        lines = []
        for c in report.checks:
            lines.append(
                _check(
                    f"{c.axiom}/{c.instance}",
                    c.passed,
                    witness=f"{c.left_size} plays",
                    fail_witness=f"left {c.left_size} right {c.right_size} plays",
                )
            )
        bool_g = bool_game()
        literal = trace(symmetry(bool_g, bool_g))
        cc = copycat(bool_g)
        lines.append(
            _check(
                "yanking/bool-literal-copycat",
                literal.strat.game == cc.game and literal.strat.plays() == cc.plays(),
                witness="feedback on the swap is the mirror strategy",
            )
        )
        kept = sum(1 for _, before, after in report.winning_notes if before and after)
        total = sum(1 for _, before, _a in report.winning_notes if before)
        lines.append(
            _note(
                "winning-under-feedback",
                f"measured, not asserted: {kept} of {total} winning instances stay winning",
            )
        )
        return lines

    return [("traced-axioms", run)]


# --------------------------------------------------------------------------- #
# winning-closure and bracketing
# --------------------------------------------------------------------------- #


def _winning_pairs(cfg: RunConfig) -> List[Tuple[str, Strategy, Strategy]]:
    """Composable pairs of winning strategies: the seeded triples filtered
    down to their winning legs, plus mirror-strategy pairs."""
    b = bool_game()
    pairs: List[Tuple[str, Strategy, Strategy]] = [
        ("copycat-bool", copycat(b), copycat(b)),
        (
            "answer-then-mirror",
            Strategy.from_plays(
                hom_game(game_two(), b), [(), (("R", "q"), ("R", "tt"))], name="const"
            ),
            copycat(b),
        ),
    ]
    for t in composable_triples(cfg):
        if is_winning(t.sigma).winning and is_winning(t.tau).winning:
            pairs.append((f"{t.label}-st", t.sigma, t.tau))
        if is_winning(t.tau).winning and is_winning(t.ups).winning:
            pairs.append((f"{t.label}-tu", t.tau, t.ups))
    return pairs


def _suite_winning_closure(cfg: RunConfig) -> List[Item]:
    def run() -> List[CheckLine]:
        pairs = _winning_pairs(cfg)
        lines = []
        for label, sigma, tau in pairs:
            report = is_winning(compose(sigma, tau))
            if report.winning:
                lines.append(CheckLine(f"closure/{label}", "pass"))
            else:
                play, start, payoff = report.violations[0]
                lines.append(
                    CheckLine(
                        f"closure/{label}",
                        "fail",
                        f"segment at {start} of {_fmt_play(play)} has payoff {payoff}",
                    )
                )
        lines.append(_note("pairs", f"{len(pairs)} composable winning pairs checked"))
        return lines

    return [("winning-closure", run)]


def _suite_bracketing(cfg: RunConfig) -> List[Item]:
    def figures() -> List[CheckLine]:
        g3 = _nested_game()
        early = Strategy.from_plays(g3, [(), (_Q3, _Q2), _EARLY_ANSWER])
        win = is_winning(early)
        lines = [
            _check(
                "figure/early-answer-accepted-unlabelled",
                validate_strategy(early).ok,
                witness="play-set clauses hold",
            ),
            _check(
                "figure/early-answer-rejected-winning",
                (not win.winning)
                and win.violations == [(_EARLY_ANSWER, 2, (0, 1))],
                witness="violating segment payoff (0, 1)",
                fail_witness=f"violations {win.violations!r}",
            ),
            _check(
                "figure/nested-play-bracketed-both-modes",
                is_well_bracketed(g3, _NESTED_PLAY, "player")
                and is_well_bracketed(g3, _NESTED_PLAY, "opponent")
                and is_well_bracketed(g3, _NESTED_PLAY, "both"),
            ),
            _check(
                "figure/early-answer-breaks-player-bracketing",
                not is_well_bracketed(g3, _EARLY_ANSWER, "player"),
            ),
        ]
        return lines

    def composites() -> List[CheckLine]:
        lines = []
        for label, sigma, tau in _winning_pairs(cfg):
            composite = compose(sigma, tau)
            bad = [
                p
                for p in sorted_plays(composite.plays())
                if not is_well_bracketed(composite.game, p, "player")
            ]
            lines.append(
                _check(
                    f"composite/{label}",
                    not bad,
                    witness=f"{len(composite.plays())} plays player-bracketed",
                    fail_witness=f"unbracketed {_fmt_play(bad[0])}" if bad else "",
                )
            )
        return lines

    return [("figures", figures), ("composites", composites)]


# --------------------------------------------------------------------------- #
# comonoid
# --------------------------------------------------------------------------- #


def _suite_comonoid(cfg: RunConfig) -> List[Item]:
    def run() -> List[CheckLine]:
        b = bool_game()
        law_len = min(cfg.max_len, 8)
        lines = [
            _check(
                "bang/positions-bool-2",
                len(bang(b, 2).positions) == 13,
                witness="13 positions",
                fail_witness=f"{len(bang(b, 2).positions)} positions",
            )
        ]
        for k in range(1, cfg.copies + 1):
            report = comonoid_law_check(comonoid_structure(bang(b, k)), max_len=law_len)
            for c in report.checks:
                lines.append(
                    _check(
                        f"laws-k{k}-L{law_len}/{c.law}",
                        c.passed,
                        witness=f"{c.left_size} plays",
                        fail_witness=f"witness {_fmt_play(c.witness)}" if c.witness else "",
                    )
                )
        probe = check_comonoid_negative(bang(b, 2), comonoid_structure(bang(b, 2)).comult)
        lines.append(
            _check(
                "negative-probe/bang-bool",
                probe.negative and probe.square_commutes is None,
                witness="carrier negative, square not probed",
            )
        )
        d = dual(b)
        touching = morphism_from_plays(
            d, tensor(d, d), [(), (("L", "q"), ("R", ("L", "q")))], name="touching"
        )
        neg_probe = check_comonoid_negative(d, touching)
        lines.append(
            _check(
                "negative-probe/dual-bool",
                (not neg_probe.negative) and neg_probe.demonstrated,
                witness=f"square breaks at {_fmt_play(neg_probe.witness or ())}",
                fail_witness=f"negative={neg_probe.negative} commutes={neg_probe.square_commutes}",
            )
        )
        return lines

    return [("comonoid", run)]


# --------------------------------------------------------------------------- #
# innocence / positional
# --------------------------------------------------------------------------- #


def _mirror_carriers() -> List[Tuple[str, Game]]:
    b, two = bool_game(), game_two()
    return [
        ("bool", b),
        ("bool*two", tensor(b, two)),
        ("bool*two*bool", tensor(b, tensor(two, b))),
    ]


def _suite_innocence(cfg: RunConfig) -> List[Item]:
    items: List[Item] = []
    for label, carrier in _mirror_carriers():
        def probe(label=label, carrier=carrier):
            cc = copycat(carrier)
            report = is_innocent(cc, AsyncGame(cc.game))
            return _check(
                f"copycat-innocent/{label}",
                report.innocent,
                witness=f"{len(cc.plays())} plays",
                fail_witness=str(report.witnesses[0]) if report.witnesses else "",
            )

        items.append((f"copycat-innocent/{label}", probe))

    def exhaustive() -> List[CheckLine]:
        b = bool_game()
        bb = tensor(b, b)
        gbb = AsyncGame(bb)
        innocent = 0
        total = 0
        for s in enumerate_strategies(bb):
            total += 1
            if is_innocent(s, gbb).innocent:
                innocent += 1
                if not is_positional(s, gbb).positional:
                    return [
                        CheckLine(
                            "innocent-implies-positional/bool*bool",
                            "fail",
                            f"innocent but not positional: {sorted_plays(s.plays())!r}",
                        )
                    ]
        return [
            CheckLine(
                "innocent-implies-positional/bool*bool",
                "pass",
                f"{innocent} innocent of {total} strategies",
            )
        ]

    items.append(("innocent-implies-positional/bool*bool", exhaustive))
    return items


def _suite_positional(cfg: RunConfig) -> List[Item]:
    items: List[Item] = []
    for label, carrier in _mirror_carriers():
        def probe(label=label, carrier=carrier):
            cc = copycat(carrier)
            report = is_positional(cc, AsyncGame(cc.game))
            return _check(
                f"copycat-positional/{label}",
                report.positional,
                fail_witness=str(report.witnesses[0]) if report.witnesses else "",
            )

        items.append((f"copycat-positional/{label}", probe))

    def reconstruction() -> List[CheckLine]:
        b = bool_game()
        bb = tensor(b, b)
        gbb = AsyncGame(bb)
        innocent_groups: Dict[FrozenSet, set] = {}
        positional_groups: Dict[FrozenSet, set] = {}
        for s in enumerate_strategies(bb):
            if is_innocent(s, gbb).innocent:
                innocent_groups.setdefault(positions_of(s), set()).add(s.plays())
            if is_positional(s, gbb).positional:
                positional_groups.setdefault(positions_of(s), set()).add(s.plays())
        collisions = sum(1 for group in positional_groups.values() if len(group) > 1)
        return [
            _check(
                "positions-determine-innocent/bool*bool",
                all(len(g) == 1 for g in innocent_groups.values()),
                witness=f"{len(innocent_groups)} position sets, one strategy each",
            ),
            _note(
                "merely-positional",
                "measured, not asserted: position sets do not determine "
                f"merely-positional strategies ({collisions} ambiguous position sets)",
            ),
        ]

    items.append(("positions-determine-innocent/bool*bool", reconstruction))
    return items


# --------------------------------------------------------------------------- #
# rel-functoriality
# --------------------------------------------------------------------------- #


def _brute_trace(r: Relation) -> FrozenSet:
    xs = {x for x, _ in r.domain}
    out = set()
    for _, a in r.domain:
        for _, b in r.codomain:
            if any(((x, a), (x, b)) in r.pairs for x in xs):
                out.add((a, b))
    return frozenset(out)


def _suite_rel_functoriality(cfg: RunConfig) -> List[Item]:
    items: List[Item] = []

    def copycat_pair() -> CheckLine:
        b = bool_game()
        rep = positional_functoriality_check(copycat(b), copycat(b))
        return _check("functorial/copycat-pair", rep.compose_ok and rep.tensor_ok)

    items.append(("functorial/copycat-pair", copycat_pair))

    def exhaustive() -> CheckLine:
        b = bool_game()
        hom = hom_game(b, b)
        g = AsyncGame(hom)
        positional = [
            s
            for s in enumerate_strategies(hom, max_len=2)
            if is_positional(s, g).positional
        ]
        pairs = 0
        for s in positional:
            for t in positional:
                rep = positional_functoriality_check(s, t)
                if not (rep.compose_ok and rep.tensor_ok):
                    return CheckLine(
                        "functorial/exhaustive-bool-hom",
                        "fail",
                        f"pair #{pairs} compose_ok={rep.compose_ok} tensor_ok={rep.tensor_ok}",
                    )
                pairs += 1
        return CheckLine(
            "functorial/exhaustive-bool-hom", "pass", f"{pairs} positional pairs"
        )

    items.append(("functorial/exhaustive-bool-hom", exhaustive))

    def trace_shape(nx: int, na: int, nb: int) -> CheckLine:
        xs = [f"x{i}" for i in range(nx)]
        As = [f"a{i}" for i in range(na)]
        bs = [f"b{i}" for i in range(nb)]
        dom = tuple(sorted(itertools.product(xs, As)))
        cod = tuple(sorted(itertools.product(xs, bs)))
        cells = tuple(itertools.product(dom, cod))
        count = 0
        for mask in range(1 << len(cells)):
            pairs = frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
            r = Relation(frozenset(dom), frozenset(cod), pairs)
            if rel_trace(r).pairs != _brute_trace(r):
                return CheckLine(
                    f"rel-trace/shape-{nx}x{na}x{nb}",
                    "fail",
                    f"disagrees on {sorted(pairs)!r}",
                )
            count += 1
        return CheckLine(
            f"rel-trace/shape-{nx}x{na}x{nb}", "pass", f"{count} relations"
        )

    for nx, na, nb in itertools.product((1, 2), repeat=3):
        items.append(
            (
                f"rel-trace/shape-{nx}x{na}x{nb}",
                lambda nx=nx, na=na, nb=nb: trace_shape(nx, na, nb),
            )
        )
    return items


# --------------------------------------------------------------------------- #
# algol-correction
# --------------------------------------------------------------------------- #


def _load_entries(cfg: RunConfig) -> Tuple[CorpusEntry, ...]:
    try:
        return load_corpus(cfg.corpus_path)
    except OSError as exc:
        raise SuiteError(f"cannot read corpus file: {exc}") from exc
    except Exception as exc:  # malformed JSON, bad fields, parse errors
        raise SuiteError(f"malformed corpus file: {exc}") from exc


def _observers(t: Type) -> List[Tuple[str, Callable[[Term], Term]]]:
    """A fixed finite family of ground-result observation contexts."""
    if t == BOOL:
        return [
            ("direct", lambda m: m),
            ("if", lambda m: If(m, BoolLit(True), BoolLit(False))),
            ("if-flip", lambda m: If(m, BoolLit(False), BoolLit(True))),
        ]
    if t == NAT:
        return [
            ("direct", lambda m: m),
            ("zero", lambda m: Zero(m)),
            ("if-zero", lambda m: If(Zero(m), NatLit(0), NatLit(1))),
        ]
    if t == UNIT:
        return [
            ("direct", lambda m: m),
            ("then-tt", lambda m: New("w_obs", m, BoolLit(True))),
        ]
    if isinstance(t, ProdType):
        return [
            (f"fst-{name}", lambda m, w=wrap: w(Proj(1, m)))
            for name, wrap in _observers(t.left)
        ] + [
            (f"snd-{name}", lambda m, w=wrap: w(Proj(2, m)))
            for name, wrap in _observers(t.right)
        ]
    if isinstance(t, ArrowType):
        arg = _canonical(t.arg)
        return [
            (f"app-{name}", lambda m, w=wrap, a=arg: w(App(m, a)))
            for name, wrap in _observers(t.res)
        ]
    raise SuiteError(f"no observation contexts for type {t!r}")


def _canonical(t: Type) -> Term:
    if t == UNIT:
        return SKIP
    if t == BOOL:
        return BoolLit(True)
    if t == NAT:
        return NatLit(0)
    if isinstance(t, ProdType):
        return Pair(_canonical(t.left), _canonical(t.right))
    if isinstance(t, ArrowType):
        return Lam("w_arg", t.arg, _canonical(t.res))
    raise SuiteError(f"no canonical inhabitant for type {t!r}")


def _local_reference_equations(cfg: RunConfig) -> List[CheckLine]:
    """The two scoped-cell equations the denotation is expected to satisfy:
    independent binders commute, and a write to an outer cell commutes out
    of an unrelated binder."""
    lines = []
    swap_l = parse_term("new x := tt in new y := 0 in if !x then !y else 1")
    swap_r = parse_term("new y := 0 in new x := tt in if !x then !y else 1")
    jl = judge((), (), swap_l)
    jr = judge((), (), swap_r)
    lines.append(
        _play_sets_equal(
            "equation/swap-binders",
            denote(jl, cfg.copies, cfg.max_len, cfg.nat_max).plays(cfg.max_len),
            denote(jr, cfg.copies, cfg.max_len, cfg.nat_max).plays(cfg.max_len),
        )
    )
    delta = (("x", RefType(BOOL)),)
    out_l = judge((), delta, parse_term("new y := tt in new z := (x := ff) in !x"))
    out_r = judge((), delta, parse_term("new z := (x := ff) in new y := tt in !x"))
    lines.append(
        _play_sets_equal(
            "equation/write-commutes-out",
            denote(out_l, cfg.copies, cfg.max_len, cfg.nat_max).plays(cfg.max_len),
            denote(out_r, cfg.copies, cfg.max_len, cfg.nat_max).plays(cfg.max_len),
        )
    )
    return lines


def _suite_algol_correction(cfg: RunConfig) -> List[Item]:
    entries = _load_entries(cfg)
    items: List[Item] = []

    for e in entries:
        def eval_exact(e=e):
            out = evaluate(Config(e.term, e.store), fuel=cfg.fuel)
            ok = out.term == e.expected_value and out.store == e.expected_store
            again = evaluate(Config(e.term, e.store), fuel=cfg.fuel)
            stable = again.term == out.term and again.store == out.store
            return _check(
                f"eval/{e.name}",
                ok and stable,
                fail_witness=(
                    f"got {out.term!r} with store {dict(out.store)!r}"
                    if not ok
                    else "re-evaluation diverged from the first run"
                ),
            )

        items.append((f"eval/{e.name}", eval_exact))

    for e in entries:
        def agree(e=e):
            report = correction_check(
                e.term,
                e.store,
                copies=cfg.copies,
                max_len=cfg.max_len,
                nat_max=cfg.nat_max,
                fuel=cfg.fuel,
            )
            return _check(
                f"correction/{e.name}",
                report.verdict == PASS,
                witness=f"{report.before_play_count} plays",
                fail_witness=f"{report.verdict}: {report.reason}",
            )

        items.append((f"correction/{e.name}", agree))

    def observations() -> List[CheckLine]:
        lines: List[CheckLine] = [
            _note(
                "observation-harness",
                "checks a fixed finite context family "
                "(zero / if / projection / application wrappers), "
                "not equivalence under all contexts",
            )
        ]
        closed: List[Tuple[CorpusEntry, Judgment, FrozenSet]] = []
        for e in entries:
            term = close_over_store(e.term, e.store)
            j = judge((), (), term)
            plays = denote(j, cfg.copies, cfg.max_len, cfg.nat_max).plays(cfg.max_len)
            closed.append((e, j, plays))
        compared = 0
        for (e1, j1, p1), (e2, j2, p2) in itertools.combinations(closed, 2):
            if j1.type != j2.type or p1 != p2:
                continue
            compared += 1
            bad = None
            contexts = _observers(j1.type)
            for name, wrap in contexts:
                out1 = evaluate(Config(wrap(j1.term), ()), fuel=cfg.fuel)
                out2 = evaluate(Config(wrap(j2.term), ()), fuel=cfg.fuel)
                if out1.term != out2.term or out1.store != out2.store:
                    bad = (name, out1.term, out2.term)
                    break
            lines.append(
                _check(
                    f"observed/{e1.name}~{e2.name}",
                    bad is None,
                    witness=f"{len(contexts)} contexts agree",
                    fail_witness=(
                        f"context {bad[0]}: {bad[1]!r} vs {bad[2]!r}" if bad else ""
                    ),
                )
            )
        lines.append(
            _note(
                "observation-pairs",
                f"{compared} denotationally equal pairs observed "
                f"out of {len(closed) * (len(closed) - 1) // 2} candidate pairs",
            )
        )
        lines.extend(_local_reference_equations(cfg))
        return lines

    items.append(("observations", observations))
    return items


# --------------------------------------------------------------------------- #
# dispatch
# --------------------------------------------------------------------------- #


_SUITES: Dict[str, Callable[[RunConfig], List[Item]]] = {
    "payoff-axioms": _suite_payoff_axioms,
    "category-laws": _suite_category_laws,
    "traced-axioms": _suite_traced_axioms,
    "winning-closure": _suite_winning_closure,
    "bracketing": _suite_bracketing,
    "comonoid": _suite_comonoid,
    "innocence": _suite_innocence,
    "positional": _suite_positional,
    "rel-functoriality": _suite_rel_functoriality,
    "algol-correction": _suite_algol_correction,
}

SUITE_NAMES: Tuple[str, ...] = tuple(_SUITES)


def _run_item(item: Item) -> List[CheckLine]:
    if isinstance(item, CheckLine):
        return [item]
    check_id, thunk = item
    try:
        result = thunk()
    except Exception as exc:  # a crashed check is a failed check
        return [CheckLine(check_id, "fail", f"error: {exc}")]
    if isinstance(result, CheckLine):
        return [result]
    return list(result)


def run_suite(name: str, cfg: Optional[RunConfig] = None, jobs: int = 1) -> SuiteReport:
    """Run one named suite; see the module docstring for the catalogue.

    ``jobs > 1`` evaluates independent checks in a thread pool; results
    are merged back in definition order, so the report is identical to a
    sequential run.
    """
    cfg = cfg or RunConfig()
    if name not in _SUITES:
        known = ", ".join(SUITE_NAMES)
        raise SuiteError(f"unknown suite {name!r}; known suites: {known}")
    items = _SUITES[name](cfg)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_item, items))
    else:
        chunks = [_run_item(item) for item in items]
    lines = tuple(line for chunk in chunks for line in chunk)
    return SuiteReport(name, cfg, lines)
