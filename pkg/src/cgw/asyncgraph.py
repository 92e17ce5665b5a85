"""Labelled games with commuting-move structure.

A labelled game carries a move label per edge (default: the move id
itself) under one global condition: no path may carry the same label
twice.  On top of that live

* ``homotopic`` — the equivalence closure of swapping two adjacent
  moves when both orders are paths;
* ``independent`` — a move that can be inserted anywhere along a path;
* ``is_innocent`` — closure of a winning strategy's play set under
  backward and forward rescheduling of independent move blocks;
* ``is_positional`` — homotopic plays into the same position share
  their continuations;
* the relational collapse: ``positions_of`` reads a strategy as the set
  of positions it reaches, and finite relations with composition,
  juxtaposition and trace mirror strategy operations position-wise.

Every independence statement inside the innocence checks is anchored as
a square of walks at the position where the two moves sit next to each
other while one block bubbles past the other; this is the only reading
under which each check is a well-formed statement about enabled moves.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from cgw.games import Game, Path, TensorGame
from cgw.strategies import (
    Strategy,
    WinningReport,
    compose,
    is_winning,
    sorted_plays,
    split_hom,
)

Moves = Tuple[Any, ...]


class AsyncGameError(ValueError):
    """Raised for invalid labellings or misused path arguments."""


class RelationError(ValueError):
    """Raised when relation shapes do not line up."""


# --------------------------------------------------------------------------- #
# labelled games
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class LabelViolation:
    """A path witnessing the same label twice: following ``path`` and then
    ``move`` repeats ``label``."""

    path: Path
    move: Any
    label: Any


def label_repeat_violations(
    game: Game, label_of: Callable[[Any], Any]
) -> List[LabelViolation]:
    """All (position, move) pairs where extending some path from the root
    repeats a label, each with one witness path."""
    # seen_labels[v] = labels appearing on at least one path from the root
    # to v; a repeat exists exactly when an edge at v carries one of them.
    order: List[Any] = []
    indegree: Dict[Any, int] = {game.root: 0}
    for pos in game.positions:
        for _m, dst in game.enabled(pos):
            indegree[dst] = indegree.get(dst, 0) + 1
    indegree.setdefault(game.root, 0)
    queue = deque([game.root])
    while queue:
        pos = queue.popleft()
        order.append(pos)
        for _m, dst in game.enabled(pos):
            indegree[dst] -= 1
            if indegree[dst] == 0:
                queue.append(dst)

    seen_labels: Dict[Any, set] = {game.root: set()}
    violations: List[LabelViolation] = []
    for pos in order:
        here = seen_labels.setdefault(pos, set())
        for m, dst in game.enabled(pos):
            lab = label_of(m)
            if lab in here:
                violations.append(
                    LabelViolation(_path_with_label(game, pos, lab, label_of), m, lab)
                )
            seen_labels.setdefault(dst, set()).update(here | {lab})
    return violations


def _path_with_label(
    game: Game, target: Any, label: Any, label_of: Callable[[Any], Any]
) -> Path:
    """One path from the root to ``target`` through a ``label``-edge."""

    def go(pos: Any, moves: Moves, seen: bool) -> Optional[Moves]:
        if pos == target and seen:
            return moves
        for m, dst in game.enabled(pos):
            found = go(dst, moves + (m,), seen or label_of(m) == label)
            if found is not None:
                return found
        return None

    moves = go(game.root, (), False)
    if moves is None:
        raise AsyncGameError("internal: witness path vanished")
    return Path(game.root, moves)


@dataclass
class AsyncGame:
    """A game with a label per move id; no path repeats a label.

    ``labels`` maps move ids to labels and defaults to the identity,
    which is valid whenever no single move id occurs twice along a path.
    """

    game: Game
    labels: Optional[Dict[Any, Any]] = None

    def __post_init__(self) -> None:
        bad = label_repeat_violations(self.game, self.label_of)
        if bad:
            first = bad[0]
            raise AsyncGameError(
                f"label {first.label!r} repeats along a path: "
                f"{first.path.moves} then {first.move!r}"
            )

    def label_of(self, move: Any) -> Any:
        if self.labels is None:
            return move
        return self.labels.get(move, move)


# --------------------------------------------------------------------------- #
# homotopy
# --------------------------------------------------------------------------- #


def _walks(game: Game, source: Any, moves: Sequence[Any]) -> bool:
    return game.walk(source, tuple(moves)) is not None


def _bubble_towards(game: Game, source: Any, start: Moves, goal: Moves) -> bool:
    """Greedy transform of ``start`` into ``goal`` by adjacent swaps, every
    intermediate sequence checked to walk.  A ``True`` answer is therefore a
    certified homotopy; ``False`` only means this particular greedy route
    failed."""
    cur = list(start)
    n = len(cur)
    for i in range(n):
        if cur[i] == goal[i]:
            continue
        moved = False
        for j in range(i + 1, n):
            if cur[j] != goal[i]:
                continue
            trial = list(cur)
            ok = True
            for k in range(j, i, -1):
                trial[k - 1], trial[k] = trial[k], trial[k - 1]
                if not _walks(game, source, trial):
                    ok = False
                    break
            if ok:
                cur = trial
                moved = True
                break
        if not moved:
            return False
    return tuple(cur) == tuple(goal)


def _homotopic_moves(game: Game, source: Any, s1: Moves, s2: Moves) -> bool:
    """Decide reachability by chains of adjacent transpositions in which
    every intermediate sequence walks.

    Adjacent swaps preserve the multiset of moves, so unequal multisets are
    rejected outright.  A greedy certified transform handles the common case;
    only pairs that defeat it fall back to the exhaustive breadth-first
    search, which is the defining criterion."""
    if not _walks(game, source, s1) or not _walks(game, source, s2):
        return False
    if len(s1) != len(s2):
        return False
    start, goal = tuple(s1), tuple(s2)
    if start == goal:
        return True
    if Counter(start) != Counter(goal):
        return False
    if _bubble_towards(game, source, start, goal):
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return True
        for i in range(len(cur) - 1):
            swapped = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2 :]
            if swapped not in seen and _walks(game, source, swapped):
                seen.add(swapped)
                queue.append(swapped)
    return False


def homotopic(s1: Path, s2: Path, G: AsyncGame) -> bool:
    """Whether two paths differ by a chain of adjacent swaps, every
    intermediate stage being a path."""
    if s1.source != s2.source:
        raise AsyncGameError("paths have different sources")
    return _homotopic_moves(G.game, s1.source, s1.moves, s2.moves)


@dataclass(frozen=True)
class ConcatCheck:
    first: Path
    first_alt: Path
    second: Path
    second_alt: Path
    endpoints_ok: bool
    inputs_homotopic: bool
    concatenation_homotopic: bool

    @property
    def passed(self) -> bool:
        return self.endpoints_ok and self.inputs_homotopic and self.concatenation_homotopic


@dataclass
class ConcatHomotopyReport:
    checks: List[ConcatCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[ConcatCheck]:
        return [c for c in self.checks if not c.passed]


def concat_respects_homotopy_check(
    G: AsyncGame, corpus: Iterable[Tuple[Path, Path, Path, Path]]
) -> ConcatHomotopyReport:
    """For each quadruple (s1, s1', s2, s2') with s1 ~ s1' ending where
    s2 ~ s2' start, verify s1.s2 ~ s1'.s2'."""
    game = G.game
    checks = []
    for s1, s1_alt, s2, s2_alt in corpus:
        mid = game.walk(s1.source, s1.moves)
        mid_alt = game.walk(s1_alt.source, s1_alt.moves)
        endpoints_ok = (
            s1.source == s1_alt.source
            and mid is not None
            and mid == mid_alt
            and s2.source == mid
            and s2_alt.source == mid
            and game.walk(s2.source, s2.moves) is not None
            and game.walk(s2.source, s2.moves) == game.walk(s2_alt.source, s2_alt.moves)
        )
        inputs_ok = (
            endpoints_ok
            and homotopic(s1, s1_alt, G)
            and homotopic(s2, s2_alt, G)
        )
        concat_ok = inputs_ok and _homotopic_moves(
            game, s1.source, s1.moves + s2.moves, s1_alt.moves + s2_alt.moves
        )
        checks.append(ConcatCheck(s1, s1_alt, s2, s2_alt, endpoints_ok, inputs_ok, concat_ok))
    return ConcatHomotopyReport(checks)


# --------------------------------------------------------------------------- #
# independence
# --------------------------------------------------------------------------- #


def independent(m: Any, s: Path, G: AsyncGame) -> bool:
    """Whether the move ``m`` can be inserted at every split of ``s``.

    ``m`` must be enabled at the source of ``s``.
    """
    game = G.game
    if game.step(s.source, m) is None:
        raise AsyncGameError(f"move {m!r} is not enabled at the source of the path")
    if not _walks(game, s.source, s.moves):
        raise AsyncGameError("second argument is not a path")
    return _insertable(game, s.source, m, s.moves)


def _insertable(game: Game, source: Any, m: Any, moves: Moves) -> bool:
    return all(
        _walks(game, source, moves[:i] + (m,) + moves[i:])
        for i in range(len(moves) + 1)
    )


def independent_paths(s: Path, t: Path, G: AsyncGame) -> bool:
    """Path-path independence: every move of ``s``, taken in order, can be
    inserted at every split of ``t``.  The empty path is independent of
    everything."""
    if s.source != t.source:
        raise AsyncGameError("paths have different sources")
    game = G.game
    if not _walks(game, s.source, s.moves) or not _walks(game, t.source, t.moves):
        raise AsyncGameError("arguments must be paths")
    return all(_insertable(game, t.source, m, t.moves) for m in s.moves)


# --------------------------------------------------------------------------- #
# innocence
# --------------------------------------------------------------------------- #


def _tile(game: Game, prefix: Moves, a: Any, b: Any) -> bool:
    """Both orders of two consecutive moves walk after ``prefix``."""
    return _walks(game, game.root, prefix + (a, b)) and _walks(
        game, game.root, prefix + (b, a)
    )


@dataclass(frozen=True)
class InnocenceWitness:
    """One failed rescheduling: after ``prefix``, the block ``first``
    followed by ``second`` could not be reordered."""

    kind: str  # "backward" | "forward"
    prefix: Moves
    first: Tuple[Any, Any]
    second: Tuple[Any, Any]
    missing: str  # which conclusion failed
    expected_play: Optional[Moves]


@dataclass
class InnocenceReport:
    winning: WinningReport
    witnesses: List[InnocenceWitness]
    checked: bool  # False when the winning precondition already failed

    @property
    def precondition_ok(self) -> bool:
        return self.winning.winning

    @property
    def innocent(self) -> bool:
        return self.precondition_ok and not self.witnesses

    def __bool__(self) -> bool:
        return self.innocent


def _block_conclusions(
    game: Game,
    plays: FrozenSet[Moves],
    kind: str,
    prefix: Moves,
    first: Tuple[Any, Any],
    second: Tuple[Any, Any],
    expected: Moves,
    out: List[InnocenceWitness],
) -> None:
    """Check the conclusions shared by both consistency directions: the two
    remaining independence squares and membership of the rescheduled play."""
    m1, n1 = first
    m2, n2 = second
    if not _tile(game, prefix + (m2,), m1, n2):
        out.append(
            InnocenceWitness(kind, prefix, first, second, "first move / second answer not independent", None)
        )
    elif not _tile(game, prefix + (m2, m1), n1, n2):
        out.append(
            InnocenceWitness(kind, prefix, first, second, "answers not independent", None)
        )
    elif expected not in plays:
        out.append(
            InnocenceWitness(kind, prefix, first, second, "rescheduled play missing", expected)
        )


def is_innocent(sigma: Strategy, G: AsyncGame) -> InnocenceReport:
    """Closure of a winning strategy under rescheduling of independent
    Opponent/Player blocks.

    Backward: whenever a play runs ``prefix . m1 n1 m2 n2 . suffix`` and
    the two opening moves commute past the first block (both reorder
    squares walk), the play with the blocks swapped must also be played,
    and the remaining two squares must close.  Forward: whenever two
    plays extend ``prefix`` by one block each and the same hypothesis
    squares walk, their concatenation must be played.  A non-winning
    strategy fails the precondition and is reported unchecked.
    """
    if sigma.game != G.game:
        raise AsyncGameError("strategy and labelled game disagree on the game")
    winning = is_winning(sigma)
    if not winning.winning:
        return InnocenceReport(winning, [], checked=False)
    game = G.game
    plays = sigma.plays()
    witnesses: List[InnocenceWitness] = []

    for play in sorted_plays(plays):
        for i in range(0, len(play) - 3, 2):
            prefix = play[:i]
            m1, n1, m2, n2 = play[i : i + 4]
            suffix = play[i + 4 :]
            if _tile(game, prefix, m1, m2) and _tile(game, prefix + (m1,), n1, m2):
                expected = prefix + (m2, n2, m1, n1) + suffix
                _block_conclusions(
                    game, plays, "backward", prefix, (m1, n1), (m2, n2), expected, witnesses
                )

    by_prefix: Dict[Moves, List[Moves]] = {}
    for play in plays:
        if len(play) >= 2:
            by_prefix.setdefault(play[:-2], []).append(play)
    for prefix in sorted_plays(by_prefix):
        if prefix not in plays:
            continue
        extensions = sorted_plays(by_prefix[prefix])
        for p in extensions:
            for q in extensions:
                if p == q:
                    continue
                m1, n1 = p[-2:]
                m2, n2 = q[-2:]
                if _tile(game, prefix, m1, m2) and _tile(game, prefix + (m1,), n1, m2):
                    expected = prefix + (m1, n1, m2, n2)
                    _block_conclusions(
                        game, plays, "forward", prefix, (m1, n1), (m2, n2), expected, witnesses
                    )
    return InnocenceReport(winning, witnesses, checked=True)


# --------------------------------------------------------------------------- #
# positionality
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class PositionalWitness:
    """Homotopic plays into one position with a continuation played after
    the first but not the second."""

    play: Moves
    sibling: Moves
    continuation: Moves


@dataclass
class PositionalReport:
    witnesses: List[PositionalWitness]

    @property
    def positional(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.positional


def is_positional(sigma: Strategy, G: AsyncGame) -> PositionalReport:
    """Homotopic plays of the strategy reaching the same position must
    allow exactly the same continuations."""
    if sigma.game != G.game:
        raise AsyncGameError("strategy and labelled game disagree on the game")
    game = G.game
    plays = sorted_plays(sigma.plays())
    targets = {p: game.walk(game.root, p) for p in plays}
    witnesses: List[PositionalWitness] = []
    for s1 in plays:
        for s2 in plays:
            if s1 == s2 or len(s1) != len(s2) or targets[s1] != targets[s2]:
                continue
            if not _homotopic_moves(game, game.root, s1, s2):
                continue
            for p in plays:
                if len(p) > len(s1) and p[: len(s1)] == s1:
                    t = p[len(s1) :]
                    if s2 + t not in sigma.plays():
                        witnesses.append(PositionalWitness(s1, s2, t))
    return PositionalReport(witnesses)


def positions_of(sigma: Strategy) -> FrozenSet:
    """The positions reached by the strategy's plays."""
    game = sigma.game
    return frozenset(game.walk(game.root, p) for p in sigma.plays())


# --------------------------------------------------------------------------- #
# finite relations
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Relation:
    """A finite relation between two explicit carrier sets."""

    domain: FrozenSet
    codomain: FrozenSet
    pairs: FrozenSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "codomain", frozenset(self.codomain))
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for x, y in self.pairs:
            if x not in self.domain or y not in self.codomain:
                raise RelationError(f"pair ({x!r}, {y!r}) escapes the carriers")


def rel_identity(carrier: Iterable[Any]) -> Relation:
    xs = frozenset(carrier)
    return Relation(xs, xs, frozenset((x, x) for x in xs))


def rel_compose(r: Relation, s: Relation) -> Relation:
    if r.codomain != s.domain:
        raise RelationError("middle carriers differ")
    by_left: Dict[Any, List[Any]] = {}
    for y, z in s.pairs:
        by_left.setdefault(y, []).append(z)
    pairs = frozenset((x, z) for x, y in r.pairs for z in by_left.get(y, []))
    return Relation(r.domain, s.codomain, pairs)


def rel_tensor(r: Relation, s: Relation) -> Relation:
    domain = frozenset((x1, x2) for x1 in r.domain for x2 in s.domain)
    codomain = frozenset((y1, y2) for y1 in r.codomain for y2 in s.codomain)
    pairs = frozenset(
        ((x1, x2), (y1, y2)) for x1, y1 in r.pairs for x2, y2 in s.pairs
    )
    return Relation(domain, codomain, pairs)


def _pair_shaped(values: Iterable[Any], side: str) -> None:
    for v in values:
        if not (isinstance(v, tuple) and len(v) == 2):
            raise RelationError(f"{side} carrier is not a set of pairs: {v!r}")


def rel_trace(r: Relation) -> Relation:
    """Feedback over the shared first component: relate a to b when some
    x satisfies (x, a) r (x, b)."""
    _pair_shaped(r.domain, "domain")
    _pair_shaped(r.codomain, "codomain")
    domain = frozenset(a for _x, a in r.domain)
    codomain = frozenset(b for _x, b in r.codomain)
    pairs = frozenset(
        (a, b) for (x, a), (y, b) in r.pairs if x == y
    )
    return Relation(domain, codomain, pairs)


# --------------------------------------------------------------------------- #
# relational collapse of strategies
# --------------------------------------------------------------------------- #


def strategy_relation(sigma: Strategy) -> Relation:
    """Read a strategy on a two-sided game as a relation between the
    component position sets."""
    game = sigma.game
    if not isinstance(game, TensorGame):
        raise RelationError("strategy game is not tensor-shaped")
    return Relation(game.left.positions, game.right.positions, positions_of(sigma))


@dataclass
class FunctorialityReport:
    """Position-wise comparison of strategy operations with relation
    operations: hiding the middle game against relational composition,
    and juxtaposition against the relational product."""

    composed: Relation
    composed_expected: Relation
    tensored: Relation
    tensored_expected: Relation

    @property
    def compose_ok(self) -> bool:
        return self.composed == self.composed_expected

    @property
    def tensor_ok(self) -> bool:
        return self.tensored == self.tensored_expected

    @property
    def ok(self) -> bool:
        return self.compose_ok and self.tensor_ok


def positional_functoriality_check(sigma: Strategy, tau: Strategy) -> FunctorialityReport:
    """Compare the positions reached by composed / juxtaposed strategies
    with the relational composite / product of their position relations."""
    from cgw.monoidal import StrategyMorphism, tensor_morphism

    for strat in (sigma, tau):
        report = is_positional(strat, AsyncGame(strat.game))
        if not report.positional:
            raise AsyncGameError(
                f"strategy {strat.name or '?'} is not positional; "
                f"witness {report.witnesses[0]}"
            )
    a, b = split_hom(sigma.game)
    c, d = split_hom(tau.game)
    composed = strategy_relation(compose(sigma, tau))
    composed_expected = rel_compose(strategy_relation(sigma), strategy_relation(tau))

    f = StrategyMorphism(a, b, sigma)
    g = StrategyMorphism(c, d, tau)
    pair = tensor_morphism(f, g)
    # the juxtaposed game nests positions as ((a, c), (b, d)); the relational
    # product produces exactly that shape from (a, b) and (c, d)
    tensored = strategy_relation(pair.strat)
    tensored_expected = rel_tensor(strategy_relation(sigma), strategy_relation(tau))
    return FunctorialityReport(composed, composed_expected, tensored, tensored_expected)


@dataclass
class TraceCollapseReport:
    """Experimental: does feedback on strategies collapse to relational
    feedback on the positions they reach?  Recorded, never asserted."""

    traced: Relation
    collapsed: Relation

    @property
    def matches(self) -> bool:
        return self.traced == self.collapsed


def experimental_trace_collapse_check(f) -> TraceCollapseReport:
    from cgw.monoidal import trace

    traced = strategy_relation(trace(f).strat)
    collapsed = rel_trace(strategy_relation(f.strat))
    return TraceCollapseReport(traced, collapsed)
