"""Player strategies: play sets, copycat, interaction, composition, checks.

A strategy for a game is a set of even-length alternating plays (Opponent
moves first) that contains the empty play, is closed under removing the
last Opponent/Player round, and answers each Opponent move deterministically.
Strategies *between* games live on the composite ``dual(A) (x) B``
(:func:`hom_game`).

Two representations coexist behind one class:

* explicit -- a frozen set of plays (the default, fine at desk scale);
* lazy -- an *oracle*, a small state machine recognising the prefix
  closure of the play set.  Composition and the mirror strategy are
  built this way, so huge composites are never materialised unless a
  caller asks for the plays.

Composition runs the two oracles in parallel over the shared middle game
and hides the middle moves; the hidden chatter is handled by an
epsilon-closure over middle moves, as for automata with silent steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from cgw.games import (
    Game,
    GameError,
    NegGame,
    OPPONENT,
    PLAYER,
    Path,
    TensorGame,
    dual,
    tensor,
)
from cgw.util import canon_key, sorted_ids

Moves = Tuple[Any, ...]


class StrategyError(ValueError):
    """Raised for malformed strategies or mismatched composition."""


def hom_game(src: Game, dst: Game) -> Game:
    """The game on which strategies from ``src`` to ``dst`` live."""
    return tensor(dual(src), dst)


def split_hom(game: Game) -> Tuple[Game, Game]:
    """Recover (src, dst) from a hom game, accepting a pruned-root wrapper."""
    base = game.base if isinstance(game, NegGame) else game
    if not isinstance(base, TensorGame):
        raise StrategyError("game is not of the form dual(src) (x) dst")
    return dual(base.left), base.right


# --------------------------------------------------------------------------- #
# oracles: state machines over the prefix closure of a play set
# --------------------------------------------------------------------------- #


class PlayOracle:
    """Recognises the prefix closure of a play set, one move at a time.

    ``step`` returns the successor state or None when the extended prefix
    leaves the language; ``accepting`` holds exactly when the prefix
    consumed so far is itself one of the strategy's plays.
    """

    def start(self) -> Any:
        raise NotImplementedError

    def step(self, state: Any, move: Any) -> Optional[Any]:
        raise NotImplementedError

    def accepting(self, state: Any) -> bool:
        raise NotImplementedError


class _TrieNode:
    __slots__ = ("children", "accepting")

    def __init__(self) -> None:
        self.children: Dict[Any, _TrieNode] = {}
        self.accepting = False


class TrieOracle(PlayOracle):
    """Explicit play sets, indexed as a prefix tree."""

    def __init__(self, plays: Iterable[Moves]) -> None:
        self._root = _TrieNode()
        for play in plays:
            node = self._root
            for move in play:
                node = node.children.setdefault(move, _TrieNode())
            node.accepting = True

    def start(self) -> _TrieNode:
        return self._root

    def step(self, state: _TrieNode, move: Any) -> Optional[_TrieNode]:
        return state.children.get(move)

    def accepting(self, state: _TrieNode) -> bool:
        return state.accepting


class MirrorOracle(PlayOracle):
    """The copycat strategy on ``dual(A) (x) A``.

    Opponent may move on either copy (on the left these are the moves
    Player owns in A, on the right the moves Opponent owns); Player
    immediately repeats the same move on the other copy.  State is
    (left position in A, right position in A, forced reply or None).
    """

    def __init__(self, base: Game) -> None:
        self.base = base

    def start(self):
        return (self.base.root, self.base.root, None)

    def step(self, state, move):
        pos_l, pos_r, pending = state
        if pending is not None:
            if move != pending:
                return None
            side, m = move
            if side == "L":
                return (self.base.step(pos_l, m), pos_r, None)
            return (pos_l, self.base.step(pos_r, m), None)
        side, m = move
        if side == "L":
            if self.base.polarity(m) != PLAYER:
                return None
            dst = self.base.step(pos_l, m)
            if dst is None:
                return None
            return (dst, pos_r, ("R", m))
        if self.base.polarity(m) != OPPONENT:
            return None
        dst = self.base.step(pos_r, m)
        if dst is None:
            return None
        return (pos_l, dst, ("L", m))

    def accepting(self, state) -> bool:
        return state[2] is None


def _materialize(game: Game, oracle: PlayOracle, max_len: Optional[int]) -> List[Moves]:
    out: List[Moves] = []

    def go(pos: Any, state: Any, prefix: Moves) -> None:
        if oracle.accepting(state):
            out.append(prefix)
        if max_len is not None and len(prefix) >= max_len:
            return
        for m, dst in game.enabled(pos):
            nxt = oracle.step(state, m)
            if nxt is not None:
                go(dst, nxt, prefix + (m,))

    go(game.root, oracle.start(), ())
    return out


# --------------------------------------------------------------------------- #
# strategies
# --------------------------------------------------------------------------- #


class Strategy:
    """A Player strategy, explicit (play set) or lazy (oracle-backed)."""

    def __init__(
        self,
        game: Game,
        plays: Optional[Iterable[Moves]] = None,
        oracle_factory: Optional[Callable[[], PlayOracle]] = None,
        name: str = "",
    ) -> None:
        if (plays is None) == (oracle_factory is None):
            raise StrategyError("provide exactly one of plays / oracle_factory")
        self.game = game
        self.name = name
        self._oracle_factory = oracle_factory
        self._plays: Optional[FrozenSet[Moves]] = (
            frozenset(tuple(p) for p in plays) if plays is not None else None
        )

    @classmethod
    def from_plays(cls, game: Game, plays: Iterable[Moves], name: str = "") -> "Strategy":
        return cls(game, plays=plays, name=name)

    @property
    def lazy(self) -> bool:
        return self._plays is None

    def oracle(self) -> PlayOracle:
        if self._oracle_factory is not None:
            return self._oracle_factory()
        return TrieOracle(self._plays)

    def plays(self, max_len: Optional[int] = None) -> FrozenSet[Moves]:
        """The play set, materialising an oracle-backed strategy on demand."""
        if self._plays is not None:
            if max_len is None:
                return self._plays
            return frozenset(p for p in self._plays if len(p) <= max_len)
        result = frozenset(_materialize(self.game, self.oracle(), max_len))
        if max_len is None:
            self._plays = result
        return result

    def __contains__(self, moves: Iterable[Any]) -> bool:
        moves = tuple(moves)
        if self._plays is not None:
            return moves in self._plays
        oracle = self.oracle()
        state = oracle.start()
        for m in moves:
            state = oracle.step(state, m)
            if state is None:
                return False
        return oracle.accepting(state)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Strategy):
            return NotImplemented
        return self.game == other.game and self.plays() == other.plays()

    def __repr__(self) -> str:
        body = "lazy" if self._plays is None else f"{len(self._plays)} plays"
        return f"Strategy({self.name or '?'}: {body})"


def bottom(game: Game, name: str = "bottom") -> Strategy:
    """The strategy that never answers: just the empty play."""
    return Strategy.from_plays(game, [()], name=name)


def copycat(base: Game, name: str = "") -> Strategy:
    """The mirror strategy on ``dual(base) (x) base``."""
    return Strategy(
        hom_game(base, base),
        oracle_factory=lambda: MirrorOracle(base),
        name=name or (f"copycat({base.name})" if base.name else "copycat"),
    )


def sorted_plays(plays: Iterable[Moves]) -> List[Moves]:
    return sorted(plays, key=lambda p: (len(p), canon_key(tuple(p))))


# --------------------------------------------------------------------------- #
# validation
# --------------------------------------------------------------------------- #


@dataclass
class StrategyReport:
    """Violated strategy clauses, each with a witness play."""

    violations: List[Tuple[str, Moves]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> FrozenSet[str]:
        return frozenset(clause for clause, _ in self.violations)


def validate_strategy(sigma: Strategy, max_len: Optional[int] = None) -> StrategyReport:
    """Check the defining clauses of a strategy, reporting each failure."""
    game = sigma.game
    plays = sigma.plays(max_len)
    violations: List[Tuple[str, Moves]] = []
    if () not in plays:
        violations.append(("missing-empty-play", ()))
    for play in sorted_plays(plays):
        if not play:
            continue
        if game.walk(game.root, play) is None:
            violations.append(("not-a-path", play))
            continue
        if len(play) % 2:
            violations.append(("odd-length", play))
        for i, m in enumerate(play):
            expected = OPPONENT if i % 2 == 0 else PLAYER
            if game.polarity(m) != expected:
                violations.append(("not-alternating", play))
                break
        if len(play) >= 2 and len(play) % 2 == 0 and play[:-2] not in plays:
            violations.append(("not-even-prefix-closed", play))
    replies: Dict[Moves, Any] = {}
    for play in sorted_plays(plays):
        if len(play) >= 2 and len(play) % 2 == 0:
            stem, reply = play[:-1], play[-1]
            if replies.setdefault(stem, reply) != reply:
                violations.append(("nondeterministic", play))
    return StrategyReport(violations)


# --------------------------------------------------------------------------- #
# interactions and composition
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Interaction:
    """A three-component interleaving, moves tagged 'A' / 'B' / 'C'."""

    moves: Tuple[Tuple[str, Any], ...]

    def project(self, components: str) -> Moves:
        """Restrict to two components, e.g. 'AB', 'BC' or 'AC'; the first
        named component becomes the 'L' side, the second the 'R' side."""
        first, second = components
        out = []
        for tag, m in self.moves:
            if tag == first:
                out.append(("L", m))
            elif tag == second:
                out.append(("R", m))
        return tuple(out)

    def __len__(self) -> int:
        return len(self.moves)


def _check_hom(sigma: Strategy, tau: Strategy) -> Tuple[Game, Game, Game]:
    a, b1 = split_hom(sigma.game)
    b2, c = split_hom(tau.game)
    if b1 != b2:
        raise StrategyError("middle games of the two strategies differ")
    return a, b1, c


def interactions(
    a: Game,
    b: Game,
    c: Game,
    sigma: Strategy,
    tau: Strategy,
) -> List[Interaction]:
    """All interleavings over (a, b, c) whose outer projections are plays
    of sigma and tau respectively.  Breadth-first, deterministic order."""
    sa, sb = split_hom(sigma.game)
    tb, tc = split_hom(tau.game)
    if sa != a or sb != b or tb != b or tc != c:
        raise StrategyError("strategy games do not match the component games")
    orc_s, orc_t = sigma.oracle(), tau.oracle()
    start = (a.root, b.root, c.root, orc_s.start(), orc_t.start())
    results: List[Interaction] = []
    frontier: List[Tuple[Tuple[Tuple[str, Any], ...], tuple]] = [((), start)]
    while frontier:
        nxt = []
        for seq, state in frontier:
            pa, pb, pc, ss, st = state
            if orc_s.accepting(ss) and orc_t.accepting(st):
                results.append(Interaction(seq))
            for m, dst in a.enabled(pa):
                ss2 = orc_s.step(ss, ("L", m))
                if ss2 is not None:
                    nxt.append((seq + (("A", m),), (dst, pb, pc, ss2, st)))
            for m, dst in b.enabled(pb):
                ss2 = orc_s.step(ss, ("R", m))
                if ss2 is None:
                    continue
                st2 = orc_t.step(st, ("L", m))
                if st2 is not None:
                    nxt.append((seq + (("B", m),), (pa, dst, pc, ss2, st2)))
            for m, dst in c.enabled(pc):
                st2 = orc_t.step(st, ("R", m))
                if st2 is not None:
                    nxt.append((seq + (("C", m),), (pa, pb, dst, ss, st2)))
        frontier = nxt
    return results


class CompositeOracle(PlayOracle):
    """Oracle of the composite strategy: both component oracles advanced in
    parallel, middle-game moves hidden by epsilon-closure.

    States are (visible parity, frozen set of (posA, posB, posC,
    state_sigma, state_tau)).  The parity gate keeps only alternating
    visible plays: an interleaving may delay a hidden hand-off past a
    fresh Opponent move, and although such an interleaving is a genuine
    interaction, it hides to a non-alternating sequence that no strategy
    may contain.
    """

    def __init__(self, a: Game, b: Game, c: Game, sigma: Strategy, tau: Strategy) -> None:
        self.a, self.b, self.c = a, b, c
        self.orc_s = sigma.oracle()
        self.orc_t = tau.oracle()
        self._closure_memo: Dict[frozenset, frozenset] = {}
        self._step_memo: Dict[Tuple[Any, Any], Optional[Any]] = {}

    def _closure(self, states: frozenset) -> frozenset:
        hit = self._closure_memo.get(states)
        if hit is not None:
            return hit
        seen = set(states)
        stack = list(states)
        while stack:
            pa, pb, pc, ss, st = stack.pop()
            for m, dst in self.b.enabled(pb):
                ss2 = self.orc_s.step(ss, ("R", m))
                if ss2 is None:
                    continue
                st2 = self.orc_t.step(st, ("L", m))
                if st2 is None:
                    continue
                nxt = (pa, dst, pc, ss2, st2)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        result = frozenset(seen)
        self._closure_memo[states] = result
        return result

    def start(self):
        seed = frozenset(
            {(self.a.root, self.b.root, self.c.root, self.orc_s.start(), self.orc_t.start())}
        )
        return (0, self._closure(seed))

    def step(self, state, move: Any):
        key = (state, move)
        if key in self._step_memo:
            return self._step_memo[key]
        parity, states = state
        tag, m = move
        polarity = -self.a.polarity(m) if tag == "L" else self.c.polarity(m)
        expected = OPPONENT if parity == 0 else -OPPONENT
        if polarity != expected:
            self._step_memo[key] = None
            return None
        out = set()
        for pa, pb, pc, ss, st in states:
            if tag == "L":
                dst = self.a.step(pa, m)
                if dst is None:
                    continue
                ss2 = self.orc_s.step(ss, ("L", m))
                if ss2 is None:
                    continue
                out.add((dst, pb, pc, ss2, st))
            else:
                dst = self.c.step(pc, m)
                if dst is None:
                    continue
                st2 = self.orc_t.step(st, ("R", m))
                if st2 is None:
                    continue
                out.add((pa, pb, dst, ss, st2))
        result = (1 - parity, self._closure(frozenset(out))) if out else None
        self._step_memo[key] = result
        return result

    def accepting(self, state) -> bool:
        parity, states = state
        return parity == 0 and any(
            self.orc_s.accepting(ss) and self.orc_t.accepting(st)
            for _, _, _, ss, st in states
        )


def compose(sigma: Strategy, tau: Strategy, name: str = "") -> Strategy:
    """Compose two strategies over a shared middle game, hiding the middle.

    The result is oracle-backed: nothing is enumerated until the play set
    is requested.  Only interactions whose visible projection alternates
    contribute; see CompositeOracle.
    """
    a, b, c = _check_hom(sigma, tau)
    return Strategy(
        hom_game(a, c),
        oracle_factory=lambda: CompositeOracle(a, b, c, sigma, tau),
        name=name or f"({sigma.name};{tau.name})",
    )


def unique_witness(play: Moves, sigma: Strategy, tau: Strategy) -> Interaction:
    """The unique interaction that hides to the given composite play.

    Raises if no interaction matches (the play is not in the composite)
    or -- loudly, since it should be impossible -- if several do.
    """
    a, b, c = _check_hom(sigma, tau)
    orc_s, orc_t = sigma.oracle(), tau.oracle()
    target = tuple(play)
    found: List[Tuple[Tuple[str, Any], ...]] = []

    def go(i: int, state: tuple, seq: Tuple[Tuple[str, Any], ...]) -> None:
        pa, pb, pc, ss, st = state
        if i == len(target) and orc_s.accepting(ss) and orc_t.accepting(st):
            found.append(seq)
        for m, dst in b.enabled(pb):
            ss2 = orc_s.step(ss, ("R", m))
            if ss2 is None:
                continue
            st2 = orc_t.step(st, ("L", m))
            if st2 is None:
                continue
            go(i, (pa, dst, pc, ss2, st2), seq + (("B", m),))
        if i < len(target):
            tag, m = target[i]
            if tag == "L":
                dst = a.step(pa, m)
                if dst is not None:
                    ss2 = orc_s.step(ss, ("L", m))
                    if ss2 is not None:
                        go(i + 1, (dst, pb, pc, ss2, st), seq + (("A", m),))
            else:
                dst = c.step(pc, m)
                if dst is not None:
                    st2 = orc_t.step(st, ("R", m))
                    if st2 is not None:
                        go(i + 1, (pa, pb, dst, ss, st2), seq + (("C", m),))

    go(0, (a.root, b.root, c.root, orc_s.start(), orc_t.start()), ())
    if not found:
        raise StrategyError(f"no interaction witnesses the play {play!r}")
    if len(found) > 1:
        raise StrategyError(f"witness of {play!r} is not unique ({len(found)} found)")
    return Interaction(found[0])


# --------------------------------------------------------------------------- #
# winning and bracketing
# --------------------------------------------------------------------------- #


@dataclass
class WinningReport:
    """Violations of the winning condition: (play, segment start, payoff)."""

    violations: List[Tuple[Moves, int, Tuple[int, int]]]

    @property
    def winning(self) -> bool:
        return not self.violations


def is_winning(sigma: Strategy, max_len: Optional[int] = None) -> WinningReport:
    """Check that on every played segment, Player being debt-free forces
    Opponent to be debt-free too.

    A played segment is the remainder t of a play s + t of the strategy
    after one of its plays s; since play sets are closed under removing
    final rounds, this covers every segment between two even cut points.
    """
    game = sigma.game
    violations: List[Tuple[Moves, int, Tuple[int, int]]] = []
    for play in sorted_plays(sigma.plays(max_len)):
        positions = [game.root]
        for m in play:
            positions.append(game.step(positions[-1], m))
        for i in range(0, len(play) + 1, 2):
            tail = play[i:]
            value = game.payoff.of(positions[i], tail)
            if value[0] == 0 and value[1] != 0:
                violations.append((play, i, value))
    return WinningReport(violations)


def is_well_bracketed(game: Game, play: Moves, mode: str = "both") -> bool:
    """Question/answer discipline of one play, per party.

    player mode: every even-length segment ending with a Player move has
    ``plus == 0 -> minus == 0``; opponent mode is the mirror image; both
    is the conjunction.
    """
    if mode not in ("player", "opponent", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    play = tuple(play)
    if game.walk(game.root, play) is None:
        raise GameError("not a play of the game")
    positions = [game.root]
    for m in play:
        positions.append(game.step(positions[-1], m))
    for i in range(len(play)):
        for j in range(i + 2, len(play) + 1, 2):
            segment = play[i:j]
            value = game.payoff.of(positions[i], segment)
            last = game.polarity(play[j - 1])
            if mode in ("player", "both") and last == PLAYER:
                if value[0] == 0 and value[1] != 0:
                    return False
            if mode in ("opponent", "both") and last == OPPONENT:
                if value[1] == 0 and value[0] != 0:
                    return False
    return True


def interact_two(sigma: Strategy, tau: Strategy) -> FrozenSet[Moves]:
    """Plays of sigma that tau, prompted once, would sit through.

    sigma lives on a game A; tau lives on ``dual(A) (x) T`` where T has a
    single Opponent move o.  The result keeps the empty play and every
    play s + m of sigma such that tau plays o followed by s (on the dual
    side).
    """
    a = sigma.game
    a2, trigger = split_hom(tau.game)
    if a2 != a:
        raise StrategyError("tau does not interact with sigma's game")
    root_moves = [m for m, _ in trigger.enabled(trigger.root)]
    if len(root_moves) != 1:
        raise StrategyError("right component must offer exactly one move")
    o = root_moves[0]
    out = {()}
    for play in sigma.plays():
        if not play:
            continue
        transcript = (("R", o),) + tuple(("L", m) for m in play[:-1])
        if transcript in tau:
            out.add(play)
    return frozenset(out)
