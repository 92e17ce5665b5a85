"""Finitely truncated replication of a negative game, with its
commutative-comonoid structure.

``bang(A, k)`` plays up to k interleaved copies of A.  Positions are
length-k tuples of A-positions in prefix normal form: the copies opened
so far occupy the leading indices in opening order, the remaining
entries sit at A's root.  A fresh copy therefore always opens at the
least closed index, and each move advances exactly one copy; polarity
and payoff come from the underlying A-edge, with path payoffs summed
copy-wise.

The structure maps are ``counit`` (the silent strategy into the unit
game), ``dereliction`` (mirror between copy 0 and a single A), and
``comult`` (a mirror into two replicated halves whose copies are routed
onto source copies in opening order — the fixed even/odd injection
renormalized to prefix form).  ``comonoid_law_check`` verifies the
comonoid laws as play-set equalities, and ``check_comonoid_negative``
probes the cocommutativity square on games that open with a Player
move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from cgw.games import Game, OPPONENT, Pair, Payoff, tensor, unit_game
from cgw.monoidal import (
    StrategyMorphism,
    assoc_left,
    identity,
    left_unitor,
    mcompose,
    right_unitor,
    symmetry,
    tensor_morphism,
)
from cgw.strategies import PlayOracle, Strategy, bottom, hom_game, sorted_plays
from cgw.wiring import PortPair, wiring_strategy


class ExponentialError(ValueError):
    """Raised for invalid replication parameters."""


# --------------------------------------------------------------------------- #
# the replicated game
# --------------------------------------------------------------------------- #


class BangPayoff(Payoff):
    """Copy-wise sum of the base payoff."""

    def __init__(self, base: Game, copies: int) -> None:
        self.base = base
        self.copies = copies

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        plus = minus = 0
        for i in range(self.copies):
            proj = tuple(m for j, m in moves if j == i)
            p, n = self.base.payoff.of(source[i], proj)
            plus += p
            minus += n
        return (plus, minus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BangPayoff)
            and self.base == other.base
            and self.copies == other.copies
        )

    def __hash__(self) -> int:
        return hash(("bang-payoff", self.base, self.copies))


class BangGame(Game):
    """Up to ``copies`` interleaved copies of a negative base game.

    The instance is itself the playable game; ``game`` returns self so
    callers may treat the triple (base, copies, game) uniformly.
    """

    def __init__(self, base: Game, copies: int) -> None:
        if copies < 1:
            raise ExponentialError("at least one copy is required")
        if not base.negative:
            raise ExponentialError("base game must be negative")
        self.base = base
        self.copies = copies
        self.payoff = BangPayoff(base, copies)
        self.name = f"bang({base.name or 'game'},{copies})"

    @property
    def game(self) -> "BangGame":
        return self

    @property
    def root(self) -> Any:
        return (self.base.root,) * self.copies

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        out: Dict[Any, Any] = {}
        opened = 0
        for i, base_pos in enumerate(pos):
            if base_pos == self.base.root:
                break
            opened = i + 1
            for m, dst in self.base.moves_from(base_pos).items():
                out[(i, m)] = pos[:i] + (dst,) + pos[i + 1 :]
        if opened < self.copies:
            for m, dst in self.base.moves_from(self.base.root).items():
                out[(opened, m)] = pos[:opened] + (dst,) + pos[opened + 1 :]
        return out

    def polarity(self, move: Any) -> int:
        return self.base.polarity(move[1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BangGame)
            and self.base == other.base
            and self.copies == other.copies
        )

    def __hash__(self) -> int:
        return hash(("bang", self.base, self.copies))


def bang(base: Game, copies: int) -> BangGame:
    """The truncated replication of a negative game."""
    return BangGame(base, copies)


# --------------------------------------------------------------------------- #
# structure maps
# --------------------------------------------------------------------------- #


def counit(bg: BangGame) -> StrategyMorphism:
    """The silent arrow into the unit game: a negative target leaves the
    Player no move, so the empty strategy is the only candidate."""
    target = unit_game()
    return StrategyMorphism(bg, target, bottom(hom_game(bg, target), name="counit"))


def dereliction(bg: BangGame) -> StrategyMorphism:
    """Mirror between copy 0 and a single instance of the base game."""
    game = hom_game(bg, bg.base)

    def strip(move: Any) -> Optional[Any]:
        index, m = move
        return m if index == 0 else None

    def tag(move: Any) -> Any:
        return (0, move)

    pairs = [PortPair(("L",), bg, ("R",), bg.base, a_to_b=strip, b_to_a=tag)]
    return StrategyMorphism(bg, bg.base, wiring_strategy(game, pairs, name="dereliction"))


class ComultOracle(PlayOracle):
    """Forced-reply mirror between one replicated source and two
    replicated halves, assigning source copies in opening order.

    A destination copy (side, i) opened while all source copies are
    already claimed is an overflow of the truncation: the move is
    rejected, i.e. the strategy stops responding on that branch.
    """

    def __init__(self, bg: BangGame) -> None:
        self.bg = bg
        self.pair = tensor(bg, bg)
        self.game = hom_game(bg, self.pair)

    def start(self):
        # (source position, dst position, claims as tuple of (side, i)
        #  indexed by source copy, pending forced reply)
        return (self.bg.root, self.pair.root, (), None)

    def _reply(self, state, move):
        src_pos, dst_pos, claims, _ = state
        if self.game.polarity(move) != OPPONENT:
            return None
        tag, inner = move
        if tag == "R":
            side, (i, m) = inner
            dst2 = self.pair.step(dst_pos, inner)
            if dst2 is None:
                return None
            if (side, i) in claims:
                j = claims.index((side, i))
            else:
                j = len(claims)
                if j >= self.bg.copies:
                    return None
                claims = claims + ((side, i),)
            reply = ("L", (j, m))
            if self.bg.step(src_pos, (j, m)) is None:
                return None
            return (src_pos, dst2, claims, reply)
        j, m = inner
        src2 = self.bg.step(src_pos, inner)
        if src2 is None or j >= len(claims):
            return None
        side, i = claims[j]
        reply = ("R", (side, (i, m)))
        if self.pair.step(dst_pos, (side, (i, m))) is None:
            return None
        return (src2, dst_pos, claims, reply)

    def step(self, state, move):
        src_pos, dst_pos, claims, pending = state
        if pending is not None:
            if move != pending:
                return None
            tag, inner = move
            if tag == "L":
                return (self.bg.step(src_pos, inner), dst_pos, claims, None)
            return (src_pos, self.pair.step(dst_pos, inner), claims, None)
        return self._reply(state, move)

    def accepting(self, state) -> bool:
        return state[3] is None


def comult(bg: BangGame) -> StrategyMorphism:
    """The duplication arrow into two replicated halves."""
    game = hom_game(bg, tensor(bg, bg))
    strat = Strategy(game, oracle_factory=lambda: ComultOracle(bg), name="comult")
    return StrategyMorphism(bg, tensor(bg, bg), strat)


@dataclass
class ComonoidStructure:
    """The three structure maps over one replicated carrier."""

    counit: StrategyMorphism
    comult: StrategyMorphism
    dereliction: StrategyMorphism

    @property
    def carrier(self) -> Game:
        return self.comult.src


def comonoid_structure(bg: BangGame) -> ComonoidStructure:
    return ComonoidStructure(counit(bg), comult(bg), dereliction(bg))


# --------------------------------------------------------------------------- #
# law checks
# --------------------------------------------------------------------------- #


@dataclass
class LawCheck:
    law: str
    passed: bool
    left_size: int
    right_size: int
    witness: Optional[Tuple[Any, ...]]


@dataclass
class ComonoidLawReport:
    checks: List[LawCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[LawCheck]:
        return [c for c in self.checks if not c.passed]


def _compare(law: str, left: StrategyMorphism, right: StrategyMorphism, max_len: int) -> LawCheck:
    lp = left.plays(max_len)
    rp = right.plays(max_len)
    witness = None
    if lp != rp:
        witness = sorted_plays(lp.symmetric_difference(rp))[0]
    return LawCheck(law, lp == rp, len(lp), len(rp), witness)


def comonoid_law_check(structure: ComonoidStructure, max_len: int) -> ComonoidLawReport:
    """Counit laws, coassociativity and cocommutativity as play-set
    equalities up to ``max_len``, composed with the canonical unit and
    associativity isomorphisms."""
    m = structure.carrier
    d = structure.comult
    e = structure.counit
    ident = identity(m)
    checks = [
        _compare(
            "counit-left",
            mcompose(d, tensor_morphism(e, ident), left_unitor(m)),
            ident,
            max_len,
        ),
        _compare(
            "counit-right",
            mcompose(d, tensor_morphism(ident, e), right_unitor(m)),
            ident,
            max_len,
        ),
        _compare(
            "coassociativity",
            mcompose(d, tensor_morphism(d, ident)),
            mcompose(d, tensor_morphism(ident, d), assoc_left(m, m, m)),
            max_len,
        ),
        _compare(
            "cocommutativity",
            mcompose(d, symmetry(m, m)),
            d,
            max_len,
        ),
    ]
    return ComonoidLawReport(checks)


@dataclass
class NegativityReport:
    """Outcome of probing the cocommutativity square on a candidate
    carrier.  ``negative`` means the carrier opens with Opponent moves
    only (the lawful case); otherwise ``square_commutes`` records whether
    the supplied duplication survived the symmetry twist, with a witness
    play when it did not."""

    negative: bool
    square_commutes: Optional[bool]
    witness: Optional[Tuple[Any, ...]]

    def __bool__(self) -> bool:
        return self.negative

    @property
    def demonstrated(self) -> bool:
        return (not self.negative) and self.square_commutes is False


def check_comonoid_negative(m: Game, d: StrategyMorphism) -> NegativityReport:
    """Report the carrier negative, or probe the failure of the
    cocommutativity square d;swap = d on it.

    A duplication that never touches its destination can evade this
    probe even on a Player-opening carrier, so a commuting square on a
    non-negative carrier is reported as such rather than treated as a
    contradiction.
    """
    if m != d.src or d.dst != tensor(m, m):
        raise ExponentialError("duplication must go from the carrier to its square")
    if m.negative:
        return NegativityReport(True, None, None)
    twisted = mcompose(d, symmetry(m, m))
    lp, rp = twisted.plays(), d.plays()
    if lp == rp:
        return NegativityReport(False, True, None)
    return NegativityReport(False, False, sorted_plays(lp.symmetric_difference(rp))[0])
