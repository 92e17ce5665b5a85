"""Morphisms between games and their monoidal plumbing.

A morphism from game ``src`` to game ``dst`` is a strategy on
``tensor(dual(src), dst)``.  This module provides the categorical
toolkit on top of that: identities, composition, tensor of morphisms,
structural isomorphisms (symmetry, associativity, rotation), the
currying rotations of the self-dual tensor, and the feedback operator
``trace``.

``trace`` is reduced to existing machinery: the traced factor of the
source is rotated to the destination side by a move bijection, then a
mirror strategy synchronizes the two facing occurrences move-for-move,
and ordinary composition hides them.  ``trace_axiom_suite`` checks
naturality, strength, sliding and yanking as exact play-set equalities
on an explicit corpus of instances; ``axiom_corpus`` builds such a
corpus from a seed for reproducibility.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Any, Iterable, Iterator, List, Optional, Tuple

from cgw.corpus import random_game, random_strategy
from cgw.games import (
    Game,
    OPPONENT,
    PLAYER,
    TensorGame,
    dual,
    loli,
    neg,
    tensor,
    unit_game,
)
from cgw.strategies import (
    Strategy,
    compose,
    copycat,
    hom_game,
    is_winning,
)
from cgw.wiring import PortPair, InterleaveOracle, relabel_strategy, wiring_strategy


class MonoidalError(ValueError):
    """Raised for shape mismatches between morphisms."""


# --------------------------------------------------------------------------- #
# morphisms
# --------------------------------------------------------------------------- #


@dataclass
class StrategyMorphism:
    """A strategy presented as an arrow ``src -> dst``."""

    src: Game
    dst: Game
    strat: Strategy

    def __post_init__(self) -> None:
        if self.strat.game != hom_game(self.src, self.dst):
            raise MonoidalError("strategy does not live on tensor(dual(src), dst)")

    @property
    def name(self) -> str:
        return self.strat.name

    def plays(self, max_len: Optional[int] = None):
        return self.strat.plays(max_len)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrategyMorphism):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.strat.plays() == other.strat.plays()
        )


def morphism_from_plays(src: Game, dst: Game, plays, name: str = "") -> StrategyMorphism:
    return StrategyMorphism(src, dst, Strategy.from_plays(hom_game(src, dst), plays, name=name))


def identity(x: Game) -> StrategyMorphism:
    return StrategyMorphism(x, x, copycat(x))


def mcompose(*morphisms: StrategyMorphism) -> StrategyMorphism:
    """Compose arrows left to right, hiding every intermediate game."""
    if not morphisms:
        raise MonoidalError("nothing to compose")
    out = morphisms[0]
    for nxt in morphisms[1:]:
        if out.dst != nxt.src:
            raise MonoidalError("arrow endpoints do not meet")
        out = StrategyMorphism(out.src, nxt.dst, compose(out.strat, nxt.strat))
    return out


def tensor_morphism(f: StrategyMorphism, g: StrategyMorphism) -> StrategyMorphism:
    """Side-by-side tensor of two arrows (lazy interleaving)."""
    src = tensor(f.src, g.src)
    dst = tensor(f.dst, g.dst)
    game = hom_game(src, dst)

    def classify(move: Any) -> Tuple[str, Any]:
        side, inner = move
        which, m = inner
        return which, (side, m)

    strat = Strategy(
        game,
        oracle_factory=lambda: InterleaveOracle(
            game, f.strat.oracle(), g.strat.oracle(), classify
        ),
        name=f"({f.name}(x){g.name})",
    )
    return StrategyMorphism(src, dst, strat)


# --------------------------------------------------------------------------- #
# structural isomorphisms
# --------------------------------------------------------------------------- #


def _structural(
    src: Game,
    dst: Game,
    legs: List[Tuple[Tuple[str, ...], Tuple[str, ...], Game]],
    name: str,
) -> StrategyMorphism:
    """Mirror strategy pairing each source leaf with a destination leaf."""
    game = hom_game(src, dst)
    pairs = [
        PortPair(("L",) + src_path, leaf, ("R",) + dst_path, leaf)
        for src_path, dst_path, leaf in legs
    ]
    return StrategyMorphism(src, dst, wiring_strategy(game, pairs, name=name))


def symmetry(a: Game, b: Game) -> StrategyMorphism:
    """a (x) b -> b (x) a."""
    return _structural(
        tensor(a, b),
        tensor(b, a),
        [(("L",), ("R",), a), (("R",), ("L",), b)],
        name="symmetry",
    )


def assoc_right(a: Game, b: Game, c: Game) -> StrategyMorphism:
    """(a (x) b) (x) c -> a (x) (b (x) c)."""
    return _structural(
        tensor(tensor(a, b), c),
        tensor(a, tensor(b, c)),
        [(("L", "L"), ("L",), a), (("L", "R"), ("R", "L"), b), (("R",), ("R", "R"), c)],
        name="assoc_right",
    )


def assoc_left(a: Game, b: Game, c: Game) -> StrategyMorphism:
    """a (x) (b (x) c) -> (a (x) b) (x) c."""
    return _structural(
        tensor(a, tensor(b, c)),
        tensor(tensor(a, b), c),
        [(("L",), ("L", "L"), a), (("R", "L"), ("L", "R"), b), (("R", "R"), ("R",), c)],
        name="assoc_left",
    )


def rotate(x: Game, y: Game, z: Game) -> StrategyMorphism:
    """x (x) (y (x) z) -> y (x) (x (x) z): swap the two leading factors."""
    return _structural(
        tensor(x, tensor(y, z)),
        tensor(y, tensor(x, z)),
        [(("L",), ("R", "L"), x), (("R", "L"), ("L",), y), (("R", "R"), ("R", "R"), z)],
        name="rotate",
    )


def left_unitor(x: Game) -> StrategyMorphism:
    """unit (x) x -> x."""
    return _structural(
        tensor(unit_game(), x), x, [(("R",), (), x)], name="left_unitor"
    )


def left_unitor_inv(x: Game) -> StrategyMorphism:
    """x -> unit (x) x."""
    return _structural(
        x, tensor(unit_game(), x), [((), ("R",), x)], name="left_unitor_inv"
    )


def right_unitor(x: Game) -> StrategyMorphism:
    """x (x) unit -> x."""
    return _structural(
        tensor(x, unit_game()), x, [(("L",), (), x)], name="right_unitor"
    )


def right_unitor_inv(x: Game) -> StrategyMorphism:
    """x -> x (x) unit."""
    return _structural(
        x, tensor(x, unit_game()), [((), ("L",), x)], name="right_unitor_inv"
    )


# --------------------------------------------------------------------------- #
# currying rotations
# --------------------------------------------------------------------------- #


def curry(f: StrategyMorphism) -> StrategyMorphism:
    """Rotate the left tensor factor of the source over to the destination:
    an arrow a (x) b -> c becomes b -> dual(a) (x) c with the same plays,
    transported along the canonical move bijection."""
    if not isinstance(f.src, TensorGame):
        raise MonoidalError("source of curry must be a tensor")
    a, b = f.src.left, f.src.right
    c = f.dst
    new_dst = tensor(dual(a), c)
    game = hom_game(b, new_dst)

    def to_old(move: Any) -> Any:
        tag, inner = move
        if tag == "L":
            return ("L", ("R", inner))
        tag2, m = inner
        if tag2 == "L":
            return ("L", ("L", m))
        return ("R", m)

    return StrategyMorphism(
        b, new_dst, relabel_strategy(f.strat, game, to_old, name=f"curry({f.name})")
    )


def uncurry(g: StrategyMorphism) -> StrategyMorphism:
    """Inverse rotation: an arrow b -> dual(a) (x) c becomes a (x) b -> c."""
    if not isinstance(g.dst, TensorGame):
        raise MonoidalError("destination of uncurry must be a tensor")
    a = dual(g.dst.left)
    c = g.dst.right
    b = g.src
    new_src = tensor(a, b)
    game = hom_game(new_src, c)

    def to_old(move: Any) -> Any:
        tag, inner = move
        if tag == "R":
            return ("R", ("R", inner))
        tag2, m = inner
        if tag2 == "L":
            return ("R", ("L", m))
        return ("L", m)

    return StrategyMorphism(
        new_src, c, relabel_strategy(g.strat, game, to_old, name=f"uncurry({g.name})")
    )


# --------------------------------------------------------------------------- #
# trace
# --------------------------------------------------------------------------- #


def trace_parts(f: StrategyMorphism) -> Tuple[Strategy, Strategy]:
    """The two strategies whose composition is ``trace(f)``.

    The first is ``f`` rotated onto ``hom(a, (dual(x) (x) x) (x) b)``; the
    second synchronizes the facing pair of x occurrences move-for-move
    and passes b through.  Exposed so tests can inspect interaction
    witnesses of the hidden loop.
    """
    if not (isinstance(f.src, TensorGame) and isinstance(f.dst, TensorGame)):
        raise MonoidalError("trace needs tensor-shaped source and destination")
    x, a = f.src.left, f.src.right
    x2, b = f.dst.left, f.dst.right
    if x != x2:
        raise MonoidalError("traced factors of source and destination differ")

    loop = tensor(tensor(dual(x), x), b)
    rotated_game = hom_game(a, loop)

    def to_old(move: Any) -> Any:
        tag, inner = move
        if tag == "L":
            return ("L", ("R", inner))
        tag2, inner2 = inner
        if tag2 == "R":
            return ("R", ("R", inner2))
        tag3, xm = inner2
        if tag3 == "L":
            return ("L", ("L", xm))
        return ("R", ("L", xm))

    f_rotated = relabel_strategy(f.strat, rotated_game, to_old, name=f"rot({f.name})")
    collapse = wiring_strategy(
        hom_game(loop, b),
        [
            PortPair(("L", "L", "L"), x, ("L", "L", "R"), x),
            PortPair(("L", "R"), b, ("R",), b),
        ],
        name="collapse",
    )
    return f_rotated, collapse


def trace(f: StrategyMorphism) -> StrategyMorphism:
    """Feedback over the common left factor: from x (x) a -> x (x) b
    down to a -> b.

    A play survives exactly when some interaction synchronizes the two
    hidden x occurrences move-for-move while f's own projection stays
    inside f; composition hides the loop.
    """
    f_rotated, collapse = trace_parts(f)
    a = f.src.right
    b = f.dst.right
    return StrategyMorphism(
        a, b, compose(f_rotated, collapse, name=f"trace({f.name})")
    )


# --------------------------------------------------------------------------- #
# strategy enumeration, the pruning adjunction, and the exported closure
# --------------------------------------------------------------------------- #


def enumerate_strategies(game: Game, max_len: Optional[int] = None) -> Iterator[Strategy]:
    """Every valid strategy of the game (plays capped at ``max_len``).

    Exhaustive and exponential: meant for desk-scale games only.
    """

    def node(pos: Any, depth: int) -> List[frozenset]:
        if max_len is not None and depth >= max_len:
            return [frozenset({()})]
        per_move: List[List[frozenset]] = []
        for m, dst in game.enabled(pos):
            if game.polarity(m) != OPPONENT:
                continue
            options: List[frozenset] = [frozenset()]
            for r, d2 in game.enabled(dst):
                if game.polarity(r) != PLAYER:
                    continue
                for sub in node(d2, depth + 2):
                    options.append(frozenset((m, r) + s for s in sub))
            per_move.append(options)
        out = []
        for combo in iter_product(*per_move):
            plays = frozenset().union(*combo) if combo else frozenset()
            out.append(plays | {()})
        return out

    for plays in node(game.root, 0):
        yield Strategy.from_plays(game, plays)


@dataclass
class SpaceComparisonReport:
    """Comparison of two whole strategy spaces as sets of play sets."""

    left_count: int
    right_count: int
    identical_play_sets: bool

    @property
    def ok(self) -> bool:
        return self.left_count == self.right_count and self.identical_play_sets


def neg_adjunction_check(a: Game, b: Game, max_len: int) -> SpaceComparisonReport:
    """Check that arrows a -> b and a -> neg(b) are the same strategies.

    Requires a negative: no play can then ever reach a Player-owned
    opening of b, so pruning those openings changes nothing.  Verified
    by exhaustive enumeration up to ``max_len``; the bijection is the
    identity on play sets, so the two spaces must be literally equal.
    """
    if not a.negative:
        raise MonoidalError("left game must be negative")
    plain = {s.plays() for s in enumerate_strategies(hom_game(a, b), max_len)}
    pruned = {s.plays() for s in enumerate_strategies(hom_game(a, neg(b)), max_len)}
    return SpaceComparisonReport(len(plain), len(pruned), plain == pruned)


def closure_check(a: Game, b: Game, max_len: int) -> SpaceComparisonReport:
    """Check that the Opponent-starting function-space game supports
    exactly the strategies of the plain one: strategies on
    tensor(dual(a), b) versus strategies on its root-pruned closure
    loli(a, b), for negative a."""
    if not a.negative:
        raise MonoidalError("left game must be negative")
    plain = {s.plays() for s in enumerate_strategies(hom_game(a, b), max_len)}
    closed = {s.plays() for s in enumerate_strategies(loli(a, b), max_len)}
    return SpaceComparisonReport(len(plain), len(closed), plain == closed)


# --------------------------------------------------------------------------- #
# axiom suite
# --------------------------------------------------------------------------- #


@dataclass
class AxiomInstance:
    """One bundle of games and arrows shaped for all four feedback axioms.

    Shapes: f_nat on x(x)a2 -> x(x)b2 with outer arrows g_nat: a -> a2 and
    h_nat: b2 -> b; f_str on x(x)a -> x(x)b with bystander g_str: c -> d;
    f_sld on y(x)(x(x)a) -> x(x)(y(x)b).
    """

    label: str
    x: Game
    y: Game
    a: Game
    b: Game
    a2: Game
    b2: Game
    c: Game
    d: Game
    f_nat: StrategyMorphism
    g_nat: StrategyMorphism
    h_nat: StrategyMorphism
    f_str: StrategyMorphism
    g_str: StrategyMorphism
    f_sld: StrategyMorphism


def axiom_corpus(seed: int, count: int, max_positions: int = 6) -> List[AxiomInstance]:
    """A reproducible corpus of axiom instances built from a seed."""
    rng = random.Random(seed)
    out: List[AxiomInstance] = []
    for i in range(count):
        x = random_game(rng, max_positions, name=f"x{i}")
        y = random_game(rng, max_positions, name=f"y{i}")
        a = random_game(rng, max_positions, name=f"a{i}")
        b = random_game(rng, max_positions, name=f"b{i}")
        a2 = random_game(rng, max_positions, name=f"p{i}")
        b2 = random_game(rng, max_positions, name=f"q{i}")
        c = random_game(rng, max_positions, name=f"c{i}")
        d = random_game(rng, max_positions, name=f"d{i}")

        def arrow(src: Game, dst: Game, tag: str) -> StrategyMorphism:
            return StrategyMorphism(
                src, dst, random_strategy(hom_game(src, dst), rng, name=f"{tag}{i}")
            )

        out.append(
            AxiomInstance(
                label=f"seeded{i}",
                x=x,
                y=y,
                a=a,
                b=b,
                a2=a2,
                b2=b2,
                c=c,
                d=d,
                f_nat=arrow(tensor(x, a2), tensor(x, b2), "fn"),
                g_nat=arrow(a, a2, "gn"),
                h_nat=arrow(b2, b, "hn"),
                f_str=arrow(tensor(x, a), tensor(x, b), "fs"),
                g_str=arrow(c, d, "gs"),
                f_sld=arrow(tensor(y, tensor(x, a)), tensor(x, tensor(y, b)), "fd"),
            )
        )
    return out


@dataclass
class AxiomCheck:
    axiom: str
    instance: str
    passed: bool
    left_size: int
    right_size: int


@dataclass
class TraceAxiomReport:
    checks: List[AxiomCheck] = field(default_factory=list)
    # (label, was f winning, is its trace winning): measured, never asserted
    winning_notes: List[Tuple[str, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def add(
        self,
        axiom: str,
        instance: str,
        left: StrategyMorphism,
        right: StrategyMorphism,
    ) -> None:
        lp, rp = left.plays(), right.plays()
        self.checks.append(AxiomCheck(axiom, instance, lp == rp, len(lp), len(rp)))


def trace_axiom_suite(corpus: Iterable[AxiomInstance]) -> TraceAxiomReport:
    """Check the four feedback axioms, each as an exact play-set equality,
    on every instance of the corpus.

    Whether tracing preserved winning is recorded per instance in
    ``winning_notes`` and deliberately not asserted: feedback can hide a
    violation inside the loop or surface a new one.
    """
    from cgw.algol.gamedefs import bool_game

    report = TraceAxiomReport()

    bool_g = bool_game()
    report.add("yanking", "bool", trace(symmetry(bool_g, bool_g)), identity(bool_g))

    for inst in corpus:
        x, y, a, b = inst.x, inst.y, inst.a, inst.b

        report.add("yanking", inst.label, trace(symmetry(x, x)), identity(x))

        lhs = trace(
            mcompose(
                tensor_morphism(identity(x), inst.g_nat),
                inst.f_nat,
                tensor_morphism(identity(x), inst.h_nat),
            )
        )
        rhs = mcompose(inst.g_nat, trace(inst.f_nat), inst.h_nat)
        report.add("naturality", inst.label, lhs, rhs)

        lhs = trace(
            mcompose(
                assoc_left(x, a, inst.c),
                tensor_morphism(inst.f_str, inst.g_str),
                assoc_right(x, b, inst.d),
            )
        )
        traced_f = trace(inst.f_str)
        rhs = tensor_morphism(traced_f, inst.g_str)
        report.add("strength", inst.label, lhs, rhs)
        report.winning_notes.append(
            (
                inst.label,
                is_winning(inst.f_str.strat).winning,
                is_winning(traced_f.strat).winning,
            )
        )

        lhs = trace(trace(mcompose(inst.f_sld, rotate(x, y, b))))
        rhs = trace(trace(mcompose(rotate(x, y, a), inst.f_sld)))
        report.add("sliding", inst.label, lhs, rhs)

    return report
