"""Denotational interpretation of typed terms into game strategies.

A judgment  gamma ; delta |- M : alpha  becomes an arrow

    row(gamma) (x) row(delta)  ->  row(delta) (x) value(alpha)

where ``row`` tensors one replicated stream per context entry (for store
entries, a stream of the stored content's game).  Store streams thread
left to right through every clause: reads split off copies of the
incoming stream, writes retire the incoming stream and emit a freshly
replayed one, and a local cell is closed off by feeding its final
stream back through the feedback (trace) loop, where it is never
demanded again.

Everything stays lazy: each clause builds oracle-backed strategies, so
play sets are only materialised when a caller asks for them.  The two
resource bounds are the stream width ``copies`` (how many times any one
stream may be consulted) and the play length ``max_len`` used when
comparing denotations.  Width overflows are recorded on an
:class:`OverflowLog` as they are discovered during materialisation —
enumerate plays first, then inspect the log.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..exponential import BangGame, ComultOracle, bang, dereliction
from ..games import Game, OPPONENT, PLAYER, TensorGame, dual, loli, product, tensor, unit_game
from ..monoidal import (
    StrategyMorphism,
    identity,
    curry,
    mcompose,
    morphism_from_plays,
    tensor_morphism,
    trace,
)
from ..strategies import Moves, PlayOracle, Strategy, hom_game
from ..wiring import PortPair, wiring_strategy, wrap_port
from .gamedefs import bool_game, nat_game
from .syntax import (
    App,
    ArrowType,
    Assign,
    BoolLit,
    BoolType,
    Deref,
    If,
    Lam,
    NatLit,
    NatType,
    New,
    Pair,
    ProdType,
    Proj,
    RefType,
    Seq,
    Skip,
    Term,
    Type,
    UnitType,
    Var,
    Zero,
    free_names,
    fresh_name,
    term_to_text,
    type_to_text,
)
from .typecheck import Context, Judgment

Path = Tuple[str, ...]

__all__ = [
    "DenoteError",
    "OverflowEvent",
    "OverflowLog",
    "DenoteContext",
    "denote",
    "result_plays",
    "length_probe",
]


class DenoteError(ValueError):
    """Raised when a judgment falls outside the interpretable fragment."""


# --------------------------------------------------------------------------- #
# overflow reporting
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class OverflowEvent:
    """One detected breach of the stream-width bound."""

    kind: str
    detail: str


@dataclass
class OverflowLog:
    """Collector for width overflows hit while materialising plays."""

    events: List[OverflowEvent] = field(default_factory=list)

    def record(self, kind: str, detail: str) -> None:
        self.events.append(OverflowEvent(kind, detail))

    def __bool__(self) -> bool:
        return bool(self.events)


# --------------------------------------------------------------------------- #
# games of types
# --------------------------------------------------------------------------- #


class DenoteContext:
    """Interning store for the games of types, streams, and context rows."""

    def __init__(self, copies: int = 2, max_len: int = 12, nat_max: int = 8,
                 log: Optional[OverflowLog] = None) -> None:
        if copies < 1:
            raise DenoteError("stream width must be at least 1")
        if max_len < 1:
            raise DenoteError("play length bound must be at least 1")
        if nat_max < 0:
            raise DenoteError("numeric bound must be non-negative")
        self.copies = copies
        self.max_len = max_len
        self.nat_max = nat_max
        self.log = log if log is not None else OverflowLog()
        self.unit = unit_game()
        self._games: Dict[Type, Game] = {}
        self._bangs: Dict[Type, BangGame] = {}
        self._rows: Dict[Tuple[Type, ...], Game] = {}

    def game_of(self, t: Type) -> Game:
        """The value game of a type; reference types have none."""
        hit = self._games.get(t)
        if hit is not None:
            return hit
        if isinstance(t, RefType):
            raise DenoteError("reference types denote streams, not value games")
        if isinstance(t, UnitType):
            game: Game = self.unit
        elif isinstance(t, BoolType):
            game = bool_game()
        elif isinstance(t, NatType):
            game = nat_game(self.nat_max)
        elif isinstance(t, ProdType):
            game = product(self.game_of(t.left), self.game_of(t.right))
        elif isinstance(t, ArrowType):
            game = loli(self.bang_of(t.arg), self.game_of(t.res))
        else:  # pragma: no cover - the type grammar is closed
            raise DenoteError(f"no game for type {type_to_text(t)}")
        self._games[t] = game
        return game

    def bang_of(self, t: Type) -> BangGame:
        """The replicated stream over a value type's game."""
        hit = self._bangs.get(t)
        if hit is None:
            hit = bang(self.game_of(t), self.copies)
            self._bangs[t] = hit
        return hit

    def row_of(self, types: Sequence[Type]) -> Game:
        """Left-nested tensor of one stream per entry, seeded on the unit."""
        key = tuple(types)
        hit = self._rows.get(key)
        if hit is None:
            hit = reduce(tensor, (self.bang_of(t) for t in key), self.unit)
            self._rows[key] = hit
        return hit


def _row_paths(n: int) -> List[Path]:
    """Leaf addresses of an n-entry row, left to right."""
    return [("L",) * (n - 1 - i) + ("R",) for i in range(n)]


def _leaves(game: Game, prefix: Path = ()) -> List[Tuple[Path, Game]]:
    """Tensor leaves with their addresses; non-tensor games are leaves."""
    if isinstance(game, TensorGame):
        return _leaves(game.left, prefix + ("L",)) + _leaves(game.right, prefix + ("R",))
    return [(prefix, game)]


# --------------------------------------------------------------------------- #
# rewiring helpers
# --------------------------------------------------------------------------- #


def _rewire(src: Game, dst: Game, legs: Sequence[Tuple[Path, Path, Game]],
            name: str = "rewire") -> StrategyMorphism:
    """Copycat along the given (source leaf, destination leaf) pairs.

    Leaves mentioned in no leg are simply never played, which is how
    a stream is dropped (erased) or a factor silenced.
    """
    game = hom_game(src, dst)
    pairs = [
        PortPair(("L",) + a, leaf, ("R",) + b, leaf)
        for a, b, leaf in legs
        if leaf.enabled(leaf.root)
    ]
    return StrategyMorphism(src, dst, wiring_strategy(game, pairs, name=name))


def _delta_passthrough(ctx: DenoteContext, contents: Sequence[Type]) -> List[Tuple[Path, Path, Game]]:
    """Legs mirroring every store stream from source to destination row."""
    dp = _row_paths(len(contents))
    return [
        (("R",) + dp[j], ("L",) + dp[j], ctx.bang_of(contents[j]))
        for j in range(len(contents))
    ]


# --------------------------------------------------------------------------- #
# stream splitting (explicit copy-routing, with overflow log)
# --------------------------------------------------------------------------- #


class _SplitOracle(ComultOracle):
    """Stream duplication that records width overflows before refusing."""

    def __init__(self, bg: BangGame, log: OverflowLog, label: str) -> None:
        super().__init__(bg)
        self._log = log
        self._label = label

    def _reply(self, state, move):
        src_pos, dst_pos, claims, _ = state
        if self.game.polarity(move) == OPPONENT:
            tag, inner = move
            if tag == "R":
                side, (i, _m) = inner
                if (side, i) not in claims and len(claims) >= self.bg.copies:
                    if self.pair.step(dst_pos, inner) is not None:
                        self._log.record(
                            "width",
                            f"{self._label}: the two consumers together need more "
                            f"than {self.bg.copies} copies of a shared stream",
                        )
        return super()._reply(state, move)


def _split(ctx: DenoteContext, bg: BangGame, label: str) -> StrategyMorphism:
    """One stream into two, claiming source copies in opening order."""
    game = hom_game(bg, tensor(bg, bg))
    strat = Strategy(
        game,
        oracle_factory=lambda: _SplitOracle(bg, ctx.log, label),
        name="split",
    )
    return StrategyMorphism(bg, tensor(bg, bg), strat)


def _dup_row(ctx: DenoteContext, types: Sequence[Type], label: str) -> StrategyMorphism:
    """A whole row into two rows, splitting every stream."""
    row = ctx.row_of(types)
    acc = identity(ctx.unit)
    for t in types:
        acc = tensor_morphism(acc, _split(ctx, ctx.bang_of(t), label))
    # acc : row -> row-shaped nest whose entry j holds a (stream, stream) pair
    paths = _row_paths(len(types))
    legs: List[Tuple[Path, Path, Game]] = []
    for j, t in enumerate(types):
        bg = ctx.bang_of(t)
        legs.append((paths[j] + ("L",), ("L",) + paths[j], bg))
        legs.append((paths[j] + ("R",), ("R",) + paths[j], bg))
    reshape = _rewire(acc.dst, tensor(row, row), legs, name="dup-reshape")
    return mcompose(acc, reshape)


# --------------------------------------------------------------------------- #
# replay (copy-routing promotion of a stateful arrow)
# --------------------------------------------------------------------------- #


class _ReplayOracle(PlayOracle):
    """Run a stateful arrow once per demanded copy of its result.

    The arrow's source must be a tensor of replicated streams.  A fresh
    instance of the arrow starts for every copy of the result the
    environment opens; instance 0 additionally owns the shared (left)
    half of the destination.  Every Player move is attributed to the
    instance that received the preceding Opponent move.  Instances
    claim copies of the source streams on first use, in global opening
    order; an instance that would need more copies than a stream's
    width is refused after recording the overflow.
    """

    def __init__(self, f: StrategyMorphism, bg: BangGame,
                 log: OverflowLog, label: str) -> None:
        self.bg = bg
        self.log = log
        self.label = label
        self.game = hom_game(f.src, tensor(f.dst.left, bg))
        self.inner = f.strat.oracle()
        self.leaf_width: Dict[Path, int] = {}
        for path, leaf in _leaves(f.src):
            if isinstance(leaf, BangGame):
                self.leaf_width[path] = leaf.copies
            elif leaf.enabled(leaf.root):
                raise DenoteError("replay needs every input to be a replicated stream")

    def start(self):
        claims: Tuple[Tuple[Path, Tuple[Tuple[int, int], ...]], ...] = tuple(
            (p, ()) for p in sorted(self.leaf_width)
        )
        return ((), claims, None)

    @staticmethod
    def _claims_get(claims, path):
        for p, entry in claims:
            if p == path:
                return entry
        return None

    @staticmethod
    def _claims_set(claims, path, entry):
        return tuple((p, entry if p == path else e) for p, e in claims)

    def _locate(self, sm: Any) -> Optional[Tuple[Path, Tuple[int, Any]]]:
        path: Path = ()
        cur = sm
        while path not in self.leaf_width:
            if not (isinstance(cur, tuple) and len(cur) == 2 and cur[0] in ("L", "R")):
                return None
            path = path + (cur[0],)
            cur = cur[1]
        if not (isinstance(cur, tuple) and len(cur) == 2 and isinstance(cur[0], int)):
            return None
        return path, cur

    def step(self, state, move):
        insts, claims, last = state
        pol = self.game.polarity(move)
        tag, inner = move
        if tag == "R":
            side, payload = inner
            if side == "L":
                inst = 0
                translated = ("R", ("L", payload))
            else:
                inst, am = payload
                translated = ("R", ("R", am))
            if pol == PLAYER and inst != last:
                return None
        else:
            loc = self._locate(inner)
            if loc is None:
                return None
            path, (i_real, bm) = loc
            entry = self._claims_get(claims, path)
            if pol == OPPONENT:
                if i_real >= len(entry):
                    return None
                inst, virt = entry[i_real]
            else:
                if last is None:
                    return None
                if i_real < len(entry):
                    inst, virt = entry[i_real]
                    if inst != last:
                        return None
                elif i_real == len(entry):
                    inst = last
                    virt = sum(1 for owner, _ in entry if owner == last)
                    if virt >= self.leaf_width[path]:
                        self.log.record(
                            "width",
                            f"{self.label}: one replay instance needs more than "
                            f"{self.leaf_width[path]} copies of an input stream",
                        )
                        return None
                    claims = self._claims_set(claims, path, entry + ((inst, virt),))
                else:
                    return None
            translated = ("L", wrap_port(path, (virt, bm)))
        if inst > len(insts):
            return None
        if inst == len(insts):
            insts = insts + (self.inner.start(),)
        nxt = self.inner.step(insts[inst], translated)
        if nxt is None:
            return None
        insts = insts[:inst] + (nxt,) + insts[inst + 1:]
        return (insts, claims, inst)

    def accepting(self, state) -> bool:
        insts, _claims, _last = state
        return all(self.inner.accepting(s) for s in insts)


def _replay(ctx: DenoteContext, f: StrategyMorphism, label: str) -> StrategyMorphism:
    """f : S -> Y (x) A  becomes  S -> Y (x) stream(A), one run per copy."""
    if not isinstance(f.dst, TensorGame):
        raise DenoteError("replay expects a (shared, result) destination")
    bg = bang(f.dst.right, ctx.copies)
    dst = tensor(f.dst.left, bg)
    strat = Strategy(
        hom_game(f.src, dst),
        oracle_factory=lambda: _ReplayOracle(f, bg, ctx.log, label),
        name=f"replay({f.name})",
    )
    return StrategyMorphism(f.src, dst, strat)


# --------------------------------------------------------------------------- #
# branching oracles
# --------------------------------------------------------------------------- #


class _ConditionalOracle(PlayOracle):
    """Demand-driven two-way branch over a boolean test factor.

    The first demand anywhere in the interface forces the test
    question; its answer selects which branch strategy serves that
    demand and the whole remainder of the play.
    """

    _IDLE, _PENDING, _ASKED = 0, 1, 2

    def __init__(self, game: Game, then_strat: Strategy, else_strat: Strategy) -> None:
        self.game = game
        self.oracles = (then_strat.oracle(), else_strat.oracle())

    def start(self):
        return (self._IDLE, None, None, None)  # mode, which, branch state, pending

    @staticmethod
    def _to_branch(move: Any) -> Optional[Any]:
        tag, inner = move
        if tag == "R":
            return move
        side, sm = inner
        if side == "R":
            return ("L", sm)
        return None

    def step(self, state, move):
        mode, which, bstate, pending = state
        if mode == self._IDLE:
            if self.game.polarity(move) != OPPONENT:
                return None
            return (self._PENDING, None, None, move)
        if mode == self._PENDING:
            if move != ("L", ("L", "q")):
                return None
            return (self._ASKED, None, None, pending)
        if mode == self._ASKED:
            if move == ("L", ("L", "tt")):
                which = 0
            elif move == ("L", ("L", "ff")):
                which = 1
            else:
                return None
            oracle = self.oracles[which]
            first = self._to_branch(pending)
            bstate = None if first is None else oracle.step(oracle.start(), first)
            if bstate is None:
                return None
            return (3 + which, which, bstate, None)
        translated = self._to_branch(move)
        if translated is None:
            return None
        nxt = self.oracles[which].step(bstate, translated)
        if nxt is None:
            return None
        return (mode, which, nxt, None)

    def accepting(self, state) -> bool:
        mode, which, bstate, _pending = state
        if mode == self._IDLE:
            return True
        if mode in (self._PENDING, self._ASKED):
            return False
        return self.oracles[which].accepting(bstate)


class _PairOracle(PlayOracle):
    """Tag-selected union of two strategies sharing one source.

    A move inside a component of the pair commits to that component's
    strategy; every move before the commitment must be supported by
    both strategies, so effects ahead of the selection cannot diverge.
    """

    def __init__(self, game: Game, first: Strategy, second: Strategy) -> None:
        self.game = game
        self.oracles = (first.oracle(), second.oracle())

    def start(self):
        return ((self.oracles[0].start(), self.oracles[1].start()), None)

    @staticmethod
    def _component(move: Any) -> Tuple[Optional[int], Any]:
        tag, inner = move
        if tag == "R" and inner[0] == "R":
            side, m = inner[1]
            return (0 if side == "L" else 1), ("R", ("R", m))
        return None, move

    def step(self, state, move):
        states, committed = state
        which, translated = self._component(move)
        if committed is not None:
            if which is not None and which != committed:
                return None
            nxt = self.oracles[committed].step(states[committed], translated)
            if nxt is None:
                return None
            pair = (nxt, states[1]) if committed == 0 else (states[0], nxt)
            return (pair, committed)
        if which is not None:
            nxt = self.oracles[which].step(states[which], translated)
            if nxt is None:
                return None
            pair = (nxt, states[1]) if which == 0 else (states[0], nxt)
            return (pair, which)
        n0 = self.oracles[0].step(states[0], move)
        n1 = self.oracles[1].step(states[1], move)
        if n0 is None or n1 is None:
            return None
        return ((n0, n1), None)

    def accepting(self, state) -> bool:
        states, committed = state
        if committed is not None:
            return self.oracles[committed].accepting(states[committed])
        return all(o.accepting(s) for o, s in zip(self.oracles, states))


# --------------------------------------------------------------------------- #
# the clause-per-rule interpreter
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class _Frame:
    """Precomputed shapes shared by the clauses of one judgment."""

    ctx: DenoteContext
    gamma: Context
    delta: Context
    gamma_types: Tuple[Type, ...]
    contents: Tuple[Type, ...]
    row_gamma: Game
    row_delta: Game
    src: Game
    gp: Tuple[Path, ...]
    dp: Tuple[Path, ...]


def _frame(ctx: DenoteContext, gamma: Context, delta: Context) -> _Frame:
    for name, t in gamma:
        if isinstance(t, RefType):
            raise DenoteError(
                f"variable {name!r} has a reference type; only store entries "
                "may carry references in the interpretation"
            )
    gamma_types = tuple(t for _, t in gamma)
    contents = tuple(t.content for _, t in delta)
    row_gamma = ctx.row_of(gamma_types)
    row_delta = ctx.row_of(contents)
    return _Frame(
        ctx=ctx,
        gamma=gamma,
        delta=delta,
        gamma_types=gamma_types,
        contents=contents,
        row_gamma=row_gamma,
        row_delta=row_delta,
        src=tensor(row_gamma, row_delta),
        gp=tuple(_row_paths(len(gamma_types))),
        dp=tuple(_row_paths(len(contents))),
    )


def _dst(fr: _Frame, result_game: Game) -> Game:
    return tensor(fr.row_delta, result_game)


def _dup_context(fr: _Frame, gamma_only: bool, label: str) -> StrategyMorphism:
    """src -> row(gamma) (x) src  or  src -> src (x) src."""
    ctx = fr.ctx
    if gamma_only:
        lifted = tensor_morphism(
            _dup_row(ctx, fr.gamma_types, label), identity(fr.row_delta)
        )
        dst = tensor(fr.row_gamma, fr.src)
        legs: List[Tuple[Path, Path, Game]] = []
        for i, t in enumerate(fr.gamma_types):
            bg = ctx.bang_of(t)
            legs.append((("L", "L") + fr.gp[i], ("L",) + fr.gp[i], bg))
            legs.append((("L", "R") + fr.gp[i], ("R", "L") + fr.gp[i], bg))
        for j, t in enumerate(fr.contents):
            legs.append((("R",) + fr.dp[j], ("R", "R") + fr.dp[j], ctx.bang_of(t)))
        return mcompose(lifted, _rewire(lifted.dst, dst, legs, name="dup-shared"))
    lifted = tensor_morphism(
        _dup_row(ctx, fr.gamma_types, label), _dup_row(ctx, fr.contents, label)
    )
    dst = tensor(fr.src, fr.src)
    legs = []
    for i, t in enumerate(fr.gamma_types):
        bg = ctx.bang_of(t)
        legs.append((("L", "L") + fr.gp[i], ("L", "L") + fr.gp[i], bg))
        legs.append((("L", "R") + fr.gp[i], ("R", "L") + fr.gp[i], bg))
    for j, t in enumerate(fr.contents):
        bg = ctx.bang_of(t)
        legs.append((("R", "L") + fr.dp[j], ("L", "R") + fr.dp[j], bg))
        legs.append((("R", "R") + fr.dp[j], ("R", "R") + fr.dp[j], bg))
    return mcompose(lifted, _rewire(lifted.dst, dst, legs, name="dup-all"))


def _constant_gadget(ctx: DenoteContext, term: Term) -> Tuple[StrategyMorphism, Type]:
    """unit -> ground game, answering the constant to every question."""
    if isinstance(term, BoolLit):
        game = ctx.game_of(BoolType())
        answer = "tt" if term.value else "ff"
        plays = [(), (("R", "q"), ("R", answer))]
        return morphism_from_plays(ctx.unit, game, plays, name="const"), BoolType()
    assert isinstance(term, NatLit)
    if term.value > ctx.nat_max:
        raise DenoteError(
            f"literal {term.value} exceeds the numeric bound {ctx.nat_max}"
        )
    game = ctx.game_of(NatType())
    plays = [(), (("R", "q"), ("R", f"a{term.value}"))]
    return morphism_from_plays(ctx.unit, game, plays, name="const"), NatType()


def _zero_gadget(ctx: DenoteContext) -> StrategyMorphism:
    """number game -> boolean game, answering whether the number is zero."""
    src = ctx.game_of(NatType())
    dst = ctx.game_of(BoolType())
    plays: List[Moves] = [(), (("R", "q"), ("L", "q"))]
    for n in range(ctx.nat_max + 1):
        plays.append(
            (("R", "q"), ("L", "q"), ("L", f"a{n}"), ("R", "tt" if n == 0 else "ff"))
        )
    return morphism_from_plays(src, dst, plays, name="is-zero")


def _lookup(pairs: Context, name: str) -> Optional[Tuple[int, Type]]:
    for index, (entry, t) in enumerate(pairs):
        if entry == name:
            return index, t
    return None


def _interp(ctx: DenoteContext, gamma: Context, delta: Context,
            term: Term) -> Tuple[StrategyMorphism, Type]:
    fr = _frame(ctx, gamma, delta)

    # ---- constants ----
    if isinstance(term, Skip):
        w = _rewire(fr.src, _dst(fr, ctx.unit), _delta_passthrough(ctx, fr.contents),
                    name="skip")
        return w, UnitType()
    if isinstance(term, (BoolLit, NatLit)):
        gadget, t = _constant_gadget(ctx, term)
        w = _rewire(fr.src, tensor(fr.row_delta, ctx.unit),
                    _delta_passthrough(ctx, fr.contents), name="const-wires")
        return mcompose(w, tensor_morphism(identity(fr.row_delta), gadget)), t

    # ---- variables ----
    if isinstance(term, Var):
        hit = _lookup(gamma, term.name)
        if hit is None:
            if _lookup(delta, term.name) is not None:
                raise DenoteError(
                    f"store name {term.name!r} is not a first-class value "
                    "in the interpretation"
                )
            raise DenoteError(f"unbound identifier {term.name!r}")
        i, t = hit
        bg = ctx.bang_of(t)
        legs = _delta_passthrough(ctx, fr.contents)
        legs.append((("L",) + fr.gp[i], ("R",), bg))
        w = _rewire(fr.src, tensor(fr.row_delta, bg), legs, name="var")
        return mcompose(w, tensor_morphism(identity(fr.row_delta), dereliction(bg))), t

    # ---- store read:  split the stream, consult one copy ----
    if isinstance(term, Deref):
        hit = _lookup(delta, term.name)
        if hit is None:
            raise DenoteError(f"unknown cell {term.name!r} in a read")
        j, rt = hit
        content = rt.content
        bg = ctx.bang_of(content)
        drop_gamma = _rewire(
            fr.src, fr.row_delta,
            [(("R",) + fr.dp[j2], fr.dp[j2], ctx.bang_of(t))
             for j2, t in enumerate(fr.contents)],
            name="read-focus",
        )
        acc = identity(ctx.unit)
        for j2, t in enumerate(fr.contents):
            leaf = (_split(ctx, ctx.bang_of(t), f"read of {term.name}")
                    if j2 == j else identity(ctx.bang_of(t)))
            acc = tensor_morphism(acc, leaf)
        legs = []
        for j2, t in enumerate(fr.contents):
            if j2 == j:
                legs.append((fr.dp[j2] + ("L",), ("L",) + fr.dp[j2], bg))
                legs.append((fr.dp[j2] + ("R",), ("R",), bg))
            else:
                legs.append((fr.dp[j2], ("L",) + fr.dp[j2], ctx.bang_of(t)))
        reshape = _rewire(acc.dst, tensor(fr.row_delta, bg), legs, name="read-reshape")
        deref = tensor_morphism(identity(fr.row_delta), dereliction(bg))
        return mcompose(drop_gamma, acc, reshape, deref), content

    # ---- store write:  retire the old stream, emit the replayed value ----
    if isinstance(term, Assign):
        hit = _lookup(delta, term.name)
        if hit is None:
            raise DenoteError(f"unknown cell {term.name!r} in a write")
        j, rt = hit
        f_value, vt = _interp(ctx, gamma, delta, term.value)
        replayed = _replay(ctx, f_value, f"write to {term.name}")
        bg = ctx.bang_of(vt)
        legs = []
        for j2, t in enumerate(fr.contents):
            if j2 != j:
                legs.append((("L",) + fr.dp[j2], ("L",) + fr.dp[j2], ctx.bang_of(t)))
        legs.append((("R",), ("L",) + fr.dp[j], bg))
        w = _rewire(replayed.dst, _dst(fr, ctx.unit), legs, name="write")
        return mcompose(replayed, w), UnitType()

    # ---- sequencing is a scoped cell with an unused binder ----
    if isinstance(term, Seq):
        avoid = free_names(term) | {n for n, _ in gamma} | {n for n, _ in delta}
        scratch = fresh_name("_seq", avoid)
        return _interp(ctx, gamma, delta, New(scratch, term.first, term.second))

    # ---- scoped cell:  run the body downstream, then close the loop ----
    if isinstance(term, New):
        f_init, init_t = _interp(ctx, gamma, delta, term.init)
        replayed = _replay(ctx, f_init, f"cell {term.name}")
        bg = ctx.bang_of(init_t)
        delta2 = delta + ((term.name, RefType(init_t)),)
        f_body, body_t = _interp(ctx, gamma, delta2, term.body)
        result = ctx.game_of(body_t)

        loop_src = tensor(bg, fr.src)
        drop_loop = _rewire(
            loop_src, fr.src,
            [(("R", "L") + fr.gp[i], ("L",) + fr.gp[i], ctx.bang_of(t))
             for i, t in enumerate(fr.gamma_types)]
            + [(("R", "R") + fr.dp[j], ("R",) + fr.dp[j], ctx.bang_of(t))
               for j, t in enumerate(fr.contents)],
            name="loop-in",
        )
        dup = _dup_context(fr, gamma_only=True, label=f"cell {term.name}")
        seeded = tensor_morphism(identity(fr.row_gamma), replayed)
        legs = [
            (("L", "L") + fr.dp[j], ("R", "L") + fr.dp[j], ctx.bang_of(t))
            for j, t in enumerate(fr.contents)
        ]
        legs.append((("L", "R"), ("L",), bg))
        legs.append((("R",), ("R", "R"), result))
        out = _rewire(f_body.dst, tensor(bg, _dst(fr, result)), legs, name="loop-out")
        body = mcompose(drop_loop, dup, seeded, f_body, out)
        return trace(body), body_t

    # ---- arithmetic observation ----
    if isinstance(term, Zero):
        f_arg, _ = _interp(ctx, gamma, delta, term.arg)
        step = tensor_morphism(identity(fr.row_delta), _zero_gadget(ctx))
        return mcompose(f_arg, step), BoolType()

    # ---- conditional:  any demand forces the test first ----
    if isinstance(term, If):
        f_cond, _ = _interp(ctx, gamma, delta, term.cond)
        f_then, t_then = _interp(ctx, gamma, delta, term.then_branch)
        f_else, _t_else = _interp(ctx, gamma, delta, term.else_branch)
        result = ctx.game_of(t_then)
        dup = _dup_context(fr, gamma_only=True, label="conditional")
        run_cond = tensor_morphism(identity(fr.row_gamma), f_cond)
        boolg = ctx.game_of(BoolType())
        legs = [(("R", "R"), ("L",), boolg)]
        for i, t in enumerate(fr.gamma_types):
            legs.append((("L",) + fr.gp[i], ("R", "L") + fr.gp[i], ctx.bang_of(t)))
        for j, t in enumerate(fr.contents):
            legs.append((("R", "L") + fr.dp[j], ("R", "R") + fr.dp[j], ctx.bang_of(t)))
        reshape = _rewire(run_cond.dst, tensor(boolg, fr.src), legs, name="test-first")
        branch_game = hom_game(tensor(boolg, fr.src), _dst(fr, result))
        strat = Strategy(
            branch_game,
            oracle_factory=lambda: _ConditionalOracle(
                branch_game, f_then.strat, f_else.strat
            ),
            name="conditional",
        )
        cond = StrategyMorphism(tensor(boolg, fr.src), _dst(fr, result), strat)
        return mcompose(dup, run_cond, reshape, cond), t_then

    # ---- pairing and projection ----
    if isinstance(term, Pair):
        f1, t1 = _interp(ctx, gamma, delta, term.first)
        f2, t2 = _interp(ctx, gamma, delta, term.second)
        prod = ctx.game_of(ProdType(t1, t2))
        game = hom_game(fr.src, _dst(fr, prod))
        strat = Strategy(
            game,
            oracle_factory=lambda: _PairOracle(game, f1.strat, f2.strat),
            name="pairing",
        )
        return (StrategyMorphism(fr.src, _dst(fr, prod), strat), ProdType(t1, t2))
    if isinstance(term, Proj):
        f_arg, pt = _interp(ctx, gamma, delta, term.arg)
        if not isinstance(pt, ProdType):
            raise DenoteError("projection from a non-pair")
        side = "L" if term.index == 1 else "R"
        t = pt.left if term.index == 1 else pt.right
        component = ctx.game_of(t)
        pick = _rewire(ctx.game_of(pt), component, [((side,), (), component)],
                       name="project")
        return mcompose(f_arg, tensor_morphism(identity(fr.row_delta), pick)), t

    # ---- abstraction:  rotate the argument stream into the arrow ----
    if isinstance(term, Lam):
        if isinstance(term.annot, RefType):
            raise DenoteError("argument annotations must be value types")
        gamma2 = gamma + ((term.param, term.annot),)
        f_body, body_t = _interp(ctx, gamma2, delta, term.body)
        bg = ctx.bang_of(term.annot)
        result = ctx.game_of(body_t)
        arrow_t = ArrowType(term.annot, body_t)
        arrow = ctx.game_of(arrow_t)
        legs = [(("L",), ("L", "R"), bg)]
        for i, t in enumerate(fr.gamma_types):
            legs.append((("R", "L") + fr.gp[i], ("L", "L") + fr.gp[i], ctx.bang_of(t)))
        for j, t in enumerate(fr.contents):
            legs.append((("R", "R") + fr.dp[j], ("R",) + fr.dp[j], ctx.bang_of(t)))
        align = _rewire(tensor(bg, fr.src), f_body.src, legs, name="bind-arg")
        curried = curry(mcompose(align, f_body))
        legs = [(("L",), ("R", "L"), dual(bg))]
        legs.append((("R", "R"), ("R", "R"), result))
        for j, t in enumerate(fr.contents):
            legs.append((("R", "L") + fr.dp[j], ("L",) + fr.dp[j], ctx.bang_of(t)))
        pack = _rewire(curried.dst, _dst(fr, arrow), legs, name="pack-arrow")
        return mcompose(curried, pack), arrow_t

    # ---- application:  replayed argument meets the arrow ----
    if isinstance(term, App):
        f_fn, fn_t = _interp(ctx, gamma, delta, term.fn)
        if not isinstance(fn_t, ArrowType):
            raise DenoteError("application of a non-function")
        f_arg, _ = _interp(ctx, gamma, delta, term.arg)
        replayed = _replay(ctx, f_arg, "argument")
        bg = ctx.bang_of(fn_t.arg)
        result = ctx.game_of(fn_t.res)
        dup = _dup_context(fr, gamma_only=False, label="application")
        side = tensor_morphism(f_fn, replayed)
        dst = _dst(fr, result)
        game = hom_game(side.dst, dst)
        pairs = [
            PortPair(("L", "L", "L") + fr.dp[j], ctx.bang_of(t),
                     ("R", "L") + fr.dp[j], ctx.bang_of(t))
            for j, t in enumerate(fr.contents)
            if ctx.bang_of(t).enabled(ctx.bang_of(t).root)
        ]
        if result.enabled(result.root):
            pairs.append(PortPair(("L", "L", "R", "R"), result, ("R", "R"), result))
        if bg.enabled(bg.root):
            pairs.append(PortPair(("L", "L", "R", "L"), dual(bg), ("L", "R", "R"), bg))
        feed = StrategyMorphism(
            side.dst, dst, wiring_strategy(game, pairs, name="apply")
        )
        return mcompose(dup, side, feed), fn_t.res

    raise DenoteError(f"no interpretation for term {term_to_text(term)!r}")


# --------------------------------------------------------------------------- #
# public entry points
# --------------------------------------------------------------------------- #


def denote(judgment: Judgment, copies: int = 2, max_len: int = 12,
           nat_max: int = 8, log: Optional[OverflowLog] = None) -> StrategyMorphism:
    """Interpret a typed judgment as a strategy between context rows.

    ``copies`` bounds how often any one stream may be consulted and
    ``max_len`` is the play-length bound callers should use when
    materialising or comparing the result.  Pass a shared
    :class:`OverflowLog` to collect width overflows; events appear as
    plays are materialised, so enumerate before inspecting the log.
    """
    ctx = DenoteContext(copies=copies, max_len=max_len, nat_max=nat_max, log=log)
    morphism, t = _interp(ctx, judgment.gamma, judgment.delta, judgment.term)
    if t != judgment.type:
        raise DenoteError(
            f"interpretation produced {type_to_text(t)} for a judgment typed "
            f"{type_to_text(judgment.type)}"
        )
    return morphism


def result_plays(morphism: StrategyMorphism, max_len: Optional[int] = None) -> FrozenSet[Moves]:
    """Plays of a closed judgment's denotation, in result-game moves.

    Only meaningful when both context rows are empty, so that every
    move lives in the result component.
    """
    out = set()
    for play in morphism.plays(max_len):
        stripped = []
        for move in play:
            if move[0] != "R" or move[1][0] != "R":
                raise DenoteError("result plays need a closed judgment")
            stripped.append(move[1][1])
        out.add(tuple(stripped))
    return frozenset(out)


def length_probe(morphism: StrategyMorphism, max_len: int) -> bool:
    """True when lengthening the bound by one round changes the play set,
    i.e. the comparison at ``max_len`` truncated genuine behaviour."""
    return morphism.plays(max_len) != morphism.plays(max_len + 2)
