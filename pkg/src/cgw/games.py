"""Finite two-player graph games with question/answer resource payoffs.

A game is a finite rooted acyclic graph.  Edges are *moves*, each owned by
one of two parties: Opponent (polarity ``-1``) or Player (polarity ``+1``).
A *path* is any walk along edges from any position; a *play* is a path
starting at the root.

Every path carries a payoff: a pair of natural numbers ``(plus, minus)``
counting, respectively, the pending questions opened by Player moves and
by Opponent moves that the path leaves unanswered.  Payoffs must satisfy
four laws (checked by :func:`validate_payoff`):

* compatibility -- a single Opponent move has ``plus == 0``, a single
  Player move has ``minus == 0``;
* suffix bound -- a suffix never owes more than the whole path:
  ``payoff(t) <= payoff(s + t)`` componentwise;
* splitting bound -- a path never owes more than its parts combined:
  ``payoff(s + t) <= payoff(s) + payoff(t)``;
* empty paths owe nothing: ``payoff(empty at x) == (0, 0)``.

By default payoffs are derived from per-edge ask/answer counts with a
clamped pending counter, which satisfies all four laws by construction;
explicit per-path overrides can deviate from the default (including
breaking the laws, which is occasionally the point of an example).

Composite games built by :func:`dual`, :func:`tensor`, :func:`neg`,
:func:`product` and :func:`loli` keep their positions and transition
tables lazy, so large composites cost nothing until walked.

Identifier conventions
----------------------
Base games use caller-chosen hashable move identifiers, unique per edge.
Composites wrap component moves in tagged tuples:

* ``tensor``/``product``/``loli``: ``('L', m)`` and ``('R', m)``;
* replication (see :mod:`cgw.exponential`): ``(i, m)`` with a copy index.

The payoff of a path in a composite depends only on the move sequence and
the start position, never on which concrete edges realised it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from cgw.util import canon_key, sorted_ids

Pair = Tuple[int, int]

OPPONENT = -1
PLAYER = +1


class GameError(ValueError):
    """Raised for malformed games, edges, paths or payoff tables."""


def add_pair(a: Pair, b: Pair) -> Pair:
    return (a[0] + b[0], a[1] + b[1])


def project_side(moves: Iterable[Any], side: str) -> Tuple[Any, ...]:
    """Restrict a tagged move sequence to one side, dropping the tags."""
    return tuple(m for tag, m in moves if tag == side)


def le_pair(a: Pair, b: Pair) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _check_pair(value, what: str) -> Pair:
    if (
        not isinstance(value, tuple)
        or len(value) != 2
        or not all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in value)
    ):
        raise GameError(f"{what} must be a pair of natural numbers, got {value!r}")
    return (value[0], value[1])


# --------------------------------------------------------------------------- #
# paths and edges
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Path:
    """A walk through a game: a start position and the move sequence taken."""

    source: Any
    moves: Tuple[Any, ...]

    def __len__(self) -> int:
        return len(self.moves)


@dataclass(frozen=True)
class Edge:
    """One concrete transition of a game."""

    move: Any
    src: Any
    dst: Any
    polarity: int


@dataclass(frozen=True)
class EdgeSpec:
    """Input description of one edge for :func:`build_game`.

    ``asks`` and ``answers`` feed the default pending-question counter:
    walking the edge first discharges up to ``answers`` pending questions
    per component, then opens ``asks`` new ones.
    """

    move: Any
    src: Any
    dst: Any
    polarity: int
    asks: Pair = (0, 0)
    answers: Pair = (0, 0)


# --------------------------------------------------------------------------- #
# payoffs
# --------------------------------------------------------------------------- #


class Payoff:
    """Assigns a ``(plus, minus)`` pair to every path of a game.

    ``of(source, moves)`` is only defined when ``moves`` is a path from
    ``source`` in the owning game; callers are responsible for that.
    """

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        raise NotImplementedError


@dataclass(frozen=True)
class CounterPayoff(Payoff):
    """Default payoff of base games: a clamped pending-question counter.

    Each edge carries ``asks`` and ``answers`` pairs.  Along a path the
    pending counter per component evolves as
    ``c -> max(c - answers, 0) + asks``.   Explicit overrides replace the
    computed value for selected move sequences, and ``eps`` overrides the
    (normally zero) value of empty paths at selected positions.
    """

    asks: Dict[Any, Pair]
    answers: Dict[Any, Pair]
    overrides: Dict[Tuple[Any, ...], Pair] = field(default_factory=dict)
    eps: Dict[Any, Pair] = field(default_factory=dict)

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        if not moves:
            return self.eps.get(source, (0, 0))
        hit = self.overrides.get(tuple(moves))
        if hit is not None:
            return hit
        plus = minus = 0
        for m in moves:
            ans = self.answers[m]
            ask = self.asks[m]
            plus = max(plus - ans[0], 0) + ask[0]
            minus = max(minus - ans[1], 0) + ask[1]
        return (plus, minus)

    def __hash__(self) -> int:
        return hash(
            (
                tuple(sorted(self.asks.items(), key=lambda kv: canon_key(kv[0]))),
                tuple(sorted(self.answers.items(), key=lambda kv: canon_key(kv[0]))),
                tuple(sorted(self.overrides.items(), key=lambda kv: canon_key(kv[0]))),
                tuple(sorted(self.eps.items(), key=lambda kv: canon_key(kv[0]))),
            )
        )


@dataclass(frozen=True)
class DualPayoff(Payoff):
    """Payoff of the dual game: the two components swap roles."""

    base: Payoff

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        plus, minus = self.base.of(source, moves)
        return (minus, plus)


@dataclass(frozen=True)
class TensorPayoff(Payoff):
    """Payoff of a side-by-side composite: sum of the two projections."""

    left: Payoff
    right: Payoff

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        lsrc, rsrc = source
        lmoves = tuple(m for tag, m in moves if tag == "L")
        rmoves = tuple(m for tag, m in moves if tag == "R")
        return add_pair(self.left.of(lsrc, lmoves), self.right.of(rsrc, rmoves))


@dataclass(frozen=True)
class ProductPayoff(Payoff):
    """Payoff of an either/or composite: delegate to the chosen branch."""

    left: Payoff
    right: Payoff
    left_root: Any
    right_root: Any

    def of(self, source: Any, moves: Tuple[Any, ...]) -> Pair:
        if source == PRODUCT_ROOT:
            if not moves:
                return (0, 0)
            tag = moves[0][0]
            source = ("L", self.left_root) if tag == "L" else ("R", self.right_root)
        side, inner_src = source
        stripped = []
        for tag, m in moves:
            if tag != side:
                raise GameError("path mixes the two branches of a product game")
            stripped.append(m)
        branch = self.left if side == "L" else self.right
        return branch.of(inner_src, tuple(stripped))


# --------------------------------------------------------------------------- #
# the game interface
# --------------------------------------------------------------------------- #


class Game:
    """Common interface of base and composite games.

    Concrete subclasses provide ``root``, ``moves_from(pos)``,
    ``polarity(move)`` and ``payoff``; everything else (walking paths,
    materialising positions and edges, enumeration) is derived here.
    Composites never materialise their position set unless asked.
    """

    name: str = ""
    payoff: Payoff

    # ---- abstract surface ---- #

    @property
    def root(self) -> Any:
        raise NotImplementedError

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        """Mapping move-id -> destination for edges leaving ``pos``."""
        raise NotImplementedError

    def polarity(self, move: Any) -> int:
        raise NotImplementedError

    # ---- derived helpers ---- #

    def step(self, pos: Any, move: Any) -> Optional[Any]:
        return self.moves_from(pos).get(move)

    def walk(self, source: Any, moves: Iterable[Any]) -> Optional[Any]:
        """Final position of the path, or None if the walk leaves the graph."""
        pos = source
        for m in moves:
            pos = self.moves_from(pos).get(m)
            if pos is None:
                return None
        return pos

    def is_path(self, path: Path) -> bool:
        return self.walk(path.source, path.moves) is not None

    def is_play(self, moves: Iterable[Any]) -> bool:
        return self.walk(self.root, moves) is not None

    def enabled(self, pos: Any) -> List[Tuple[Any, Any]]:
        """Edges leaving ``pos`` as (move, dst), deterministically ordered."""
        table = self.moves_from(pos)
        return [(m, table[m]) for m in sorted_ids(table)]

    @property
    def negative(self) -> bool:
        """True when every root move belongs to Opponent."""
        return all(self.polarity(m) == OPPONENT for m in self.moves_from(self.root))

    @property
    def positions(self) -> frozenset:
        """All positions reachable from the root (materialises the graph)."""
        cached = getattr(self, "_positions_cache", None)
        if cached is None:
            seen = {self.root}
            frontier = [self.root]
            while frontier:
                pos = frontier.pop()
                for dst in self.moves_from(pos).values():
                    if dst not in seen:
                        seen.add(dst)
                        frontier.append(dst)
            cached = frozenset(seen)
            self._positions_cache = cached
        return cached

    @property
    def edges(self) -> List[Edge]:
        """All edges among reachable positions, deterministically ordered."""
        out = []
        for pos in sorted_ids(self.positions):
            for move, dst in self.enabled(pos):
                out.append(Edge(move, pos, dst, self.polarity(move)))
        return out

    def payoff_of(self, path: Path) -> Pair:
        if not self.is_path(path):
            raise GameError(f"not a path of {self.name or type(self).__name__}: {path}")
        return self.payoff.of(path.source, path.moves)


# --------------------------------------------------------------------------- #
# base games
# --------------------------------------------------------------------------- #


class BaseGame(Game):
    """A game given by explicit position and edge tables."""

    def __init__(
        self,
        positions: frozenset,
        root: Any,
        steps: Dict[Any, Dict[Any, Any]],
        polarities: Dict[Any, int],
        payoff: Payoff,
        name: str = "",
    ) -> None:
        self._positions = positions
        self._root = root
        self._steps = steps
        self._polarities = polarities
        self.payoff = payoff
        self.name = name

    @property
    def root(self) -> Any:
        return self._root

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        return self._steps.get(pos, {})

    def polarity(self, move: Any) -> int:
        return self._polarities[move]

    @property
    def positions(self) -> frozenset:
        return self._positions

    def _key(self):
        return (
            self._root,
            self._positions,
            tuple(
                (pos, tuple((m, d) for m, d in sorted(self._steps.get(pos, {}).items(), key=lambda kv: canon_key(kv[0]))))
                for pos in sorted_ids(self._positions)
            ),
            tuple(sorted(self._polarities.items(), key=lambda kv: canon_key(kv[0]))),
            self.payoff,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseGame) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


def build_game(
    positions: Iterable[Any],
    root: Any,
    edges: Iterable[EdgeSpec],
    path_payoffs: Optional[Dict[Tuple[Any, ...], Pair]] = None,
    eps_payoffs: Optional[Dict[Any, Pair]] = None,
    name: str = "",
) -> BaseGame:
    """Assemble and validate a base game from explicit tables.

    Checks: no duplicate positions or move identifiers, every edge endpoint
    declared, polarities in {-1, +1}, ask/answer counts natural, the graph
    acyclic, every position reachable from the root, and every path-payoff
    override keyed by an actual path.  Payoff *values* are not checked here;
    :func:`validate_payoff` does that separately, so deliberately law-breaking
    tables can still be built.
    """
    pos_list = list(positions)
    pos_set = frozenset(pos_list)
    if len(pos_set) != len(pos_list):
        raise GameError("duplicate position identifiers")
    if root not in pos_set:
        raise GameError(f"root {root!r} is not a declared position")

    steps: Dict[Any, Dict[Any, Any]] = {}
    polarities: Dict[Any, int] = {}
    asks: Dict[Any, Pair] = {}
    answers: Dict[Any, Pair] = {}
    edge_src: Dict[Any, Any] = {}
    edge_dst: Dict[Any, Any] = {}
    for e in edges:
        if e.move in polarities:
            raise GameError(f"duplicate move identifier {e.move!r}")
        if e.src not in pos_set or e.dst not in pos_set:
            raise GameError(f"edge {e.move!r} uses undeclared positions")
        if e.polarity not in (OPPONENT, PLAYER):
            raise GameError(f"edge {e.move!r}: polarity must be -1 or +1")
        polarities[e.move] = e.polarity
        asks[e.move] = _check_pair(e.asks, f"edge {e.move!r} asks")
        answers[e.move] = _check_pair(e.answers, f"edge {e.move!r} answers")
        steps.setdefault(e.src, {})[e.move] = e.dst
        edge_src[e.move] = e.src
        edge_dst[e.move] = e.dst

    # acyclicity by depth-first search
    state: Dict[Any, int] = {}

    def visit(pos: Any) -> None:
        state[pos] = 1
        for dst in steps.get(pos, {}).values():
            mark = state.get(dst, 0)
            if mark == 1:
                raise GameError(f"cycle through position {dst!r}")
            if mark == 0:
                visit(dst)
        state[pos] = 2

    for p in pos_list:
        if state.get(p, 0) == 0:
            visit(p)

    # reachability from the root
    seen = {root}
    frontier = [root]
    while frontier:
        p = frontier.pop()
        for dst in steps.get(p, {}).values():
            if dst not in seen:
                seen.add(dst)
                frontier.append(dst)
    unreachable = pos_set - seen
    if unreachable:
        raise GameError(f"positions unreachable from root: {sorted_ids(unreachable)}")

    overrides: Dict[Tuple[Any, ...], Pair] = {}
    for moves, value in (path_payoffs or {}).items():
        moves = tuple(moves)
        if not moves:
            raise GameError("empty path override: use an eps payoff instead")
        for m in moves:
            if m not in polarities:
                raise GameError(f"payoff override uses unknown move {m!r}")
        for prev, nxt in zip(moves, moves[1:]):
            if edge_dst[prev] != edge_src[nxt]:
                raise GameError(f"payoff override {moves!r} is not a path")
        overrides[moves] = _check_pair(value, f"payoff override for {moves!r}")

    eps: Dict[Any, Pair] = {}
    for pos, value in (eps_payoffs or {}).items():
        if pos not in pos_set:
            raise GameError(f"eps payoff at unknown position {pos!r}")
        eps[pos] = _check_pair(value, f"eps payoff at {pos!r}")

    payoff = CounterPayoff(asks=asks, answers=answers, overrides=overrides, eps=eps)
    return BaseGame(pos_set, root, steps, polarities, payoff, name=name)


# --------------------------------------------------------------------------- #
# composite games
# --------------------------------------------------------------------------- #


class DualGame(Game):
    """Same graph, parties swapped, payoff components swapped."""

    def __init__(self, base: Game) -> None:
        self.base = base
        self.payoff = DualPayoff(base.payoff)
        self.name = f"dual({base.name})" if base.name else ""

    @property
    def root(self) -> Any:
        return self.base.root

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        return self.base.moves_from(pos)

    def polarity(self, move: Any) -> int:
        return -self.base.polarity(move)

    @property
    def positions(self) -> frozenset:
        return self.base.positions

    def __eq__(self, other) -> bool:
        return isinstance(other, DualGame) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("dual", self.base))


def dual(game: Game) -> Game:
    """Swap the parties.  Applying it twice returns the original object."""
    if isinstance(game, DualGame):
        return game.base
    return DualGame(game)


class TensorGame(Game):
    """Two games side by side; positions are pairs, moves are tagged."""

    def __init__(self, left: Game, right: Game) -> None:
        self.left = left
        self.right = right
        self.payoff = TensorPayoff(left.payoff, right.payoff)
        self.name = f"({left.name} * {right.name})" if left.name and right.name else ""
        self._memo: Dict[Any, Dict[Any, Any]] = {}

    @property
    def root(self) -> Any:
        return (self.left.root, self.right.root)

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        hit = self._memo.get(pos)
        if hit is not None:
            return hit
        x, y = pos
        table: Dict[Any, Any] = {}
        for m, dst in self.left.moves_from(x).items():
            table[("L", m)] = (dst, y)
        for m, dst in self.right.moves_from(y).items():
            table[("R", m)] = (x, dst)
        self._memo[pos] = table
        return table

    def polarity(self, move: Any) -> int:
        tag, m = move
        return self.left.polarity(m) if tag == "L" else self.right.polarity(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorGame) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self) -> int:
        return hash(("tensor", self.left, self.right))


def tensor(left: Game, right: Game) -> TensorGame:
    """Put two games side by side: interleave their moves, add payoffs."""
    return TensorGame(left, right)


class NegGame(Game):
    """The base game with its Player-owned root moves removed."""

    def __init__(self, base: Game) -> None:
        self.base = base
        self.payoff = base.payoff
        self.name = f"neg({base.name})" if base.name else ""
        self._root_table = {
            m: d for m, d in base.moves_from(base.root).items() if base.polarity(m) == OPPONENT
        }

    @property
    def root(self) -> Any:
        return self.base.root

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        if pos == self.base.root:
            return self._root_table
        return self.base.moves_from(pos)

    def polarity(self, move: Any) -> int:
        return self.base.polarity(move)

    def __eq__(self, other) -> bool:
        return isinstance(other, NegGame) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("neg", self.base))


def neg(game: Game) -> Game:
    """Drop Player-owned root moves (and whatever becomes unreachable).

    Returns the input object unchanged when there is nothing to drop, so
    the operation is idempotent on already-negative games.
    """
    if game.negative:
        return game
    return NegGame(game)


PRODUCT_ROOT = "&"


class ProductGame(Game):
    """Either/or combination of two negative games sharing a fresh root."""

    def __init__(self, left: Game, right: Game) -> None:
        if not left.negative or not right.negative:
            raise GameError("product requires both components to be negative games")
        self.left = left
        self.right = right
        self.payoff = ProductPayoff(left.payoff, right.payoff, left.root, right.root)
        self.name = f"({left.name} & {right.name})" if left.name and right.name else ""

    @property
    def root(self) -> Any:
        return PRODUCT_ROOT

    def _wrap(self, side: str, inner: Game, pos: Any) -> Any:
        return (side, pos)

    def moves_from(self, pos: Any) -> Dict[Any, Any]:
        if pos == PRODUCT_ROOT:
            table: Dict[Any, Any] = {}
            for m, dst in self.left.moves_from(self.left.root).items():
                table[("L", m)] = ("L", dst)
            for m, dst in self.right.moves_from(self.right.root).items():
                table[("R", m)] = ("R", dst)
            return table
        side, inner_pos = pos
        inner = self.left if side == "L" else self.right
        return {(side, m): (side, dst) for m, dst in inner.moves_from(inner_pos).items()}

    def polarity(self, move: Any) -> int:
        tag, m = move
        return self.left.polarity(m) if tag == "L" else self.right.polarity(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductGame) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self) -> int:
        return hash(("product", self.left, self.right))


def product(left: Game, right: Game) -> ProductGame:
    """Offer Opponent an exclusive choice between two negative games."""
    return ProductGame(left, right)


def loli(domain: Game, codomain: Game) -> Game:
    """The function-space game: dual of the domain beside the codomain,
    restricted to Opponent openings.  Domain moves are tagged 'L',
    codomain moves 'R'."""
    return neg(tensor(dual(domain), codomain))


def unit_game(name: str = "unit") -> BaseGame:
    """The empty game: one position, no moves."""
    return build_game(["1"], "1", [], name=name)


def game_two(name: str = "two") -> BaseGame:
    """A single silent Opponent move; losing for Player once started."""
    return build_game(
        ["2r", "2e"],
        "2r",
        [EdgeSpec("2m", "2r", "2e", OPPONENT)],
        name=name,
    )


# --------------------------------------------------------------------------- #
# enumeration and payoff validation
# --------------------------------------------------------------------------- #


def enumerate_paths(
    game: Game,
    source: Any = None,
    max_len: Optional[int] = None,
) -> Iterator[Path]:
    """Yield paths in depth-first, deterministically ordered fashion.

    With ``source=None`` enumerates from every position (materialises the
    position set); otherwise only from the given position.  Includes the
    empty path at each source.  ``max_len`` bounds the number of moves.
    """
    sources = sorted_ids(game.positions) if source is None else [source]

    def walk_from(pos: Any, prefix: Tuple[Any, ...], origin: Any) -> Iterator[Path]:
        yield Path(origin, prefix)
        if max_len is not None and len(prefix) >= max_len:
            return
        for m, dst in game.enabled(pos):
            yield from walk_from(dst, prefix + (m,), origin)

    for src in sources:
        yield from walk_from(src, (), src)


def enumerate_plays(game: Game, max_len: Optional[int] = None) -> Iterator[Path]:
    """Paths from the root only."""
    return enumerate_paths(game, source=game.root, max_len=max_len)


@dataclass(frozen=True)
class PayoffViolation:
    """One concrete failure of a payoff law."""

    law: str
    path: Path
    detail: str


@dataclass
class PayoffReport:
    """Outcome of :func:`validate_payoff`: empty ``violations`` means valid."""

    violations: List[PayoffViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def first_law_broken(self) -> Optional[str]:
        return self.violations[0].law if self.violations else None


def validate_payoff(game: Game, max_len: Optional[int] = None) -> PayoffReport:
    """Check the four payoff laws on every path (up to ``max_len`` moves).

    Exhaustive over the materialised graph, so intended for desk-scale
    games.  Returns a report carrying one witness per violation found.
    """
    violations: List[PayoffViolation] = []
    kappa = game.payoff.of

    for pos in sorted_ids(game.positions):
        value = kappa(pos, ())
        if value != (0, 0):
            violations.append(
                PayoffViolation("empty-path", Path(pos, ()), f"empty path at {pos!r} has payoff {value}")
            )

    for pos in sorted_ids(game.positions):
        for m, _dst in game.enabled(pos):
            value = kappa(pos, (m,))
            pol = game.polarity(m)
            if pol == OPPONENT and value[0] != 0:
                violations.append(
                    PayoffViolation(
                        "compatibility",
                        Path(pos, (m,)),
                        f"Opponent move {m!r} has plus-payoff {value[0]}",
                    )
                )
            if pol == PLAYER and value[1] != 0:
                violations.append(
                    PayoffViolation(
                        "compatibility",
                        Path(pos, (m,)),
                        f"Player move {m!r} has minus-payoff {value[1]}",
                    )
                )

    for path in enumerate_paths(game, max_len=max_len):
        if not path.moves:
            continue
        whole = kappa(path.source, path.moves)
        for cut in range(len(path.moves) + 1):
            head, tail = path.moves[:cut], path.moves[cut:]
            mid = game.walk(path.source, head)
            tail_value = kappa(mid, tail)
            if not le_pair(tail_value, whole):
                violations.append(
                    PayoffViolation(
                        "suffix-bound",
                        path,
                        f"suffix {tail!r} has payoff {tail_value} > whole {whole}",
                    )
                )
            combined = add_pair(kappa(path.source, head), tail_value)
            if not le_pair(whole, combined):
                violations.append(
                    PayoffViolation(
                        "splitting-bound",
                        path,
                        f"cut at {cut}: whole {whole} > parts {combined}",
                    )
                )
    return PayoffReport(violations)
