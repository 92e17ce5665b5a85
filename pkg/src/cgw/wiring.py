"""Oracle building blocks for structural strategies.

Structural strategies (identity, symmetry, associativity, feedback
collapse, copy-index plumbing) all follow one pattern: Opponent moves
freely, and Player's reply is forced -- the same underlying move replayed
at a paired location of the game.  :class:`PortWiringOracle` implements
that pattern once, parameterised by *ports* (tag paths addressing where a
component game sits inside the composite's move identifiers) and *pairs*
of ports kept in lockstep.

The module also provides :class:`RelabelOracle` (transport a strategy
along a move bijection) and :class:`InterleaveOracle` (the side-by-side
tensor of two strategies), both lazy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from cgw.games import Game, OPPONENT
from cgw.strategies import PlayOracle, Strategy


def wrap_port(port: Tuple[str, ...], move: Any) -> Any:
    """Embed a component move at the addressed location: tags applied
    outermost-first, so ('R','L') wraps m into ('R', ('L', m))."""
    for tag in reversed(port):
        move = (tag, move)
    return move


def unwrap_port(move: Any, port: Tuple[str, ...]) -> Optional[Any]:
    """Inverse of :func:`wrap_port`; None when the move sits elsewhere."""
    for tag in port:
        if not (isinstance(move, tuple) and len(move) == 2 and move[0] == tag):
            return None
        move = move[1]
    return move


@dataclass(frozen=True)
class PortPair:
    """Two locations of a composite game mirrored move-for-move.

    Each side tracks its own position in its component game.  ``a_to_b``
    and ``b_to_a`` translate component moves across the pair (identity
    when omitted); returning None rejects the move.
    """

    port_a: Tuple[str, ...]
    game_a: Game
    port_b: Tuple[str, ...]
    game_b: Game
    a_to_b: Optional[Callable[[Any], Optional[Any]]] = None
    b_to_a: Optional[Callable[[Any], Optional[Any]]] = None

    def translate(self, from_a: bool, move: Any) -> Optional[Any]:
        fn = self.a_to_b if from_a else self.b_to_a
        return move if fn is None else fn(move)


class PortWiringOracle(PlayOracle):
    """Forced-reply strategy over paired component locations.

    State: (per-port positions, pending forced reply).  An Opponent move
    at one port of a pair advances that port and forces the translated
    move at the partner port as Player's next move.
    """

    def __init__(self, game: Game, pairs: List[PortPair]) -> None:
        self.game = game
        self.pairs = pairs
        # flat port table: (port, component game, pair index, is_side_a)
        self._ports: List[Tuple[Tuple[str, ...], Game, int, bool]] = []
        for idx, pair in enumerate(pairs):
            self._ports.append((pair.port_a, pair.game_a, idx, True))
            self._ports.append((pair.port_b, pair.game_b, idx, False))

    def start(self):
        return (tuple(game.root for _, game, _, _ in self._ports), None)

    def _port_of(self, move: Any) -> Optional[Tuple[int, Any]]:
        for slot, (port, _game, _idx, _is_a) in enumerate(self._ports):
            base = unwrap_port(move, port)
            if base is not None:
                return slot, base
        return None

    def step(self, state, move):
        positions, pending = state
        if pending is not None:
            reply, slot, base = pending
            if move != reply:
                return None
            game = self._ports[slot][1]
            dst = game.step(positions[slot], base)
            if dst is None:
                return None
            new_positions = positions[:slot] + (dst,) + positions[slot + 1 :]
            return (new_positions, None)
        if self.game.polarity(move) != OPPONENT:
            return None
        hit = self._port_of(move)
        if hit is None:
            return None
        slot, base = hit
        port, game, pair_idx, is_a = self._ports[slot]
        dst = game.step(positions[slot], base)
        if dst is None:
            return None
        pair = self.pairs[pair_idx]
        reply_base = pair.translate(is_a, base)
        if reply_base is None:
            return None
        partner = slot + 1 if is_a else slot - 1
        partner_port, partner_game, _, _ = self._ports[partner]
        if partner_game.step(positions[partner], reply_base) is None:
            return None
        new_positions = positions[:slot] + (dst,) + positions[slot + 1 :]
        reply = wrap_port(partner_port, reply_base)
        return (new_positions, (reply, partner, reply_base))

    def accepting(self, state) -> bool:
        return state[1] is None


def wiring_strategy(game: Game, pairs: List[PortPair], name: str = "") -> Strategy:
    """A lazy strategy whose oracle mirrors moves across the given pairs."""
    return Strategy(game, oracle_factory=lambda: PortWiringOracle(game, pairs), name=name)


class RelabelOracle(PlayOracle):
    """A strategy transported along a move bijection, given the map from
    new moves back to the original ones."""

    def __init__(self, inner: PlayOracle, to_old: Callable[[Any], Any]) -> None:
        self.inner = inner
        self.to_old = to_old

    def start(self):
        return self.inner.start()

    def step(self, state, move):
        old = self.to_old(move)
        if old is None:
            return None
        return self.inner.step(state, old)

    def accepting(self, state) -> bool:
        return self.inner.accepting(state)


def relabel_strategy(
    sigma: Strategy,
    new_game: Game,
    to_old: Callable[[Any], Any],
    name: str = "",
) -> Strategy:
    """Lazily transport a strategy onto a new game along a move bijection
    (supplied in the new -> old direction)."""
    return Strategy(
        new_game,
        oracle_factory=lambda: RelabelOracle(sigma.oracle(), to_old),
        name=name or f"relabel({sigma.name})",
    )


class InterleaveOracle(PlayOracle):
    """Two strategies side by side: any move is dispatched to its component
    (via ``classify``), and global Opponent/Player alternation is enforced
    on top of each component's own discipline."""

    def __init__(
        self,
        game: Game,
        left: PlayOracle,
        right: PlayOracle,
        classify: Callable[[Any], Tuple[str, Any]],
    ) -> None:
        self.game = game
        self.left = left
        self.right = right
        self.classify = classify

    def start(self):
        return (self.left.start(), self.right.start(), 0)

    def step(self, state, move):
        sl, sr, parity = state
        expected = OPPONENT if parity == 0 else -OPPONENT
        if self.game.polarity(move) != expected:
            return None
        side, component_move = self.classify(move)
        if side == "L":
            sl = self.left.step(sl, component_move)
            if sl is None:
                return None
        else:
            sr = self.right.step(sr, component_move)
            if sr is None:
                return None
        return (sl, sr, 1 - parity)

    def accepting(self, state) -> bool:
        sl, sr, parity = state
        return parity == 0 and self.left.accepting(sl) and self.right.accepting(sr)
