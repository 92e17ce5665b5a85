"""Reproducible corpora: seeded random games and strategies.

Everything here is deterministic given the seed; suites and tests build
their instances from these generators so failures can be replayed.
"""

from __future__ import annotations

import random
from typing import List, Optional

from cgw.games import EdgeSpec, Game, OPPONENT, PLAYER, build_game
from cgw.strategies import Strategy


def random_game(
    rng: random.Random,
    max_positions: int = 6,
    name: str = "",
    negative: bool = False,
) -> Game:
    """A small random rooted DAG game with lawful counter payoffs.

    Positions are layered 0..n-1 with edges from lower to higher index
    only; every position is reachable.  Ask/answer counts respect the
    single-move compatibility law by construction.
    """
    n = rng.randint(2, max(2, max_positions))
    positions = [f"{name}p{i}" for i in range(n)]
    edges: List[EdgeSpec] = []
    k = 0

    def make_edge(i: int, j: int, force_opponent: bool) -> EdgeSpec:
        nonlocal k
        pol = OPPONENT if force_opponent or rng.random() < 0.5 else PLAYER
        ask = rng.randint(0, 1)
        asks = (0, ask) if pol == OPPONENT else (ask, 0)
        answers = (rng.randint(0, 1), rng.randint(0, 1))
        e = EdgeSpec(f"{name}e{k}", positions[i], positions[j], pol, asks, answers)
        k += 1
        return e

    for j in range(1, n):
        i = rng.randrange(j)
        edges.append(make_edge(i, j, force_opponent=negative and i == 0))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.25:
                edges.append(make_edge(i, j, force_opponent=negative and i == 0))
    return build_game(positions, positions[0], edges, name=name or "rand")


def random_strategy(
    game: Game,
    rng: random.Random,
    density: float = 0.6,
    name: str = "rand",
) -> Strategy:
    """A valid strategy sampled by walking the game: each Opponent move is
    taken up with probability ``density`` and given one random reply."""
    plays = {()}

    def go(pos, prefix) -> None:
        for m, dst in game.enabled(pos):
            if game.polarity(m) != OPPONENT or rng.random() > density:
                continue
            replies = [(r, d2) for r, d2 in game.enabled(dst) if game.polarity(r) == PLAYER]
            if not replies:
                continue
            r, d2 = replies[rng.randrange(len(replies))]
            plays.add(prefix + (m, r))
            go(d2, prefix + (m, r))

    go(game.root, ())
    return Strategy.from_plays(game, plays, name=name)
