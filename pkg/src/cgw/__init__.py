"""cgw: a workbench for finite two-player graph games with resource payoffs.

The package models games as finite rooted acyclic graphs whose edges are
moves owned by one of two parties (Opponent = -1, Player = +1), decorated
with a two-component payoff that counts unanswered questions along any
path.  On top of that core it provides strategies and their composition,
monoidal structure with a trace operator, a replication (of-course)
construction, asynchronous/concurrency diagnostics, and an interpreter
from a small imperative language into games.
"""

from cgw.games import (
    Edge,
    EdgeSpec,
    Game,
    GameError,
    Path,
    build_game,
    dual,
    game_two,
    loli,
    neg,
    product,
    tensor,
    unit_game,
    validate_payoff,
)

__all__ = [
    "Edge",
    "EdgeSpec",
    "Game",
    "GameError",
    "Path",
    "build_game",
    "dual",
    "game_two",
    "loli",
    "neg",
    "product",
    "tensor",
    "unit_game",
    "validate_payoff",
]

__version__ = "0.1.0"
