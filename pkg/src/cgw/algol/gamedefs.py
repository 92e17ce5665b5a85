"""Flat question/answer games for ground data types.

Both games follow the same shape: one Opponent question from the root,
then one Player answer per possible value, each answer leading to its own
leaf so the answered value is readable off the final position.
"""

from __future__ import annotations

from cgw.games import BaseGame, EdgeSpec, OPPONENT, PLAYER, build_game


def bool_game(name: str = "bool") -> BaseGame:
    """Question 'q', answers 'tt' / 'ff' to distinct leaves."""
    edges = [
        EdgeSpec("q", "b", "bq", OPPONENT, asks=(0, 1)),
        EdgeSpec("tt", "bq", "b=tt", PLAYER, answers=(0, 1)),
        EdgeSpec("ff", "bq", "b=ff", PLAYER, answers=(0, 1)),
    ]
    return build_game(["b", "bq", "b=tt", "b=ff"], "b", edges, name=name)


def nat_game(n_max: int, name: str = "") -> BaseGame:
    """Question 'q', one answer 'a{i}' per value 0..n_max, distinct leaves."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    positions = ["n", "nq"] + [f"n={i}" for i in range(n_max + 1)]
    edges = [EdgeSpec("q", "n", "nq", OPPONENT, asks=(0, 1))]
    for i in range(n_max + 1):
        edges.append(EdgeSpec(f"a{i}", "nq", f"n={i}", PLAYER, answers=(0, 1)))
    return build_game(positions, "n", edges, name=name or f"nat{n_max}")
