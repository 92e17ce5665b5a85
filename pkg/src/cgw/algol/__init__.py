"""A small call-by-name imperative language and its interpretation into games."""

from cgw.algol.gamedefs import bool_game, nat_game

__all__ = ["bool_game", "nat_game"]
