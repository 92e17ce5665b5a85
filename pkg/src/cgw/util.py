"""Small shared helpers: canonical ordering of heterogeneous identifiers.

Game positions and moves are identified by nested tuples, strings and
integers (composite constructors wrap component identifiers in tagged
tuples).  Python refuses to compare those directly, so every piece of
code that needs a deterministic iteration order sorts by :func:`canon_key`.
"""

from __future__ import annotations

from typing import Any


def canon_key(value: Any) -> tuple:
    """Total order key for identifiers made of ints, strings and tuples.

    Integers sort before strings, strings before tuples; tuples compare
    element-wise with the same rule.  Any other type falls back to its
    ``repr`` so sorting never raises.
    """
    if isinstance(value, bool):
        return (1, repr(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, tuple):
        return (2, tuple(canon_key(v) for v in value))
    return (3, repr(value))


def sorted_ids(values) -> list:
    """Sort identifiers deterministically by :func:`canon_key`."""
    return sorted(values, key=canon_key)
