"""Big-step call-by-name evaluation over configurations (term, store).

Canonical forms are naturals, booleans, variables, skip, abstractions with
arbitrary bodies, and pairs with arbitrary components — abstraction bodies
and pair components stay unevaluated until demanded, which is what makes
the semantics call-by-name.

Local cells: evaluating ``new x := M in N`` evaluates M, extends the store,
evaluates N, and removes the cell from the final store, renaming the bound
name first when it would collide with an existing cell.  The zero-test
propagates its premise's store unchanged in both branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from cgw.algol.syntax import (
    App,
    Assign,
    BoolLit,
    Deref,
    If,
    Lam,
    NatLit,
    New,
    Pair,
    Proj,
    Seq,
    Skip,
    Term,
    Var,
    Zero,
    _rename_reference,
    fresh_name,
    substitute,
    term_to_text,
)

Store = Tuple[Tuple[str, Term], ...]


class EvalError(ValueError):
    """Stuck term, missing cell, or other evaluation failure."""


class FuelExhausted(EvalError):
    """The derivation exceeded the fuel bound (possible divergence)."""


def is_canonical(term: Term) -> bool:
    return isinstance(term, (NatLit, BoolLit, Var, Skip, Lam, Pair))


def store_from(mapping: Mapping[str, Term]) -> Store:
    return tuple(sorted(mapping.items()))


@dataclass(frozen=True)
class Config:
    """A term together with a store of canonical cell contents."""

    term: Term
    store: Store = ()

    def __post_init__(self) -> None:
        names = [name for name, _ in self.store]
        if len(set(names)) != len(names):
            raise EvalError("duplicate cell name in store")
        for name, value in self.store:
            if not is_canonical(value):
                raise EvalError(f"store value for {name!r} is not canonical")

    def lookup(self, name: str) -> Term:
        for entry, value in self.store:
            if entry == name:
                return value
        raise EvalError(f"no cell named {name!r} in the store")

    def updated(self, name: str, value: Term) -> Store:
        out = tuple((n, v) for n, v in self.store if n != name)
        return tuple(sorted(out + ((name, value),)))

    def without(self, name: str) -> Store:
        return tuple((n, v) for n, v in self.store if n != name)

    def names(self) -> frozenset:
        return frozenset(name for name, _ in self.store)


def evaluate(config: Config, fuel: int = 10_000) -> Config:
    """The canonical configuration the input derives, bounded by fuel.

    Fuel bounds the height of the derivation tree; exceeding it raises
    FuelExhausted, which callers should read as possible divergence.
    """
    if fuel <= 0:
        raise FuelExhausted(f"no fuel left at {term_to_text(config.term)!r}")
    term = config.term
    if is_canonical(term):
        return config

    if isinstance(term, App):
        fn = evaluate(Config(term.fn, config.store), fuel - 1)
        head = fn.term
        if not isinstance(head, Lam):
            raise EvalError(
                f"application head reduced to non-function "
                f"{term_to_text(head)!r}"
            )
        body = substitute(head.body, head.param, term.arg)
        return evaluate(Config(body, fn.store), fuel - 1)

    if isinstance(term, If):
        cond = evaluate(Config(term.cond, config.store), fuel - 1)
        if not isinstance(cond.term, BoolLit):
            raise EvalError("condition did not reduce to a boolean")
        branch = term.then_branch if cond.term.value else term.else_branch
        return evaluate(Config(branch, cond.store), fuel - 1)

    if isinstance(term, Seq):
        first = evaluate(Config(term.first, config.store), fuel - 1)
        if not isinstance(first.term, Skip):
            raise EvalError("left of ';' did not reduce to skip")
        second = evaluate(Config(term.second, first.store), fuel - 1)
        if not isinstance(second.term, Skip):
            raise EvalError("right of ';' did not reduce to skip")
        return second

    if isinstance(term, Zero):
        arg = evaluate(Config(term.arg, config.store), fuel - 1)
        if not isinstance(arg.term, NatLit):
            raise EvalError("zero test did not receive a natural")
        return Config(BoolLit(arg.term.value == 0), arg.store)

    if isinstance(term, New):
        init = evaluate(Config(term.init, config.store), fuel - 1)
        name, body = term.name, term.body
        if name in {n for n, _ in init.store}:
            renamed = fresh_name(name, frozenset(n for n, _ in init.store))
            body = _rename_reference(body, name, renamed)
            name = renamed
        inner = Config(body, tuple(sorted(init.store + ((name, init.term),))))
        out = evaluate(inner, fuel - 1)
        return Config(out.term, out.without(name))

    if isinstance(term, Assign):
        value = evaluate(Config(term.value, config.store), fuel - 1)
        current = Config(Skip(), value.store)
        if term.name not in current.names():
            raise EvalError(f"assignment to unknown cell {term.name!r}")
        return Config(Skip(), current.updated(term.name, value.term))

    if isinstance(term, Deref):
        return Config(config.lookup(term.name), config.store)

    if isinstance(term, Proj):
        arg = evaluate(Config(term.arg, config.store), fuel - 1)
        if not isinstance(arg.term, Pair):
            raise EvalError("projection did not receive a pair")
        component = arg.term.first if term.index == 1 else arg.term.second
        return evaluate(Config(component, arg.store), fuel - 1)

    raise EvalError(f"stuck term {term_to_text(term)!r}")
