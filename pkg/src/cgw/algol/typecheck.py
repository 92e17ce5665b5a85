"""Syntax-directed typing for the imperative call-by-name language.

Judgments have two contexts sharing one namespace: ``gamma`` holds binder
variables (value- or reference-typed), ``delta`` holds reference cells (always
reference-typed); their domains must be disjoint.  Weakening is absorbed into
lookup, so the checker is fully syntax-directed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from cgw.algol.syntax import (
    App,
    ArrowType,
    Assign,
    BOOL,
    BoolLit,
    Deref,
    If,
    Lam,
    NAT,
    NatLit,
    New,
    Pair,
    ProdType,
    Proj,
    RefType,
    Seq,
    Skip,
    Term,
    Type,
    UNIT,
    UnitType,
    Var,
    Zero,
    is_value_type,
    term_to_text,
    type_to_text,
)

Context = Tuple[Tuple[str, Type], ...]


class TypingError(ValueError):
    """Raised when a term does not typecheck."""


@dataclass(frozen=True)
class Judgment:
    """A typed term in context: binders, reference cells, term, result type."""

    gamma: Context
    delta: Context
    term: Term
    type: Type

    def __post_init__(self) -> None:
        gamma_names = [name for name, _ in self.gamma]
        delta_names = [name for name, _ in self.delta]
        if len(set(gamma_names)) != len(gamma_names):
            raise TypingError("duplicate binder name in context")
        if len(set(delta_names)) != len(delta_names):
            raise TypingError("duplicate reference name in context")
        if set(gamma_names) & set(delta_names):
            raise TypingError("binder and reference contexts must be disjoint")
        for name, t in self.delta:
            if not isinstance(t, RefType):
                raise TypingError(f"reference {name} must carry a reference type")


def _lookup(ctx: Context, name: str) -> Optional[Type]:
    for entry, t in ctx:
        if entry == name:
            return t
    return None


def _ref_content(gamma: Context, delta: Context, name: str, use: str) -> Type:
    t = _lookup(delta, name)
    if t is None:
        t = _lookup(gamma, name)
    if t is None:
        raise TypingError(f"unbound identifier {name!r} in {use}")
    if not isinstance(t, RefType):
        raise TypingError(
            f"{use} needs {name!r} to be a reference, got {type_to_text(t)}"
        )
    return t.content


def typecheck(gamma: Context, delta: Context, term: Term) -> Type:
    """The type of ``term``, or a TypingError naming the violated rule."""
    judge(gamma, delta, term)  # validates the contexts
    return _type_of(gamma, delta, term)


def judge(gamma: Context, delta: Context, term: Term) -> Judgment:
    probe = Judgment(gamma, delta, term, UNIT)  # context validation
    del probe
    return Judgment(gamma, delta, term, _type_of(gamma, delta, term))


def _type_of(gamma: Context, delta: Context, term: Term) -> Type:
    if isinstance(term, Skip):
        return UNIT
    if isinstance(term, BoolLit):
        return BOOL
    if isinstance(term, NatLit):
        return NAT
    if isinstance(term, Var):
        t = _lookup(gamma, term.name)
        if t is None:
            t = _lookup(delta, term.name)
        if t is None:
            raise TypingError(f"unbound identifier {term.name!r}")
        return t
    if isinstance(term, Lam):
        if _lookup(gamma, term.param) is not None or _lookup(delta, term.param) is not None:
            raise TypingError(
                f"binder {term.param!r} shadows a name in scope; rename it"
            )
        body = _type_of(gamma + ((term.param, term.annot),), delta, term.body)
        return ArrowType(term.annot, body)
    if isinstance(term, App):
        fn = _type_of(gamma, delta, term.fn)
        if not isinstance(fn, ArrowType):
            raise TypingError(
                f"application head must be a function, got {type_to_text(fn)}"
            )
        arg = _type_of(gamma, delta, term.arg)
        if arg != fn.arg:
            raise TypingError(
                f"argument type {type_to_text(arg)} does not match "
                f"expected {type_to_text(fn.arg)}"
            )
        return fn.res
    if isinstance(term, Assign):
        content = _ref_content(gamma, delta, term.name, "assignment")
        value = _type_of(gamma, delta, term.value)
        if value != content:
            raise TypingError(
                f"assigning {type_to_text(value)} into a cell of "
                f"{type_to_text(content)}"
            )
        return UNIT
    if isinstance(term, Deref):
        return _ref_content(gamma, delta, term.name, "dereference")
    if isinstance(term, New):
        init = _type_of(gamma, delta, term.init)
        if not is_value_type(init):
            raise TypingError("a cell cannot hold a reference")
        if _lookup(gamma, term.name) is not None or _lookup(delta, term.name) is not None:
            raise TypingError(
                f"cell name {term.name!r} shadows a name in scope; rename it"
            )
        inner_delta = delta + ((term.name, RefType(init)),)
        return _type_of(gamma, inner_delta, term.body)
    if isinstance(term, Zero):
        arg = _type_of(gamma, delta, term.arg)
        if arg != NAT:
            raise TypingError(f"zero test needs Nat, got {type_to_text(arg)}")
        return BOOL
    if isinstance(term, If):
        cond = _type_of(gamma, delta, term.cond)
        if cond != BOOL:
            raise TypingError(f"condition must be Bool, got {type_to_text(cond)}")
        then_t = _type_of(gamma, delta, term.then_branch)
        else_t = _type_of(gamma, delta, term.else_branch)
        if then_t != else_t:
            raise TypingError(
                f"branch types differ: {type_to_text(then_t)} vs "
                f"{type_to_text(else_t)}"
            )
        return then_t
    if isinstance(term, Pair):
        return ProdType(
            _type_of(gamma, delta, term.first),
            _type_of(gamma, delta, term.second),
        )
    if isinstance(term, Proj):
        arg = _type_of(gamma, delta, term.arg)
        if not isinstance(arg, ProdType):
            raise TypingError(f"projection needs a pair, got {type_to_text(arg)}")
        return arg.left if term.index == 1 else arg.right
    if isinstance(term, Seq):
        first = _type_of(gamma, delta, term.first)
        if first != UNIT:
            raise TypingError(
                f"sequencing needs Unit on the left, got {type_to_text(first)}"
            )
        second = _type_of(gamma, delta, term.second)
        if second != UNIT:
            raise TypingError(
                f"sequencing needs Unit on the right, got {type_to_text(second)}"
            )
        return UNIT
    raise TypingError(f"unknown term node {term_to_text(term)!r}")
