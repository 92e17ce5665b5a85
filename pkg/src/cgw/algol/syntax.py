"""Types, terms, parser, and printer for the imperative call-by-name language.

Concrete syntax
---------------

Types::

    T ::= Unit | Bool | Nat | Ref T | T -> T | T * T | (T)

``->`` associates to the right and binds looser than ``*``; ``Ref`` binds
tightest and cannot wrap another ``Ref``.

Terms::

    M ::= M ; M                    sequencing (both sides Unit)
        | x := M                   assignment
        | \\x:T. M                  abstraction (annotated binder)
        | new x := M in M          local reference
        | if M then M else M       conditional
        | M M                      application (left associative)
        | !x                       dereference
        | zero(M)                  zero test
        | fst M | snd M            projections
        | <M, M>                   pair
        | skip | tt | ff | 0,1,2…  constants (``T``/``F`` accepted for
        | x | (M)                  booleans; the printer emits tt/ff)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union


class AlgolSyntaxError(ValueError):
    """Malformed type or term construction."""


class ParseError(ValueError):
    """Concrete-syntax error, carrying the offending position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# --------------------------------------------------------------------------- #
# types
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Type:
    """Base class; concrete types below."""


@dataclass(frozen=True)
class UnitType(Type):
    pass


@dataclass(frozen=True)
class BoolType(Type):
    pass


@dataclass(frozen=True)
class NatType(Type):
    pass


@dataclass(frozen=True)
class ArrowType(Type):
    arg: Type
    res: Type


@dataclass(frozen=True)
class ProdType(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class RefType(Type):
    content: Type

    def __post_init__(self) -> None:
        if isinstance(self.content, RefType):
            raise AlgolSyntaxError("references to references are not allowed")


UNIT = UnitType()
BOOL = BoolType()
NAT = NatType()


def is_value_type(t: Type) -> bool:
    """Reference types may only appear at the top of a context entry."""
    return not isinstance(t, RefType)


def type_to_text(t: Type) -> str:
    if isinstance(t, UnitType):
        return "Unit"
    if isinstance(t, BoolType):
        return "Bool"
    if isinstance(t, NatType):
        return "Nat"
    if isinstance(t, RefType):
        inner = type_to_text(t.content)
        if isinstance(t.content, (ArrowType, ProdType)):
            inner = f"({inner})"
        return f"Ref {inner}"
    if isinstance(t, ProdType):
        left = type_to_text(t.left)
        if isinstance(t.left, (ArrowType, ProdType)):
            left = f"({left})"
        right = type_to_text(t.right)
        if isinstance(t.right, (ArrowType, ProdType)):
            right = f"({right})"
        return f"{left} * {right}"
    if isinstance(t, ArrowType):
        arg = type_to_text(t.arg)
        if isinstance(t.arg, ArrowType):
            arg = f"({arg})"
        return f"{arg} -> {type_to_text(t.res)}"
    raise AlgolSyntaxError(f"unknown type node {t!r}")


# --------------------------------------------------------------------------- #
# terms
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Term:
    """Base class; concrete nodes below."""


@dataclass(frozen=True)
class Skip(Term):
    pass


@dataclass(frozen=True)
class BoolLit(Term):
    value: bool


@dataclass(frozen=True)
class NatLit(Term):
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise AlgolSyntaxError("naturals cannot be negative")


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    param: str
    annot: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Assign(Term):
    name: str
    value: Term


@dataclass(frozen=True)
class Deref(Term):
    name: str


@dataclass(frozen=True)
class New(Term):
    name: str
    init: Term
    body: Term


@dataclass(frozen=True)
class Zero(Term):
    arg: Term


@dataclass(frozen=True)
class If(Term):
    cond: Term
    then_branch: Term
    else_branch: Term


@dataclass(frozen=True)
class Pair(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Proj(Term):
    index: int
    arg: Term

    def __post_init__(self) -> None:
        if self.index not in (1, 2):
            raise AlgolSyntaxError("projection index must be 1 or 2")


@dataclass(frozen=True)
class Seq(Term):
    first: Term
    second: Term


SKIP = Skip()
TT = BoolLit(True)
FF = BoolLit(False)


# --------------------------------------------------------------------------- #
# tokenizer
# --------------------------------------------------------------------------- #

_KEYWORDS = {
    "skip", "tt", "ff", "T", "F", "new", "in", "if", "then", "else",
    "zero", "fst", "snd", "Unit", "Bool", "Nat", "Ref",
}

_PUNCT = [":=", "->", "(", ")", "<", ">", ",", ";", ".", "\\", "!", "*", ":"]


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | nat | keyword | punct | end
    text: str
    line: int
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("nat", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_" or text[j] == "'"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(_Token("punct", punct, line, col))
                col += len(punct)
                i += len(punct)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# --------------------------------------------------------------------------- #
# parser
# --------------------------------------------------------------------------- #


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def head(self) -> _Token:
        return self.tokens[self.pos]

    def _fail(self, message: str) -> ParseError:
        tok = self.head
        shown = tok.text or "end of input"
        return ParseError(f"{message}, found {shown!r}", tok.line, tok.column)

    def advance(self) -> _Token:
        tok = self.head
        self.pos += 1
        return tok

    def match(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.head
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        if not self.match(kind, text):
            want = text if text is not None else kind
            raise self._fail(f"expected {want!r}")
        return self.advance()

    # ---- types ---------------------------------------------------------- #

    def parse_type(self) -> Type:
        left = self.parse_prod_type()
        if self.match("punct", "->"):
            self.advance()
            return ArrowType(left, self.parse_type())
        return left

    def parse_prod_type(self) -> Type:
        left = self.parse_atom_type()
        while self.match("punct", "*"):
            self.advance()
            left = ProdType(left, self.parse_atom_type())
        return left

    def parse_atom_type(self) -> Type:
        if self.match("keyword", "Unit"):
            self.advance()
            return UNIT
        if self.match("keyword", "Bool"):
            self.advance()
            return BOOL
        if self.match("keyword", "Nat"):
            self.advance()
            return NAT
        if self.match("keyword", "Ref"):
            tok = self.advance()
            inner = self.parse_atom_type()
            try:
                return RefType(inner)
            except AlgolSyntaxError as exc:
                raise ParseError(str(exc), tok.line, tok.column) from exc
        if self.match("punct", "("):
            self.advance()
            t = self.parse_type()
            self.expect("punct", ")")
            return t
        raise self._fail("expected a type")

    # ---- terms ---------------------------------------------------------- #

    def parse_term(self) -> Term:
        return self.parse_seq()

    def parse_seq(self) -> Term:
        left = self.parse_assign()
        if self.match("punct", ";"):
            self.advance()
            return Seq(left, self.parse_seq())
        return left

    def parse_assign(self) -> Term:
        if self.match("ident") and self.tokens[self.pos + 1].text == ":=":
            name = self.advance().text
            self.advance()  # :=
            return Assign(name, self.parse_assign())
        return self.parse_binder()

    def parse_binder(self) -> Term:
        if self.match("punct", "\\"):
            self.advance()
            param = self.expect("ident").text
            self.expect("punct", ":")
            annot = self.parse_type()
            self.expect("punct", ".")
            return Lam(param, annot, self.parse_term())
        if self.match("keyword", "new"):
            self.advance()
            name = self.expect("ident").text
            self.expect("punct", ":=")
            init = self.parse_assign()
            self.expect("keyword", "in")
            return New(name, init, self.parse_term())
        if self.match("keyword", "if"):
            self.advance()
            cond = self.parse_term()
            self.expect("keyword", "then")
            then_branch = self.parse_term()
            self.expect("keyword", "else")
            return If(cond, then_branch, self.parse_binder_tail())
        return self.parse_app()

    def parse_binder_tail(self) -> Term:
        """An else-branch extends through binders but not past ';'."""
        return self.parse_assign()

    def parse_app(self) -> Term:
        fn = self.parse_prefix()
        while self._starts_prefix():
            fn = App(fn, self.parse_prefix())
        return fn

    def _starts_prefix(self) -> bool:
        tok = self.head
        if tok.kind in ("ident", "nat"):
            return tok.text != "in" and self.tokens[self.pos + 1].text != ":="
        if tok.kind == "keyword":
            return tok.text in ("skip", "tt", "ff", "T", "F", "zero", "fst", "snd")
        if tok.kind == "punct":
            return tok.text in ("(", "<", "!")
        return False

    def parse_prefix(self) -> Term:
        if self.match("punct", "!"):
            self.advance()
            return Deref(self.expect("ident").text)
        if self.match("keyword", "zero"):
            self.advance()
            self.expect("punct", "(")
            arg = self.parse_term()
            self.expect("punct", ")")
            return Zero(arg)
        if self.match("keyword", "fst"):
            self.advance()
            return Proj(1, self.parse_prefix())
        if self.match("keyword", "snd"):
            self.advance()
            return Proj(2, self.parse_prefix())
        return self.parse_atom()

    def parse_atom(self) -> Term:
        if self.match("keyword", "skip"):
            self.advance()
            return SKIP
        if self.match("keyword", "tt") or self.match("keyword", "T"):
            self.advance()
            return TT
        if self.match("keyword", "ff") or self.match("keyword", "F"):
            self.advance()
            return FF
        if self.match("nat"):
            return NatLit(int(self.advance().text))
        if self.match("ident"):
            return Var(self.advance().text)
        if self.match("punct", "<"):
            self.advance()
            first = self.parse_term()
            self.expect("punct", ",")
            second = self.parse_term()
            self.expect("punct", ">")
            return Pair(first, second)
        if self.match("punct", "("):
            self.advance()
            term = self.parse_term()
            self.expect("punct", ")")
            return term
        raise self._fail("expected a term")


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    term = parser.parse_term()
    if not parser.match("end"):
        raise parser._fail("trailing input after term")
    return term


def parse_type(text: str) -> Type:
    parser = _Parser(text)
    t = parser.parse_type()
    if not parser.match("end"):
        raise parser._fail("trailing input after type")
    return t


# --------------------------------------------------------------------------- #
# printer
# --------------------------------------------------------------------------- #

_LEVEL_SEQ = 0
_LEVEL_ASSIGN = 1
_LEVEL_BINDER = 2
_LEVEL_APP = 3
_LEVEL_PREFIX = 4
_LEVEL_ATOM = 5


def _wrap(text: str, level: int, minimum: int) -> str:
    return f"({text})" if level < minimum else text


def _extends_past_semicolon(term: Term) -> bool:
    """Whether the term's rightmost tail is a binder body, which would
    swallow a following ';' on re-parse unless parenthesised."""
    if isinstance(term, (Lam, New)):
        return True
    if isinstance(term, If):
        return _extends_past_semicolon(term.else_branch)
    if isinstance(term, Assign):
        return _extends_past_semicolon(term.value)
    if isinstance(term, Seq):
        return _extends_past_semicolon(term.second)
    return False


def _pp(term: Term) -> Tuple[str, int]:
    if isinstance(term, Skip):
        return "skip", _LEVEL_ATOM
    if isinstance(term, BoolLit):
        return ("tt" if term.value else "ff"), _LEVEL_ATOM
    if isinstance(term, NatLit):
        return str(term.value), _LEVEL_ATOM
    if isinstance(term, Var):
        return term.name, _LEVEL_ATOM
    if isinstance(term, Deref):
        return f"!{term.name}", _LEVEL_PREFIX
    if isinstance(term, Zero):
        return f"zero({term_to_text(term.arg)})", _LEVEL_PREFIX
    if isinstance(term, Proj):
        kw = "fst" if term.index == 1 else "snd"
        inner, lvl = _pp(term.arg)
        return f"{kw} {_wrap(inner, lvl, _LEVEL_PREFIX)}", _LEVEL_PREFIX
    if isinstance(term, Pair):
        return (
            f"<{term_to_text(term.first)}, {term_to_text(term.second)}>",
            _LEVEL_ATOM,
        )
    if isinstance(term, App):
        fn, fn_lvl = _pp(term.fn)
        arg, arg_lvl = _pp(term.arg)
        return (
            f"{_wrap(fn, fn_lvl, _LEVEL_APP)} {_wrap(arg, arg_lvl, _LEVEL_PREFIX)}",
            _LEVEL_APP,
        )
    if isinstance(term, Lam):
        body, _ = _pp(term.body)
        return f"\\{term.param}:{type_to_text(term.annot)}. {body}", _LEVEL_BINDER
    if isinstance(term, New):
        init, init_lvl = _pp(term.init)
        body, _ = _pp(term.body)
        return (
            f"new {term.name} := {_wrap(init, init_lvl, _LEVEL_ASSIGN)} in {body}",
            _LEVEL_BINDER,
        )
    if isinstance(term, If):
        cond, _ = _pp(term.cond)
        then_b, _ = _pp(term.then_branch)
        else_b, else_lvl = _pp(term.else_branch)
        return (
            f"if {cond} then {then_b} else {_wrap(else_b, else_lvl, _LEVEL_ASSIGN)}",
            _LEVEL_BINDER,
        )
    if isinstance(term, Assign):
        value, value_lvl = _pp(term.value)
        return f"{term.name} := {_wrap(value, value_lvl, _LEVEL_ASSIGN)}", _LEVEL_ASSIGN
    if isinstance(term, Seq):
        first, first_lvl = _pp(term.first)
        second, second_lvl = _pp(term.second)
        if _extends_past_semicolon(term.first):
            first_lvl = _LEVEL_SEQ
        return (
            f"{_wrap(first, first_lvl, _LEVEL_ASSIGN)}; "
            f"{_wrap(second, second_lvl, _LEVEL_SEQ)}",
            _LEVEL_SEQ,
        )
    raise AlgolSyntaxError(f"unknown term node {term!r}")


def term_to_text(term: Term) -> str:
    text, _ = _pp(term)
    return text


# --------------------------------------------------------------------------- #
# free variables and substitution
# --------------------------------------------------------------------------- #


def free_names(term: Term) -> frozenset:
    """Free variable and reference names (one shared namespace)."""
    if isinstance(term, (Skip, BoolLit, NatLit)):
        return frozenset()
    if isinstance(term, Var):
        return frozenset({term.name})
    if isinstance(term, (Deref,)):
        return frozenset({term.name})
    if isinstance(term, Assign):
        return frozenset({term.name}) | free_names(term.value)
    if isinstance(term, Lam):
        return free_names(term.body) - {term.param}
    if isinstance(term, App):
        return free_names(term.fn) | free_names(term.arg)
    if isinstance(term, New):
        return free_names(term.init) | (free_names(term.body) - {term.name})
    if isinstance(term, Zero):
        return free_names(term.arg)
    if isinstance(term, If):
        return (
            free_names(term.cond)
            | free_names(term.then_branch)
            | free_names(term.else_branch)
        )
    if isinstance(term, Pair):
        return free_names(term.first) | free_names(term.second)
    if isinstance(term, Proj):
        return free_names(term.arg)
    if isinstance(term, Seq):
        return free_names(term.first) | free_names(term.second)
    raise AlgolSyntaxError(f"unknown term node {term!r}")


def fresh_name(base: str, avoid: frozenset) -> str:
    if base not in avoid:
        return base
    k = 1
    while f"{base}_{k}" in avoid:
        k += 1
    return f"{base}_{k}"


def substitute(term: Term, name: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of ``replacement`` for ``Var(name)``.

    Assignment and dereference target names are reference identifiers;
    substituting a general term for them is meaningless, so they are left
    untouched (they can never be lambda-bound to a value anyway when the
    term typechecks with value-typed binders).
    """
    if isinstance(term, (Skip, BoolLit, NatLit)):
        return term
    if isinstance(term, Var):
        return replacement if term.name == name else term
    if isinstance(term, Deref):
        return term
    if isinstance(term, Assign):
        return Assign(term.name, substitute(term.value, name, replacement))
    if isinstance(term, Lam):
        if term.param == name:
            return term
        if term.param in free_names(replacement):
            renamed = fresh_name(
                term.param, free_names(replacement) | free_names(term.body) | {name}
            )
            body = substitute(term.body, term.param, Var(renamed))
            return Lam(renamed, term.annot, substitute(body, name, replacement))
        return Lam(term.param, term.annot, substitute(term.body, name, replacement))
    if isinstance(term, App):
        return App(
            substitute(term.fn, name, replacement),
            substitute(term.arg, name, replacement),
        )
    if isinstance(term, New):
        init = substitute(term.init, name, replacement)
        if term.name == name:
            return New(term.name, init, term.body)
        if term.name in free_names(replacement):
            renamed = fresh_name(
                term.name, free_names(replacement) | free_names(term.body) | {name}
            )
            body = _rename_reference(term.body, term.name, renamed)
            return New(renamed, init, substitute(body, name, replacement))
        return New(term.name, init, substitute(term.body, name, replacement))
    if isinstance(term, Zero):
        return Zero(substitute(term.arg, name, replacement))
    if isinstance(term, If):
        return If(
            substitute(term.cond, name, replacement),
            substitute(term.then_branch, name, replacement),
            substitute(term.else_branch, name, replacement),
        )
    if isinstance(term, Pair):
        return Pair(
            substitute(term.first, name, replacement),
            substitute(term.second, name, replacement),
        )
    if isinstance(term, Proj):
        return Proj(term.index, substitute(term.arg, name, replacement))
    if isinstance(term, Seq):
        return Seq(
            substitute(term.first, name, replacement),
            substitute(term.second, name, replacement),
        )
    raise AlgolSyntaxError(f"unknown term node {term!r}")


def _rename_reference(term: Term, old: str, new: str) -> Term:
    """Rename a reference identifier, including assignment/deref targets."""
    if isinstance(term, (Skip, BoolLit, NatLit)):
        return term
    if isinstance(term, Var):
        return Var(new) if term.name == old else term
    if isinstance(term, Deref):
        return Deref(new) if term.name == old else term
    if isinstance(term, Assign):
        target = new if term.name == old else term.name
        return Assign(target, _rename_reference(term.value, old, new))
    if isinstance(term, Lam):
        if term.param == old:
            return term
        return Lam(term.param, term.annot, _rename_reference(term.body, old, new))
    if isinstance(term, App):
        return App(
            _rename_reference(term.fn, old, new),
            _rename_reference(term.arg, old, new),
        )
    if isinstance(term, New):
        init = _rename_reference(term.init, old, new)
        if term.name == old:
            return New(term.name, init, term.body)
        return New(term.name, init, _rename_reference(term.body, old, new))
    if isinstance(term, Zero):
        return Zero(_rename_reference(term.arg, old, new))
    if isinstance(term, If):
        return If(
            _rename_reference(term.cond, old, new),
            _rename_reference(term.then_branch, old, new),
            _rename_reference(term.else_branch, old, new),
        )
    if isinstance(term, Pair):
        return Pair(
            _rename_reference(term.first, old, new),
            _rename_reference(term.second, old, new),
        )
    if isinstance(term, Proj):
        return Proj(term.index, _rename_reference(term.arg, old, new))
    if isinstance(term, Seq):
        return Seq(
            _rename_reference(term.first, old, new),
            _rename_reference(term.second, old, new),
        )
    raise AlgolSyntaxError(f"unknown term node {term!r}")
