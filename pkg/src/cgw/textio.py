"""Plain-text files for games and strategies.

Both formats are line-oriented; blank lines and ``#`` comments are
ignored, and indentation is free.  A game file describes an explicit
game table::

    game <name>                 # optional, defaults to ""
    root <position>
    positions
      <position>
      ...
    edges
      <id> <src> <dst> <+1|-1> <ask+> <ask-> <ans+> <ans->
      ...
    path_payoffs                # optional: override whole paths
      <plus> <minus> <id> <id> ...
    eps_payoffs                 # optional: empty-path values
      <plus> <minus> <position>

A strategy file names its game and lists plays as move-id sequences::

    strategy <name>             # optional
    game <reference>
    plays
      -                         # the empty play
      <id> <id> ...

Identifiers that look like plain words are written bare; anything else
(tuples, numbers, strings with punctuation) is written as a Python
literal, and lines containing such fields use tab separators so the
formats round-trip arbitrary identifiers: ``parse(print(g)) == g``.

A strategy's ``game`` reference is either the name of a game file,
resolved by the caller-supplied loader, or a composite expression over
such names — ``tensor(a, b)``, ``product(a, b)``, ``dual(a)``,
``neg(a)``, ``loli(a, b)``, ``hom(a, b)``, ``bang(a, k)`` — so plays of
strategies on composite games still serialize as flat move sequences.
"""

from __future__ import annotations

import ast
import os
import re
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from cgw.games import (
    BaseGame,
    CounterPayoff,
    EdgeSpec,
    Game,
    GameError,
    OPPONENT,
    PLAYER,
    build_game,
    dual,
    loli,
    neg,
    product,
    tensor,
)
from cgw.strategies import Strategy, hom_game, sorted_plays
from cgw.util import canon_key, sorted_ids


class TextFormatError(ValueError):
    """A game or strategy file does not follow the documented grammar."""


_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _encode_field(value: Any) -> str:
    if isinstance(value, str) and _BARE.match(value) and value != "_":
        return value
    text = repr(value)
    if "\t" in text or "\n" in text:
        raise TextFormatError(f"identifier {value!r} cannot be written to text")
    return text


def _decode_field(token: str) -> Any:
    if _BARE.match(token):
        return token
    try:
        return ast.literal_eval(token)
    except (ValueError, SyntaxError) as exc:
        raise TextFormatError(f"bad field {token!r}: {exc}") from exc


def _join_line(encoded: List[str], indent: str = "  ") -> str:
    if any(" " in e for e in encoded):
        # tab-separated, and tab-indented so the parser switches modes
        return "\t" + "\t".join(encoded)
    return indent + " ".join(encoded)


def _encode_line(fields: List[Any], indent: str = "  ") -> str:
    return _join_line([_encode_field(f) for f in fields], indent)


def _split_fields(line: str) -> List[str]:
    if "\t" in line:
        return [t for t in (piece.strip() for piece in line.split("\t")) if t]
    return line.split()


def _nat_field(token: str, what: str) -> int:
    value = _decode_field(token)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise TextFormatError(f"{what} must be a natural number, got {token!r}")
    return value


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            out.append((i, line))
    return out


# --------------------------------------------------------------------------- #
# game files
# --------------------------------------------------------------------------- #

_GAME_SECTIONS = ("positions", "edges", "path_payoffs", "eps_payoffs")


def game_to_text(game: BaseGame) -> str:
    """Render an explicit-table game; inverse of :func:`game_from_text`."""
    if not isinstance(game, BaseGame):
        raise TextFormatError("only explicit-table games can be written to text")
    payoff = game.payoff
    if not isinstance(payoff, CounterPayoff):
        raise TextFormatError("only counter payoffs can be written to text")
    lines: List[str] = []
    if game.name:
        lines.append(_encode_line(["game", game.name], indent=""))
    lines.append(_encode_line(["root", game.root], indent=""))
    lines.append("positions")
    positions = sorted_ids(game.positions)
    for pos in positions:
        lines.append(_encode_line([pos]))
    lines.append("edges")
    for src in positions:
        for move in sorted_ids(game.moves_from(src)):
            dst = game.moves_from(src)[move]
            ask = payoff.asks[move]
            ans = payoff.answers[move]
            pol = "+1" if game.polarity(move) == PLAYER else "-1"
            encoded = [_encode_field(move), _encode_field(src), _encode_field(dst), pol]
            encoded += [str(v) for v in (*ask, *ans)]
            lines.append(_join_line(encoded))
    if payoff.overrides:
        lines.append("path_payoffs")
        for moves in sorted(payoff.overrides, key=canon_key):
            plus, minus = payoff.overrides[moves]
            lines.append(_encode_line([plus, minus, *moves]))
    if payoff.eps:
        lines.append("eps_payoffs")
        for pos in sorted_ids(payoff.eps):
            plus, minus = payoff.eps[pos]
            lines.append(_encode_line([plus, minus, pos]))
    return "\n".join(lines) + "\n"


def game_from_text(text: str) -> BaseGame:
    """Parse a game file; inverse of :func:`game_to_text`."""
    name = ""
    root: Any = None
    have_root = False
    section: Optional[str] = None
    positions: List[Any] = []
    edges: List[EdgeSpec] = []
    path_payoffs: Dict[Tuple[Any, ...], Tuple[int, int]] = {}
    eps_payoffs: Dict[Any, Tuple[int, int]] = {}

    for lineno, line in _logical_lines(text):
        fields = _split_fields(line)
        head = fields[0]
        if head == "game" and len(fields) == 2:
            name = str(_decode_field(fields[1]))
            section = None
            continue
        if head == "root" and len(fields) == 2:
            root = _decode_field(fields[1])
            have_root = True
            section = None
            continue
        if head in _GAME_SECTIONS and len(fields) == 1:
            section = head
            continue
        if section == "positions":
            if len(fields) != 1:
                raise TextFormatError(f"line {lineno}: one position per line")
            positions.append(_decode_field(fields[0]))
        elif section == "edges":
            if len(fields) != 8:
                raise TextFormatError(
                    f"line {lineno}: edge rows have 8 fields "
                    "(id src dst polarity ask+ ask- ans+ ans-)"
                )
            if fields[3] not in ("+1", "-1", "1"):
                raise TextFormatError(f"line {lineno}: polarity must be +1 or -1")
            edges.append(
                EdgeSpec(
                    move=_decode_field(fields[0]),
                    src=_decode_field(fields[1]),
                    dst=_decode_field(fields[2]),
                    polarity=PLAYER if fields[3] in ("+1", "1") else OPPONENT,
                    asks=(
                        _nat_field(fields[4], "ask+"),
                        _nat_field(fields[5], "ask-"),
                    ),
                    answers=(
                        _nat_field(fields[6], "ans+"),
                        _nat_field(fields[7], "ans-"),
                    ),
                )
            )
        elif section == "path_payoffs":
            if len(fields) < 3:
                raise TextFormatError(
                    f"line {lineno}: path payoff rows are `plus minus id...`"
                )
            pair = (_nat_field(fields[0], "payoff"), _nat_field(fields[1], "payoff"))
            path_payoffs[tuple(_decode_field(t) for t in fields[2:])] = pair
        elif section == "eps_payoffs":
            if len(fields) != 3:
                raise TextFormatError(
                    f"line {lineno}: eps payoff rows are `plus minus position`"
                )
            pair = (_nat_field(fields[0], "payoff"), _nat_field(fields[1], "payoff"))
            eps_payoffs[_decode_field(fields[2])] = pair
        else:
            raise TextFormatError(f"line {lineno}: unexpected line {line.strip()!r}")

    if not have_root:
        raise TextFormatError("game file has no root line")
    try:
        return build_game(
            positions,
            root,
            edges,
            path_payoffs=path_payoffs or None,
            eps_payoffs=eps_payoffs or None,
            name=name,
        )
    except GameError as exc:
        raise TextFormatError(str(exc)) from exc


# --------------------------------------------------------------------------- #
# game references
# --------------------------------------------------------------------------- #

_REF_TOKEN = re.compile(r"[^\s(),]+")


class _RefParser:
    def __init__(self, text: str, resolve: Callable[[str], Game]) -> None:
        self.text = text
        self.pos = 0
        self.resolve = resolve

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _token(self) -> str:
        self._skip()
        m = _REF_TOKEN.match(self.text, self.pos)
        if not m:
            raise TextFormatError(
                f"bad game reference at offset {self.pos} in {self.text!r}"
            )
        self.pos = m.end()
        return m.group()

    def _expect(self, ch: str) -> None:
        self._skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise TextFormatError(f"expected {ch!r} in game reference {self.text!r}")
        self.pos += 1

    def parse(self) -> Game:
        tok = self._token()
        self._skip()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            return self._composite(tok)
        return self.resolve(tok)

    def _composite(self, head: str) -> Game:
        from cgw.exponential import bang

        self._expect("(")
        if head in ("dual", "neg"):
            inner = self.parse()
            self._expect(")")
            return dual(inner) if head == "dual" else neg(inner)
        if head in ("tensor", "product", "loli", "hom"):
            left = self.parse()
            self._expect(",")
            right = self.parse()
            self._expect(")")
            build = {
                "tensor": tensor,
                "product": product,
                "loli": loli,
                "hom": hom_game,
            }[head]
            return build(left, right)
        if head == "bang":
            inner = self.parse()
            self._expect(",")
            copies = self._token()
            self._expect(")")
            if not copies.isdigit():
                raise TextFormatError(f"bang copy count must be a number: {copies!r}")
            return bang(inner, int(copies))
        raise TextFormatError(f"unknown game constructor {head!r}")

    def done(self) -> None:
        self._skip()
        if self.pos != len(self.text):
            raise TextFormatError(
                f"trailing input in game reference: {self.text[self.pos:]!r}"
            )


def parse_game_ref(text: str, resolve: Callable[[str], Game]) -> Game:
    """Resolve a game reference: a loader name or a composite expression."""
    parser = _RefParser(text, resolve)
    game = parser.parse()
    parser.done()
    return game


def ref_parts(ref: str, heads: Tuple[str, ...]) -> Tuple[str, List[str]]:
    """Split a composite reference into its head and argument texts.

    ``ref_parts("hom(tensor(a, b), c)", ("hom",))`` yields
    ``("hom", ["tensor(a, b)", "c"])`` without resolving anything, so the
    argument texts can be reused verbatim in derived references.
    """
    s = ref.strip()
    open_at = s.find("(")
    if open_at < 0 or not s.endswith(")"):
        raise TextFormatError(f"not a composite game reference: {ref!r}")
    head = s[:open_at].strip()
    if head not in heads:
        raise TextFormatError(
            f"reference head {head!r} is not one of {', '.join(heads)}"
        )
    inner = s[open_at + 1 : -1]
    args: List[str] = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise TextFormatError(f"unbalanced parentheses in {ref!r}")
        elif ch == "," and depth == 0:
            args.append(inner[start:i].strip())
            start = i + 1
    if depth != 0:
        raise TextFormatError(f"unbalanced parentheses in {ref!r}")
    args.append(inner[start:].strip())
    if any(not a for a in args):
        raise TextFormatError(f"empty argument in {ref!r}")
    return head, args


# --------------------------------------------------------------------------- #
# strategy files
# --------------------------------------------------------------------------- #


def play_to_text(moves: Sequence[Any]) -> str:
    """One play as a single text line; ``-`` stands for the empty play."""
    if not moves:
        return "-"
    return _encode_line(list(moves), indent="")


def play_from_text(line: str) -> Tuple[Any, ...]:
    """Inverse of :func:`play_to_text`."""
    stripped = line.strip()
    if not stripped or stripped == "-":
        return ()
    return tuple(_decode_field(t) for t in _split_fields(line))


def strategy_game_ref(text: str) -> str:
    """Extract the raw game reference expression from a strategy file."""
    for _, line in _logical_lines(text):
        stripped = line.strip()
        if stripped == "plays":
            break
        if stripped.startswith("game"):
            ref = stripped[len("game") :].strip()
            if not ref:
                raise TextFormatError("empty game reference")
            return ref
    raise TextFormatError("strategy file has no game reference")


def strategy_to_text(strategy: Strategy, game_ref: str) -> str:
    """Render a strategy's play set against a named game reference."""
    lines: List[str] = []
    if strategy.name:
        lines.append(_encode_line(["strategy", strategy.name], indent=""))
    lines.append(f"game {game_ref}")
    lines.append("plays")
    for play in sorted_plays(strategy.plays()):
        lines.append("  -" if not play else _encode_line(list(play)))
    return "\n".join(lines) + "\n"


def strategy_from_text(text: str, resolve: Callable[[str], Game]) -> Strategy:
    """Parse a strategy file, resolving its game reference via ``resolve``."""
    name = ""
    game: Optional[Game] = None
    in_plays = False
    plays: List[Tuple[Any, ...]] = [()]
    for lineno, line in _logical_lines(text):
        stripped = line.strip()
        if not in_plays and stripped.startswith("strategy"):
            fields = _split_fields(line)
            if len(fields) != 2:
                raise TextFormatError(f"line {lineno}: strategy header takes one name")
            name = str(_decode_field(fields[1]))
        elif not in_plays and stripped.startswith("game"):
            game = parse_game_ref(stripped[len("game") :].strip(), resolve)
        elif stripped == "plays":
            in_plays = True
        elif in_plays:
            if stripped == "-":
                continue
            plays.append(tuple(_decode_field(t) for t in _split_fields(line)))
        else:
            raise TextFormatError(f"line {lineno}: unexpected line {stripped!r}")
    if game is None:
        raise TextFormatError("strategy file has no game reference")
    if not in_plays:
        raise TextFormatError("strategy file has no plays section")
    return Strategy.from_plays(game, plays, name=name)


# --------------------------------------------------------------------------- #
# filesystem helpers
# --------------------------------------------------------------------------- #


def load_game(path: str) -> BaseGame:
    with open(path, "r", encoding="utf-8") as fh:
        return game_from_text(fh.read())


def save_game(path: str, game: BaseGame) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(game_to_text(game))


def file_resolver(anchor: str) -> Callable[[str], Game]:
    """Resolve bare game names as files next to ``anchor`` (a file or dir).

    A name without an extension gets ``.game`` appended.
    """
    base = os.path.dirname(anchor) if os.path.splitext(anchor)[1] else anchor

    def resolve(name: str) -> Game:
        filename = name if os.path.splitext(name)[1] else name + ".game"
        return load_game(os.path.join(base, filename))

    return resolve


def load_strategy(path: str, resolve: Optional[Callable[[str], Game]] = None) -> Strategy:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return strategy_from_text(text, resolve or file_resolver(path))


def save_strategy(path: str, strategy: Strategy, game_ref: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(strategy_to_text(strategy, game_ref))
