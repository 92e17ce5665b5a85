"""Command-line umbrella: every layer of the workbench as a subcommand.

Exit codes follow one convention across the tree: ``0`` means the requested
check or computation succeeded, ``1`` means it ran but the semantic answer is
negative (a validator found violations, a composition is ill-typed, a program
evaluation or equivalence check failed), and ``2`` is a usage error or — for
``algol correction`` — the resource-bound verdict, whose meaning is "raise
the bounds and rerun", not "wrong".

Game and strategy arguments are file paths; bare game names inside reference
expressions resolve first to sibling ``.game`` files and then to the bundled
catalogue (``bool``, ``two``, ``nat8``, ``unit``).
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from typing import Any, Callable, Optional, Sequence, Tuple

from cgw.algol.bigstep import Config, EvalError, evaluate
from cgw.algol.correction import MISMATCH, PASS, RESOURCE_BOUND, correction_check
from cgw.algol.denote import DenoteError, denote
from cgw.algol.syntax import ParseError, parse_term, term_to_text, type_to_text
from cgw.algol.typecheck import TypingError, judge
from cgw.asyncgraph import (
    AsyncGame,
    AsyncGameError,
    is_innocent,
    is_positional,
    positional_functoriality_check,
)
from cgw.exponential import (
    ExponentialError,
    bang,
    comonoid_law_check,
    comonoid_structure,
)
from cgw.games import Game, GameError, validate_payoff
from cgw.monoidal import (
    MonoidalError,
    StrategyMorphism,
    axiom_corpus,
    mcompose,
    trace,
    trace_axiom_suite,
)
from cgw.strategies import (
    Strategy,
    StrategyError,
    is_winning,
    is_well_bracketed,
    sorted_plays,
    split_hom,
    unique_witness,
    validate_strategy,
)
from cgw.suite import RunConfig, SUITE_NAMES, SuiteError, run_suite
from cgw.textio import (
    TextFormatError,
    file_resolver,
    load_strategy,
    parse_game_ref,
    play_from_text,
    play_to_text,
    ref_parts,
    save_strategy,
    strategy_game_ref,
    strategy_to_text,
)

_USER_ERRORS = (
    TextFormatError,
    GameError,
    StrategyError,
    MonoidalError,
    ExponentialError,
    AsyncGameError,
    SuiteError,
    ParseError,
    TypingError,
    EvalError,
    DenoteError,
    OSError,
)


class _Failure(Exception):
    """A semantic failure already reported on stdout/stderr."""

    def __init__(self, code: int = 1) -> None:
        super().__init__(code)
        self.code = code


def _resolver(anchor: str) -> Callable[[str], Game]:
    """Sibling files first, then the bundled game catalogue."""
    local = file_resolver(anchor)

    def resolve(name: str) -> Game:
        try:
            return local(name)
        except FileNotFoundError:
            filename = name if os.path.splitext(name)[1] else name + ".game"
            bundled = resources.files("cgw").joinpath("data", filename)
            if bundled.is_file():
                from cgw.textio import game_from_text

                return game_from_text(bundled.read_text(encoding="utf-8"))
            raise

    return resolve


def _load_strategy_file(path: str) -> Tuple[Strategy, str]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    ref = strategy_game_ref(text)
    return load_strategy(path, _resolver(path)), ref


def _parse_ref_arg(text: str) -> Game:
    return parse_game_ref(text, _resolver(os.getcwd()))


def _as_morphism(strategy: Strategy, path: str) -> StrategyMorphism:
    try:
        src, dst = split_hom(strategy.game)
    except StrategyError as exc:
        raise StrategyError(
            f"{path}: strategy's game is not a hom game "
            f"(tensor(dual(src), dst)): {exc}"
        )
    return StrategyMorphism(src, dst, strategy)


def _emit_strategy(strategy: Strategy, ref: str, out: Optional[str]) -> None:
    if out:
        save_strategy(out, strategy, ref)
        print(f"wrote {out}")
    else:
        sys.stdout.write(strategy_to_text(strategy, ref))


# --------------------------------------------------------------------------- #
# game
# --------------------------------------------------------------------------- #


def _cmd_game_validate(args: argparse.Namespace) -> int:
    from cgw.textio import load_game

    game = load_game(args.file)
    report = validate_payoff(game, max_len=args.max_len)
    if report.ok:
        print(
            f"ok {game.name or args.file}: {len(game.positions)} positions, "
            f"{len(game.edges)} edges"
        )
        return 0
    for v in report.violations:
        print(f"violation {v.law}  path={play_to_text(v.path)}  {v.detail}")
    return 1


# --------------------------------------------------------------------------- #
# strategy
# --------------------------------------------------------------------------- #


def _cmd_strategy_validate(args: argparse.Namespace) -> int:
    strategy, ref = _load_strategy_file(args.file)
    report = validate_strategy(strategy, max_len=args.max_len)
    if report.ok:
        print(f"ok {args.file}: {len(strategy.plays())} plays on {ref}")
        return 0
    for v in report.violations:
        print(f"violation {v}")
    return 1


def _cmd_strategy_compose(args: argparse.Namespace) -> int:
    sigma, sigma_ref = _load_strategy_file(args.first)
    tau, tau_ref = _load_strategy_file(args.second)
    f = _as_morphism(sigma, args.first)
    g = _as_morphism(tau, args.second)
    composed = mcompose(f, g)
    _, sigma_args = ref_parts(sigma_ref, ("hom",))
    _, tau_args = ref_parts(tau_ref, ("hom",))
    out_ref = f"hom({sigma_args[0]}, {tau_args[1]})"
    _emit_strategy(composed.strat, out_ref, args.out)
    return 0


def _cmd_strategy_witness(args: argparse.Namespace) -> int:
    sigma, _ = _load_strategy_file(args.first)
    tau, _ = _load_strategy_file(args.second)
    play = play_from_text(args.play)
    try:
        interaction = unique_witness(play, sigma, tau)
    except StrategyError as exc:
        print(f"fail: {exc}")
        raise _Failure(1)
    print(play_to_text(interaction.moves))
    return 0


def _cmd_strategy_winning(args: argparse.Namespace) -> int:
    strategy, _ = _load_strategy_file(args.file)
    report = is_winning(strategy, max_len=args.max_len)
    if report.winning:
        print(f"winning {args.file}")
        return 0
    for v in report.violations:
        print(f"violation {v}")
    return 1


def _cmd_strategy_bracketed(args: argparse.Namespace) -> int:
    strategy, _ = _load_strategy_file(args.file)
    play = play_from_text(args.play)
    ok = is_well_bracketed(strategy.game, play, mode=args.mode)
    print(f"{'well-bracketed' if ok else 'not well-bracketed'} ({args.mode})")
    return 0 if ok else 1


# --------------------------------------------------------------------------- #
# trace
# --------------------------------------------------------------------------- #


def _cmd_trace_apply(args: argparse.Namespace) -> int:
    strategy, ref = _load_strategy_file(args.file)
    f = _as_morphism(strategy, args.file)
    _, (src_text, dst_text) = ref_parts(ref, ("hom",))
    _, src_args = ref_parts(src_text, ("tensor",))
    _, dst_args = ref_parts(dst_text, ("tensor",))
    if src_args[0] != dst_args[0]:
        raise TextFormatError(
            "trace needs hom(tensor(x, a), tensor(x, b)) with the same "
            f"left factor on both sides; got {src_args[0]!r} vs {dst_args[0]!r}"
        )
    traced = trace(f)
    out_ref = f"hom({src_args[1]}, {dst_args[1]})"
    _emit_strategy(traced.strat, out_ref, args.out)
    return 0


def _cmd_trace_axioms(args: argparse.Namespace) -> int:
    corpus = axiom_corpus(args.seed, args.count, max_positions=args.max_positions)
    report = trace_axiom_suite(corpus)
    failed = 0
    for check in report.checks:
        status = "pass" if check.passed else "fail"
        failed += 0 if check.passed else 1
        print(
            f"{check.axiom}/{check.instance} {status}  "
            f"left={check.left_size} right={check.right_size}"
        )
    for note in report.winning_notes:
        print(f"# {note}")
    print(f"# trace axioms: {len(report.checks)} checks, {failed} failed")
    return 0 if failed == 0 else 1


# --------------------------------------------------------------------------- #
# bang
# --------------------------------------------------------------------------- #


def _cmd_bang_build(args: argparse.Namespace) -> int:
    base = _parse_ref_arg(args.base)
    bg = bang(base, args.copies)
    print(
        f"bang({args.base}, {args.copies}): {len(bg.positions)} positions, "
        f"{len(bg.edges())} edges, negative={bg.negative}"
    )
    return 0


def _cmd_bang_laws(args: argparse.Namespace) -> int:
    base = _parse_ref_arg(args.base)
    structure = comonoid_structure(bang(base, args.copies))
    report = comonoid_law_check(structure, max_len=args.max_len)
    for check in report.checks:
        status = "pass" if check.passed else "fail"
        extra = f"  {check.witness}" if (not check.passed and check.witness) else ""
        print(
            f"{check.law} {status}  left={check.left_size} "
            f"right={check.right_size}{extra}"
        )
    print(
        f"# comonoid laws: {len(report.checks)} checks, "
        f"{len(report.failures)} failed"
    )
    return 0 if report.ok else 1


# --------------------------------------------------------------------------- #
# async
# --------------------------------------------------------------------------- #


def _cmd_async_check(args: argparse.Namespace) -> int:
    strategy, _ = _load_strategy_file(args.file)
    run_all = not (args.innocent or args.positional or args.functorial)
    failed = 0
    if args.innocent or run_all:
        report = is_innocent(strategy, AsyncGame(strategy.game))
        status = "pass" if report.innocent else "fail"
        failed += 0 if report.innocent else 1
        print(f"innocent {status}")
        for w in report.witnesses[: args.witnesses]:
            print(f"  witness {w}")
    if args.positional or run_all:
        report = is_positional(strategy, AsyncGame(strategy.game))
        status = "pass" if report.positional else "fail"
        failed += 0 if report.positional else 1
        print(f"positional {status}")
        for w in report.witnesses[: args.witnesses]:
            print(
                f"  witness first={play_to_text(w.first)} "
                f"second={play_to_text(w.second)} suffix={play_to_text(w.suffix)}"
            )
    if args.functorial:
        tau, _ = _load_strategy_file(args.functorial)
        report = positional_functoriality_check(strategy, tau)
        for label, ok in (("compose", report.compose_ok), ("tensor", report.tensor_ok)):
            status = "pass" if ok else "fail"
            failed += 0 if ok else 1
            print(f"functorial/{label} {status}")
    return 0 if failed == 0 else 1


# --------------------------------------------------------------------------- #
# algol
# --------------------------------------------------------------------------- #


def _read_program(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_term(fh.read())


def _cmd_algol_parse(args: argparse.Namespace) -> int:
    term = _read_program(args.file)
    print(term_to_text(term))
    return 0


def _cmd_algol_type(args: argparse.Namespace) -> int:
    term = _read_program(args.file)
    judgment = judge((), (), term)
    print(type_to_text(judgment.type))
    return 0


def _cmd_algol_run(args: argparse.Namespace) -> int:
    term = _read_program(args.file)
    out = evaluate(Config(term, ()), fuel=args.fuel)
    print(term_to_text(out.term))
    for name, value in out.store:
        print(f"{name} := {term_to_text(value)}")
    return 0


def _cmd_algol_denote(args: argparse.Namespace) -> int:
    term = _read_program(args.file)
    judgment = judge((), (), term)
    morphism = denote(
        judgment, copies=args.copies, max_len=args.max_len, nat_max=args.nat_max
    )
    plays = sorted_plays(morphism.plays())
    print(f"# {len(plays)} plays at copies={args.copies} max-len={args.max_len}")
    if args.plays:
        for play in plays:
            print(play_to_text(play))
    return 0


def _cmd_algol_correction(args: argparse.Namespace) -> int:
    term = _read_program(args.file)
    report = correction_check(
        term,
        (),
        copies=args.copies,
        max_len=args.max_len,
        nat_max=args.nat_max,
        fuel=args.fuel,
    )
    print(f"verdict {report.verdict}")
    if report.reason:
        print(f"reason {report.reason}")
    print(f"value {term_to_text(report.value)}")
    for name, value in report.final_store:
        print(f"{name} := {term_to_text(value)}")
    print(
        f"# plays before={report.before_play_count} after={report.after_play_count} "
        f"elapsed={report.elapsed:.2f}s"
    )
    return {PASS: 0, MISMATCH: 1, RESOURCE_BOUND: 2}[report.verdict]


# --------------------------------------------------------------------------- #
# suite
# --------------------------------------------------------------------------- #


def _cmd_suite_run(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        seed=args.seed,
        copies=args.copies,
        max_len=args.max_len,
        nat_max=args.nat_max,
        fuel=args.fuel,
        corpus_path=args.corpus,
    )
    report = run_suite(args.name, cfg, jobs=args.jobs)
    sys.stdout.write(report.render(args.format))
    return 0 if report.ok else 1


def _cmd_suite_list(args: argparse.Namespace) -> int:
    for name in SUITE_NAMES:
        print(name)
    return 0


# --------------------------------------------------------------------------- #
# parser
# --------------------------------------------------------------------------- #


def _add_bounds(p: argparse.ArgumentParser, *, fuel: bool = False) -> None:
    p.add_argument("--copies", type=int, default=2, metavar="K",
                   help="stream copies per context slot (default 2)")
    p.add_argument("--max-len", type=int, default=12, metavar="L",
                   help="play length bound (default 12)")
    p.add_argument("--nat-max", type=int, default=8, metavar="N",
                   help="largest number literal in the number game (default 8)")
    if fuel:
        p.add_argument("--fuel", type=int, default=10000,
                       help="evaluation step budget (default 10000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgw",
        description="Workbench for payoff games, strategies, and the "
        "imperative-language interpretation built on them.",
    )
    top = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # game
    game = top.add_parser("game", help="game files").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = game.add_parser("validate", help="check the payoff laws of a game file")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None, metavar="L")
    p.set_defaults(fn=_cmd_game_validate)

    # strategy
    strat = top.add_parser("strategy", help="strategy files").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = strat.add_parser("validate", help="check the strategy laws")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None, metavar="L")
    p.set_defaults(fn=_cmd_strategy_validate)

    p = strat.add_parser("compose", help="compose two hom strategies")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", help="write the composite strategy file here")
    p.set_defaults(fn=_cmd_strategy_compose)

    p = strat.add_parser(
        "witness", help="the unique interaction behind one composite play"
    )
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("play", help='play line, e.g. \'("L", "q") ("R", "q")\'; "-" is empty')
    p.set_defaults(fn=_cmd_strategy_witness)

    p = strat.add_parser("winning", help="check the winning condition")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None, metavar="L")
    p.set_defaults(fn=_cmd_strategy_winning)

    p = strat.add_parser("bracketed", help="check well-bracketing of one play")
    p.add_argument("file")
    p.add_argument("play")
    p.add_argument("--mode", choices=("player", "opponent", "both"), default="both")
    p.set_defaults(fn=_cmd_strategy_bracketed)

    # trace
    tr = top.add_parser("trace", help="feedback operator").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = tr.add_parser(
        "apply", help="trace a strategy on hom(tensor(x, a), tensor(x, b))"
    )
    p.add_argument("file")
    p.add_argument("--out", help="write the traced strategy file here")
    p.set_defaults(fn=_cmd_trace_apply)

    p = tr.add_parser("axioms", help="run the trace axioms on a seeded corpus")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=50, metavar="K")
    p.add_argument("--max-positions", type=int, default=6, metavar="P")
    p.set_defaults(fn=_cmd_trace_axioms)

    # bang
    bg = top.add_parser("bang", help="repetition game").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = bg.add_parser("build", help="build the k-fold repetition of a game")
    p.add_argument("base", help="game reference, e.g. bool or tensor(bool, two)")
    p.add_argument("--copies", type=int, required=True, metavar="K")
    p.set_defaults(fn=_cmd_bang_build)

    p = bg.add_parser("laws", help="check the duplication-structure laws")
    p.add_argument("base")
    p.add_argument("--copies", type=int, default=2, metavar="K")
    p.add_argument("--max-len", type=int, default=8, metavar="L")
    p.set_defaults(fn=_cmd_bang_laws)

    # async
    asy = top.add_parser("async", help="order-independence checks").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = asy.add_parser("check", help="innocence / positionality / functoriality")
    p.add_argument("file")
    p.add_argument("--innocent", action="store_true")
    p.add_argument("--positional", action="store_true")
    p.add_argument(
        "--functorial",
        metavar="SECOND",
        help="second strategy file; checks the position-relation functor laws",
    )
    p.add_argument("--witnesses", type=int, default=3,
                   help="max witnesses to print per failed check")
    p.set_defaults(fn=_cmd_async_check)

    # algol
    alg = top.add_parser("algol", help="imperative language").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = alg.add_parser("parse", help="parse and echo a program file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_algol_parse)

    p = alg.add_parser("type", help="type a closed program")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_algol_type)

    p = alg.add_parser("run", help="evaluate a closed program")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, default=10000)
    p.set_defaults(fn=_cmd_algol_run)

    p = alg.add_parser("denote", help="interpret a closed program as a strategy")
    p.add_argument("file")
    p.add_argument("--plays", action="store_true", help="print every play")
    _add_bounds(p)
    p.set_defaults(fn=_cmd_algol_denote)

    p = alg.add_parser(
        "correction",
        help="compare the program's strategy with its value's strategy "
        "(exit 0 pass, 1 mismatch, 2 resource bound)",
    )
    p.add_argument("file")
    _add_bounds(p, fuel=True)
    p.set_defaults(fn=_cmd_algol_correction)

    # suite
    su = top.add_parser("suite", help="bundled check suites").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = su.add_parser("run", help="run one named suite")
    p.add_argument("name", choices=SUITE_NAMES, metavar="NAME",
                   help="one of: " + ", ".join(SUITE_NAMES))
    p.add_argument("--seed", type=int, default=1)
    _add_bounds(p, fuel=True)
    p.add_argument("--corpus", default=None, help="program corpus JSON path")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.add_argument("--format", choices=("plain", "tsv"), default="plain")
    p.set_defaults(fn=_cmd_suite_run)

    p = su.add_parser("list", help="list the suite names")
    p.set_defaults(fn=_cmd_suite_list)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Failure as f:
        return f.code
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
