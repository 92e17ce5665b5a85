"""The stateful language layer: syntax, types, evaluation, interpretation."""

import pytest
from hypothesis import given, settings, strategies as st

from cgw.algol.bigstep import Config, EvalError, FuelExhausted, evaluate, store_from
from cgw.algol.corpus import CORPUS, CorpusEntry, dump_corpus, load_corpus
from cgw.algol.correction import close_over_store, correction_check
from cgw.algol.denote import (
    DenoteError,
    OverflowLog,
    denote,
    length_probe,
    result_plays,
)
from cgw.algol.gamedefs import bool_game, nat_game
from cgw.algol.syntax import (
    BOOL,
    FF,
    NAT,
    SKIP,
    TT,
    UNIT,
    App,
    ArrowType,
    Assign,
    BoolLit,
    Deref,
    If,
    Lam,
    NatLit,
    New,
    Pair,
    ParseError,
    ProdType,
    Proj,
    RefType,
    Seq,
    Skip,
    Var,
    Zero,
    parse_term,
    parse_type,
    term_to_text,
    type_to_text,
)
from cgw.algol.typecheck import Judgment, TypingError, judge, typecheck
from cgw.exponential import bang
from cgw.games import tensor, unit_game, validate_payoff
from cgw.monoidal import StrategyMorphism, identity, mcompose, tensor_morphism
from cgw.strategies import hom_game
from cgw.wiring import PortPair, wiring_strategy

# --------------------------------------------------------------------------- #
# parsing and printing
# --------------------------------------------------------------------------- #


def test_parse_basic_shapes():
    assert parse_term("skip") == Skip()
    assert parse_term("tt") == BoolLit(True) == parse_term("T")
    assert parse_term("ff") == BoolLit(False) == parse_term("F")
    assert parse_term("7") == NatLit(7)
    assert parse_term("new x := 1 in !x") == New("x", NatLit(1), Deref("x"))
    assert parse_term("x := tt") == Assign("x", TT)
    assert parse_term(r"\x:Bool. x") == Lam("x", BOOL, Var("x"))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse_term("skip; skip; skip") == Seq(SKIP, Seq(SKIP, SKIP))
    assert parse_term("<tt, 3>") == Pair(TT, NatLit(3))
    assert parse_term("fst <tt, ff>") == Proj(1, Pair(TT, FF))
    assert parse_term("zero(4)") == Zero(NatLit(4))
    assert parse_term("if tt then 1 else 2") == If(TT, NatLit(1), NatLit(2))


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_term("x :=")
    assert err.value.line == 1
    with pytest.raises(ParseError):
        parse_term("new x := in !x")
    with pytest.raises(ParseError):
        parse_term("(tt")
    with pytest.raises(ParseError):
        parse_term("tt, tt")


def test_application_binds_tighter_than_abstraction():
    term = parse_term(r"\f:Bool->Bool. f tt")
    assert term == Lam("f", ArrowType(BOOL, BOOL), App(Var("f"), TT))


def test_printer_round_trips_corpus():
    for entry in CORPUS:
        assert parse_term(term_to_text(entry.term)) == entry.term


_names = st.sampled_from(["x", "y", "z", "f", "g", "u"])
_types = st.recursive(
    st.sampled_from([UNIT, BOOL, NAT]),
    lambda inner: st.builds(ArrowType, inner, inner) | st.builds(ProdType, inner, inner),
    max_leaves=4,
)
_terms = st.recursive(
    st.one_of(
        st.just(SKIP),
        st.builds(BoolLit, st.booleans()),
        st.builds(NatLit, st.integers(0, 30)),
        st.builds(Var, _names),
        st.builds(Deref, _names),
    ),
    lambda inner: st.one_of(
        st.builds(Lam, _names, _types, inner),
        st.builds(App, inner, inner),
        st.builds(Assign, _names, inner),
        st.builds(New, _names, inner, inner),
        st.builds(Zero, inner),
        st.builds(If, inner, inner, inner),
        st.builds(Pair, inner, inner),
        st.builds(Proj, st.sampled_from([1, 2]), inner),
        st.builds(Seq, inner, inner),
    ),
    max_leaves=6,
)


@settings(max_examples=80, deadline=None, derandomize=True)
@given(_terms)
def test_printer_round_trips_random_terms(term):
    assert parse_term(term_to_text(term)) == term


@settings(max_examples=40, deadline=None, derandomize=True)
@given(_types)
def test_type_printer_round_trips(t):
    assert parse_type(type_to_text(t)) == t


# --------------------------------------------------------------------------- #
# typing
# --------------------------------------------------------------------------- #

RB = RefType(BOOL)
RN = RefType(NAT)


def test_typing_rules_accept():
    assert typecheck((), (), SKIP) == UNIT
    assert typecheck((), (), TT) == BOOL
    assert typecheck((), (), NatLit(4)) == NAT
    assert typecheck((("x", BOOL),), (), Var("x")) == BOOL
    assert typecheck((), (("x", RB),), Deref("x")) == BOOL
    assert typecheck((), (("x", RB),), Assign("x", FF)) == UNIT
    assert typecheck((), (), parse_term(r"\x:Bool. x")) == ArrowType(BOOL, BOOL)
    assert typecheck((), (), parse_term(r"(\x:Bool. x) tt")) == BOOL
    assert typecheck((), (), parse_term("new x := 1 in !x")) == NAT
    assert typecheck((), (), parse_term("skip; skip")) == UNIT
    assert typecheck((), (), parse_term("zero(3)")) == BOOL
    assert typecheck((), (), parse_term("if tt then 1 else 2")) == NAT
    assert typecheck((), (), parse_term("<tt, 3>")) == ProdType(BOOL, NAT)
    assert typecheck((), (), parse_term("fst <tt, 3>")) == BOOL
    assert typecheck((), (), parse_term("snd <tt, 3>")) == NAT


def test_lookup_reaches_either_context():
    # an unused store entry does not disturb typing, and a store name is
    # visible both to reads/writes and to the plain variable rule
    assert typecheck((("y", BOOL),), (("x", RB),), Var("y")) == BOOL
    assert typecheck((), (("x", RB),), Var("x")) == RB
    assert typecheck((("x", RB),), (), Deref("x")) == BOOL


def test_typing_rules_reject():
    with pytest.raises(TypingError):
        typecheck((), (), Var("ghost"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("skip; 3"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("3; skip"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("if tt then 1 else ff"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("if 3 then 1 else 2"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("zero(tt)"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term(r"(\x:Bool. x) skip"))
    with pytest.raises(TypingError):
        typecheck((), (), parse_term("fst tt"))
    with pytest.raises(TypingError):
        typecheck((), (("x", RB),), Assign("x", NatLit(1)))
    with pytest.raises(TypingError):
        typecheck((), (), Deref("ghost"))
    with pytest.raises(TypingError):  # binders may not shadow
        typecheck((("x", BOOL),), (), parse_term(r"\x:Bool. x"))
    with pytest.raises(TypingError):
        typecheck((), (("x", RB),), parse_term("new x := tt in skip"))


def test_reference_types_do_not_nest():
    with pytest.raises(Exception):
        RefType(RB)
    with pytest.raises(ParseError):
        parse_type("Ref Ref Bool")


def test_judgment_validates_contexts():
    with pytest.raises(TypingError):
        Judgment((("x", BOOL),), (("x", RB),), SKIP, UNIT)
    with pytest.raises(TypingError):
        Judgment((), (("x", BOOL),), SKIP, UNIT)
    j = judge((("y", BOOL),), (("x", RB),), Var("y"))
    assert j.type == BOOL


# --------------------------------------------------------------------------- #
# big-step evaluation
# --------------------------------------------------------------------------- #


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_bigstep_corpus_exact(entry):
    out = evaluate(Config(entry.term, entry.store))
    assert out.term == entry.expected_value
    assert out.store == entry.expected_store


def test_bigstep_is_deterministic_on_corpus():
    for entry in CORPUS:
        first = evaluate(Config(entry.term, entry.store))
        second = evaluate(Config(entry.term, entry.store))
        assert first == second


def test_subject_reduction_on_corpus():
    for entry in CORPUS:
        delta = tuple(
            (name, RefType(typecheck((), (), value))) for name, value in entry.store
        )
        before = typecheck((), delta, entry.term)
        out = evaluate(Config(entry.term, entry.store))
        delta_after = tuple(
            (name, RefType(typecheck((), (), value))) for name, value in out.store
        )
        assert typecheck((), delta_after, out.term) == before
        assert delta_after == delta  # store typing is stable on this corpus


def test_fuel_exhaustion_signals():
    term = parse_term(r"(\x:Bool. x) ((\y:Bool. y) tt)")
    with pytest.raises(FuelExhausted):
        evaluate(Config(term), fuel=1)
    assert evaluate(Config(term), fuel=10).term == TT


def test_store_misses_are_loud():
    with pytest.raises(EvalError):
        evaluate(Config(Deref("ghost")))
    with pytest.raises(EvalError):
        evaluate(Config(Assign("ghost", TT)))


def test_scoped_cell_renames_on_collision():
    # the inner binder collides with an existing cell: evaluation must
    # keep the two cells separate and remove only the inner one
    out = evaluate(Config(parse_term("new x := ff in !x"), store_from({"x": TT})))
    assert out.term == FF
    assert out.store == store_from({"x": TT})


def test_scope_escape_is_loud():
    # lazy pairs let a component mention a cell that dies with its
    # binder; using the component afterwards must fail, not misread
    term = parse_term("new x := ff in <!x, skip>")
    with pytest.raises(EvalError):
        evaluate(Config(Proj(1, term), store_from({"x": TT})))


def test_call_by_name_substitutes_unevaluated():
    # the argument is evaluated at use time, not at application time
    term = parse_term(r"new y := tt in new u := ((\x:Unit. skip)(y := ff)) in !y")
    assert evaluate(Config(term)).term == TT


# --------------------------------------------------------------------------- #
# ground-type games
# --------------------------------------------------------------------------- #


def test_bool_game_is_lawful():
    report = validate_payoff(bool_game())
    assert report.ok


def test_nat_game_shapes():
    assert len(nat_game(0).edges) == 2
    three = nat_game(3)
    assert len(three.positions) == 6
    assert len(three.edges) == 5
    report = validate_payoff(three)
    assert report.ok


# --------------------------------------------------------------------------- #
# denotation
# --------------------------------------------------------------------------- #


def closed(text):
    return judge((), (), parse_term(text))


def test_constant_true_denotes_answer_strategy():
    plays = result_plays(denote(closed("tt"), 2, 8), 8)
    assert plays == frozenset([(), (("q"), "tt")])


def test_skip_denotes_the_empty_behaviour():
    assert result_plays(denote(closed("skip"), 2, 8), 8) == frozenset([()])


def test_variable_denotes_dereliction_on_copycat():
    j = judge((("x", BOOL),), (), Var("x"))
    plays = denote(j, 2, 8).plays(8)
    assert plays == frozenset(
        [
            (),
            (("R", ("R", "q")), ("L", ("L", ("R", (0, "q"))))),
            (
                ("R", ("R", "q")),
                ("L", ("L", ("R", (0, "q")))),
                ("L", ("L", ("R", (0, "tt")))),
                ("R", ("R", "tt")),
            ),
            (
                ("R", ("R", "q")),
                ("L", ("L", ("R", (0, "q")))),
                ("L", ("L", ("R", (0, "ff")))),
                ("R", ("R", "ff")),
            ),
        ]
    )


def test_scoped_cell_read_equals_constant():
    lhs = result_plays(denote(closed("new x := tt in !x"), 2, 8), 8)
    rhs = result_plays(denote(closed("tt"), 2, 8), 8)
    assert lhs == rhs


def test_denotation_threads_writes():
    lhs = result_plays(denote(closed("new x := 0 in new y := (x := 5) in !x"), 2, 12), 12)
    rhs = result_plays(denote(closed("5"), 2, 12), 12)
    assert lhs == rhs


def test_denote_rejects_out_of_range_literal():
    with pytest.raises(DenoteError):
        denote(closed("12"), 2, 8, nat_max=8)


def test_denote_rejects_reference_valued_variables():
    j = judge((("x", RB),), (), Deref("x"))
    with pytest.raises(DenoteError):
        denote(j, 2, 8)
    j2 = judge((), (("x", RB),), Var("x"))
    with pytest.raises(DenoteError):
        denote(j2, 2, 8)
    with pytest.raises(DenoteError):
        denote(closed(r"\x:Ref Bool. skip"), 2, 8)


def _mirror_legs(src, dst, legs, name):
    game = hom_game(src, dst)
    pairs = [PortPair(("L",) + a, leaf, ("R",) + b, leaf) for a, b, leaf in legs]
    return StrategyMorphism(src, dst, wiring_strategy(game, pairs, name=name))


@pytest.mark.parametrize("text", ["tt", "new x := tt in !x"])
def test_weakening_adds_an_inert_stream(text):
    # adding an unused store entry wraps the denotation in a passthrough
    plain = denote(closed(text), 2, 10)
    weak = denote(judge((), (("z", RB),), parse_term(text)), 2, 10)
    bz = bang(bool_game(), 2)
    unit = unit_game()
    fit_in = _mirror_legs(
        weak.src, tensor(plain.src, bz), [(("R", "R"), ("R",), bz)], "fit-in"
    )
    mid = tensor_morphism(plain, identity(bz))
    fit_out = _mirror_legs(
        mid.dst,
        weak.dst,
        [(("L", "R"), ("R",), plain.dst.right), (("R",), ("L", "R"), bz)],
        "fit-out",
    )
    expected = mcompose(fit_in, mid, fit_out)
    assert weak.plays(10) == expected.plays(10)


def test_width_bound_truncates_triple_read():
    text = ("new x := tt in (if !x then (if !x then (if !x then tt else ff)"
            " else ff) else ff)")
    narrow = result_plays(denote(closed(text), 2, 12), 12)
    wide = result_plays(denote(closed(text), 3, 12), 12)
    assert narrow == frozenset([()])
    assert wide == frozenset([(), (("q"), "tt")])


def test_length_probe_flags_short_bounds():
    m = denote(closed("new x := 0 in new y := (x := 5) in !x"), 2, 12)
    assert not length_probe(m, 12)
    # at a bound shorter than the answer exchange the probe must fire
    m2 = denote(closed("tt"), 2, 12)
    assert m2.plays(1) != m2.plays(2)


# --------------------------------------------------------------------------- #
# the operational/denotational cross-check
# --------------------------------------------------------------------------- #


def test_correction_trivial_and_computed():
    assert correction_check(SKIP).verdict == "pass"
    report = correction_check(parse_term("zero(0)"))
    assert report.verdict == "pass"
    assert report.equal and report.before_play_count == 2


def test_correction_flagship():
    report = correction_check(parse_term("new x := 0 in new y := (x := 5) in !x"))
    assert report.verdict == "pass"
    assert report.value == NatLit(5)
    assert report.final_store == ()


def test_correction_close_over_store_orders_cells():
    term = close_over_store(parse_term("!x"), store_from({"x": TT, "a": FF}))
    assert term == New("a", FF, New("x", TT, Deref("x")))


def test_correction_catches_effectful_argument():
    # a used argument's store write is outside the interpreted fragment:
    # the checker must report the mismatch, not mask it
    term = parse_term(r"new y := tt in new u := ((\x:Unit. x)(y := ff)) in !y")
    report = correction_check(term)
    assert report.verdict == "mismatch"
    assert report.exit_code == 1
    assert report.witness is not None


def test_correction_flags_width_overflow():
    text = ("new x := tt in (if !x then (if !x then (if !x then tt else ff)"
            " else ff) else ff)")
    report = correction_check(parse_term(text))
    assert report.verdict == "resource-bound"
    assert report.exit_code == 2
    assert report.width_truncated


def test_correction_flags_fuel_exhaustion():
    term = parse_term(r"(\x:Bool. x) ((\y:Bool. y) tt)")
    report = correction_check(term, fuel=1)
    assert report.verdict == "resource-bound"
    assert "fuel" in report.reason


def test_corpus_round_trips_through_json(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_text(dump_corpus(CORPUS[:5]))
    assert load_corpus(str(path)) == CORPUS[:5]


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 25
    assert len({e.name for e in CORPUS}) == len(CORPUS)
