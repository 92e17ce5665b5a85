"""Tests for the categorical layer: structural morphisms, currying,
trace, strategy-space comparisons, and the feedback axiom suite."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from cgw.algol.gamedefs import bool_game
from cgw.corpus import random_game, random_strategy
from cgw.games import dual, game_two, tensor, unit_game
from cgw.monoidal import (
    MonoidalError,
    StrategyMorphism,
    assoc_left,
    assoc_right,
    axiom_corpus,
    closure_check,
    curry,
    enumerate_strategies,
    identity,
    mcompose,
    morphism_from_plays,
    neg_adjunction_check,
    rotate,
    symmetry,
    tensor_morphism,
    trace,
    trace_axiom_suite,
    trace_parts,
    uncurry,
)
from cgw.strategies import (
    copycat,
    hom_game,
    is_winning,
    unique_witness,
    validate_strategy,
)
from cgw.wiring import PortPair, wiring_strategy

B = bool_game()
U = unit_game()
TWO = game_two()


def const_tt() -> StrategyMorphism:
    """The arrow unit -> bool answering the question with tt."""
    return morphism_from_plays(
        U, B, [(), (("R", "q"), ("R", "tt"))], name="const_tt"
    )


def seeded_arrow(src, dst, seed: int) -> StrategyMorphism:
    rng = random.Random(seed)
    return StrategyMorphism(src, dst, random_strategy(hom_game(src, dst), rng))


# --------------------------------------------------------------------------- #
# morphism basics
# --------------------------------------------------------------------------- #


def test_morphism_shape_is_checked():
    with pytest.raises(MonoidalError, match="does not live"):
        StrategyMorphism(B, U, copycat(B))


def test_identity_is_neutral_for_composition():
    f = const_tt()
    assert mcompose(identity(U), f) == f
    assert mcompose(f, identity(B)) == f
    assert mcompose(identity(B), identity(B)) == identity(B)


def test_mcompose_rejects_mismatched_endpoints():
    with pytest.raises(MonoidalError, match="do not meet"):
        mcompose(identity(B), identity(U))
    with pytest.raises(MonoidalError, match="nothing"):
        mcompose()


def test_tensor_of_identities_is_identity_of_tensor():
    assert tensor_morphism(identity(B), identity(TWO)) == identity(tensor(B, TWO))


def test_tensor_morphism_routes_to_components():
    f = tensor_morphism(const_tt(), identity(B))
    answer_left = ((("R", ("L", "q"))), (("R", ("L", "tt"))))
    mirror_right = ((("R", ("R", "q"))), (("L", ("R", "q"))))
    assert answer_left in f.strat
    assert mirror_right in f.strat
    # opponent moves cannot be doubled up: second O move with reply pending
    assert ((("R", ("L", "q"))), (("R", ("R", "q")))) not in f.strat


# --------------------------------------------------------------------------- #
# structural isomorphisms
# --------------------------------------------------------------------------- #


def test_symmetry_round_trip_is_identity():
    assert mcompose(symmetry(B, TWO), symmetry(TWO, B)) == identity(tensor(B, TWO))


def test_assoc_round_trip_is_identity():
    grouped = tensor(tensor(B, TWO), U)
    assert mcompose(assoc_right(B, TWO, U), assoc_left(B, TWO, U)) == identity(grouped)


def test_rotate_round_trip_is_identity():
    nested = tensor(B, tensor(TWO, B))
    assert mcompose(rotate(B, TWO, B), rotate(TWO, B, B)) == identity(nested)


def test_structural_morphisms_are_valid_and_winning():
    for m in (symmetry(B, B), assoc_right(B, TWO, B), rotate(B, TWO, B)):
        report = validate_strategy(m.strat, max_len=8)
        assert report.ok, report.violations
        assert is_winning(m.strat, max_len=8).winning


# --------------------------------------------------------------------------- #
# currying
# --------------------------------------------------------------------------- #


def test_curry_uncurry_round_trip():
    for seed in range(5):
        f = seeded_arrow(tensor(B, TWO), B, seed)
        assert uncurry(curry(f)) == f


def test_curry_requires_tensor_source():
    with pytest.raises(MonoidalError, match="tensor"):
        curry(const_tt())


def test_uncurry_requires_tensor_destination():
    with pytest.raises(MonoidalError, match="tensor"):
        uncurry(seeded_arrow(tensor(B, TWO), B, 0))


def test_curry_of_identity_is_the_rearranged_mirror():
    rearranged = curry(identity(tensor(B, TWO)))
    target = rearranged.strat.game
    independent = wiring_strategy(
        target,
        [
            PortPair(("L",), TWO, ("R", "R", "R"), TWO),
            PortPair(("R", "L"), B, ("R", "R", "L"), B),
        ],
    )
    assert rearranged.strat.plays() == independent.plays()


def test_curry_preserves_winning_verdict():
    for seed in range(6):
        f = seeded_arrow(tensor(B, TWO), B, seed)
        assert (
            is_winning(curry(f).strat).winning == is_winning(f.strat).winning
        )


# --------------------------------------------------------------------------- #
# trace
# --------------------------------------------------------------------------- #


def test_yanking_on_bool():
    assert trace(symmetry(B, B)) == identity(B)


def test_trace_shape_errors():
    with pytest.raises(MonoidalError, match="tensor-shaped"):
        trace(const_tt())
    f = seeded_arrow(tensor(B, U), tensor(TWO, U), 3)
    with pytest.raises(MonoidalError, match="differ"):
        trace(f)


def test_trace_over_unit_factor_is_identity_on_arrows():
    g = morphism_from_plays(
        TWO, B, [(), (("R", "q"), ("L", "2m"))], name="interrogate"
    )
    assert trace(tensor_morphism(identity(U), g)) == g


def test_trace_of_identity_drops_the_looped_factor():
    assert trace(identity(tensor(B, B))) == identity(B)


def test_feedback_loop_traces_to_empty_play_set():
    # the only non-empty plays of this arrow are loops of length 2 through
    # the traced factor; hiding the loop leaves nothing visible
    looped = identity(tensor(B, U))
    traced = trace(looped)
    assert traced.plays() == frozenset({()})
    assert traced == identity(U)


def test_trace_witnesses_exist_and_project_back():
    f = symmetry(B, B)
    f_rotated, collapse = trace_parts(f)
    for play in sorted(trace(f).plays(), key=len):
        witness = unique_witness(play, f_rotated, collapse)
        assert witness.project("AC") == play
        assert witness.project("AB") in f_rotated
        assert witness.project("BC") in collapse


# --------------------------------------------------------------------------- #
# strategy enumeration and space comparisons
# --------------------------------------------------------------------------- #


def test_enumerate_strategies_counts_and_validates():
    space = list(enumerate_strategies(hom_game(B, B)))
    assert len(space) == 12
    for s in space:
        assert validate_strategy(s).ok
    capped = list(enumerate_strategies(hom_game(B, B), max_len=2))
    assert len(capped) == 4


def test_neg_adjunction_on_function_space_destination():
    b = tensor(dual(B), B)
    report = neg_adjunction_check(B, b, max_len=4)
    assert report.ok
    assert report.left_count == report.right_count > 1


def test_neg_adjunction_trivial_when_destination_negative():
    report = neg_adjunction_check(B, B, max_len=4)
    assert report.ok


def test_neg_adjunction_when_destination_opens_with_player():
    report = neg_adjunction_check(B, dual(B), max_len=6)
    assert report.ok
    assert report.left_count == report.right_count == 1


def test_neg_adjunction_with_unit_source():
    report = neg_adjunction_check(U, tensor(dual(B), B), max_len=4)
    assert report.ok


def test_neg_adjunction_requires_negative_source():
    with pytest.raises(MonoidalError, match="negative"):
        neg_adjunction_check(dual(B), B, max_len=2)


def test_closure_check_matches_plain_function_space():
    assert closure_check(B, tensor(dual(B), B), max_len=4).ok
    assert closure_check(U, B, max_len=4).ok
    with pytest.raises(MonoidalError, match="negative"):
        closure_check(dual(B), B, max_len=2)


# --------------------------------------------------------------------------- #
# axiom suite
# --------------------------------------------------------------------------- #


def test_axiom_corpus_is_reproducible():
    first = axiom_corpus(5, 2, max_positions=4)
    second = axiom_corpus(5, 2, max_positions=4)
    assert [i.label for i in first] == [i.label for i in second]
    for one, two in zip(first, second):
        assert one.f_nat.plays() == two.f_nat.plays()
        assert one.f_sld.plays() == two.f_sld.plays()


def test_axiom_suite_passes_on_seeded_corpus():
    report = trace_axiom_suite(axiom_corpus(1, 2, max_positions=4))
    assert report.ok, report.failures()
    # fixed opener plus yanking/naturality/strength/sliding per instance
    assert len(report.checks) == 1 + 4 * 2
    assert len(report.winning_notes) == 2


def test_strength_with_mirror_bystander():
    x, a, b = B, TWO, TWO
    f = seeded_arrow(tensor(x, a), tensor(x, b), 7)
    g = identity(TWO)
    lhs = trace(
        mcompose(
            assoc_left(x, a, TWO),
            tensor_morphism(f, g),
            assoc_right(x, b, TWO),
        )
    )
    assert lhs == tensor_morphism(trace(f), g)


def test_sliding_on_one_move_games():
    x, y = TWO, TWO
    f = rotate(y, x, TWO)
    lhs = trace(trace(mcompose(f, rotate(x, y, TWO))))
    rhs = trace(trace(mcompose(rotate(x, y, TWO), f)))
    assert lhs == rhs
    assert lhs == identity(TWO)


@given(st.integers(0, 25))
@settings(max_examples=26, deadline=None, derandomize=True)
def test_yanking_holds_on_random_games(seed):
    x = random_game(random.Random(seed), max_positions=4, name="x")
    assert trace(symmetry(x, x)) == identity(x)


@given(st.integers(0, 15))
@settings(max_examples=16, deadline=None, derandomize=True)
def test_curry_round_trip_on_random_arrows(seed):
    rng = random.Random(seed)
    a = random_game(rng, 4, name="a")
    b = random_game(rng, 4, name="b")
    c = random_game(rng, 4, name="c")
    f = StrategyMorphism(
        tensor(a, b), c, random_strategy(hom_game(tensor(a, b), c), rng)
    )
    assert uncurry(curry(f)) == f
    assert is_winning(curry(f).strat).winning == is_winning(f.strat).winning
