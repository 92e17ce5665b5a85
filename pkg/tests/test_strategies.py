"""Strategies: validation clauses, copycat, interaction, composition,
winning and bracketing checks.

The nested-boolean game used below is loli(loli(bool, bool), bool); the
two hand-frozen plays on it are the fully nested question/answer play
(valid, well-bracketed) and the short-circuit play that answers the
outer question while the inner one is still open (its played segment
[inner question, outer answer] has payoff (0, 1)).
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from cgw.algol.gamedefs import bool_game
from cgw.games import loli, tensor, unit_game, game_two, dual
from cgw.strategies import (
    Interaction,
    Strategy,
    StrategyError,
    bottom,
    compose,
    copycat,
    hom_game,
    interact_two,
    interactions,
    is_well_bracketed,
    is_winning,
    split_hom,
    unique_witness,
    validate_strategy,
)

B = bool_game()
U = unit_game()

# the nested game (bool -> bool) -> bool and its figure plays
G3 = loli(loli(B, B), B)
Q3 = ("R", "q")
Q2 = ("L", ("R", "q"))
Q1 = ("L", ("L", "q"))
V1 = ("L", ("L", "tt"))
V2 = ("L", ("R", "tt"))
V3 = ("R", "tt")
NESTED_PLAY = (Q3, Q2, Q1, V1, V2, V3)
SHORT_CIRCUIT = (Q3, Q2, Q1, V3)


def const_tt() -> Strategy:
    g = hom_game(U, B)
    return Strategy.from_plays(g, [(), (("R", "q"), ("R", "tt"))], name="const_tt")


# ---- validation ---- #


def test_bottom_is_valid():
    assert validate_strategy(bottom(B)).ok


def test_validate_flags_nondeterminism():
    s = Strategy.from_plays(B, [(), ("q", "tt"), ("q", "ff")])
    report = validate_strategy(s)
    assert report.clauses() == {"nondeterministic"}


def test_validate_flags_missing_empty_play():
    s = Strategy.from_plays(B, [("q", "tt")])
    assert "missing-empty-play" in validate_strategy(s).clauses()


def test_validate_flags_bad_shapes():
    s = Strategy.from_plays(B, [(), ("q",)])
    assert "odd-length" in validate_strategy(s).clauses()
    s = Strategy.from_plays(B, [(), ("tt", "q")])
    clauses = validate_strategy(s).clauses()
    assert "not-a-path" in clauses or "not-alternating" in clauses
    s = Strategy.from_plays(B, [(), ("q", "q")])
    assert "not-a-path" in validate_strategy(s).clauses()


def test_validate_flags_prefix_gap():
    g = hom_game(B, B)
    full = (("R", "q"), ("L", "q"), ("L", "tt"), ("R", "tt"))
    s = Strategy.from_plays(g, [(), full])
    assert "not-even-prefix-closed" in validate_strategy(s).clauses()


# ---- copycat ---- #


def test_copycat_unit_is_empty():
    assert copycat(U).plays() == frozenset({()})


def test_copycat_bool_plays():
    cc = copycat(B)
    plays = cc.plays()
    assert (("R", "q"), ("L", "q"), ("L", "tt"), ("R", "tt")) in plays
    assert (("R", "q"), ("L", "q"), ("L", "ff"), ("R", "ff")) in plays
    assert (("R", "q"), ("L", "q"), ("L", "tt"), ("R", "ff")) not in plays
    assert len(plays) == 4
    assert validate_strategy(cc).ok
    assert is_winning(cc).winning


def test_copycat_membership_without_materialising():
    cc = copycat(B)
    assert (("R", "q"), ("L", "q")) in cc
    assert (("L", "q"),) not in cc


# ---- interactions ---- #


def test_interactions_of_bottoms():
    result = interactions(U, B, B, bottom(hom_game(U, B)), bottom(hom_game(B, B)))
    assert [i.moves for i in result] == [()]


def test_interactions_copycat_copycat():
    cc = copycat(B)
    result = interactions(B, B, B, cc, cc)
    assert len(result) == 4
    full = [i for i in result if len(i) == 6]
    assert len(full) == 2
    for i in full:
        assert i.project("AB") in cc.plays()
        assert i.project("BC") in cc.plays()


def test_interactions_never_enter_middle_when_sigma_ignores_it():
    sigma = const_tt()
    tau = copycat(B)
    result = interactions(U, B, B, sigma, tau)
    assert len(result) == 2
    for i in result:
        assert i.project("AB") in sigma.plays()


def test_interactions_game_mismatch():
    with pytest.raises(StrategyError):
        interactions(B, B, B, const_tt(), copycat(B))


# ---- composition ---- #


def test_compose_identity_laws_explicit():
    sigma = const_tt()
    assert compose(sigma, copycat(B)).plays() == sigma.plays()
    assert compose(copycat(U), sigma).plays() == sigma.plays()


def test_compose_copycats_is_copycat():
    cc = copycat(B)
    assert compose(cc, cc).plays() == cc.plays()


def test_compose_game_shape():
    out = compose(const_tt(), copycat(B))
    a, c = split_hom(out.game)
    assert a == U and c == B


def test_compose_middle_mismatch():
    with pytest.raises(StrategyError):
        compose(const_tt(), copycat(U))


def test_compose_output_is_valid_strategy():
    out = compose(const_tt(), copycat(B))
    assert validate_strategy(out).ok


# ---- unique witness ---- #


def test_unique_witness_threads_through_middle():
    cc = copycat(B)
    play = (("R", "q"), ("L", "q"), ("L", "tt"), ("R", "tt"))
    w = unique_witness(play, cc, cc)
    assert w.moves == (
        ("C", "q"),
        ("B", "q"),
        ("A", "q"),
        ("A", "tt"),
        ("B", "tt"),
        ("C", "tt"),
    )
    assert w.project("AC") == play


def test_unique_witness_prefix_monotone():
    cc = copycat(B)
    play = (("R", "q"), ("L", "q"), ("L", "tt"), ("R", "tt"))
    whole = unique_witness(play, cc, cc).moves
    half = unique_witness(play[:2], cc, cc).moves
    assert whole[: len(half)] == half
    assert unique_witness((), cc, cc).moves == ()


def test_unique_witness_rejects_foreign_play():
    cc = copycat(B)
    with pytest.raises(StrategyError, match="no interaction"):
        unique_witness((("R", "q"), ("L", "q"), ("L", "tt"), ("R", "ff")), cc, cc)


# ---- winning ---- #


def test_answerer_is_winning():
    s = Strategy.from_plays(B, [(), ("q", "tt")])
    assert is_winning(s).winning


def test_bottom_is_winning():
    assert is_winning(bottom(B)).winning


def test_short_circuit_strategy_is_not_winning():
    s = Strategy.from_plays(G3, [(), (Q3, Q2), SHORT_CIRCUIT])
    assert validate_strategy(s).ok
    report = is_winning(s)
    assert not report.winning
    assert report.violations == [(SHORT_CIRCUIT, 2, (0, 1))]


def test_nested_strategy_is_winning():
    s = Strategy.from_plays(
        G3, [(), (Q3, Q2), (Q3, Q2, Q1, V1), NESTED_PLAY]
    )
    assert validate_strategy(s).ok
    assert is_winning(s).winning


# ---- bracketing ---- #


def test_empty_play_is_well_bracketed():
    assert is_well_bracketed(B, (), "both")


def test_nested_play_is_well_bracketed_both_modes():
    assert is_well_bracketed(G3, NESTED_PLAY, "player")
    assert is_well_bracketed(G3, NESTED_PLAY, "opponent")
    assert is_well_bracketed(G3, NESTED_PLAY, "both")


def test_short_circuit_play_fails_player_bracketing():
    assert not is_well_bracketed(G3, SHORT_CIRCUIT, "player")
    assert not is_well_bracketed(G3, SHORT_CIRCUIT, "both")


def test_winning_strategies_play_player_bracketed():
    for s in (copycat(B), const_tt(), bottom(B)):
        assert is_winning(s).winning
        for play in s.plays():
            assert is_well_bracketed(s.game, play, "player")


# ---- prompted interaction ---- #


def test_interact_two_literal():
    sigma = Strategy.from_plays(B, [(), ("q", "tt")])
    trigger_game = hom_game(B, game_two())
    tau = Strategy.from_plays(
        trigger_game, [(), (("R", "2m"), ("L", "q"))], name="forwarder"
    )
    result = interact_two(sigma, tau)
    assert result == frozenset({(), ("q", "tt")})
    assert all(is_well_bracketed(B, p, "both") for p in result)


def test_interact_two_bottom():
    tau = bottom(hom_game(B, game_two()))
    assert interact_two(Strategy.from_plays(B, [(), ("q", "tt")]), tau) == frozenset({()})


# ---- randomised laws ---- #


def random_strategy(game, draw_bool, name="rand"):
    """Build a valid strategy by walking the game: each Opponent move is
    included or not; each included one gets the first enabled reply."""
    plays = {()}

    def go(pos, prefix):
        for m, dst in game.enabled(pos):
            if game.polarity(m) != -1 or not draw_bool():
                continue
            replies = [(n, d2) for n, d2 in game.enabled(dst) if game.polarity(n) == +1]
            if not replies:
                continue
            n, d2 = replies[0] if not draw_bool() else replies[-1]
            plays.add(prefix + (m, n))
            go(d2, prefix + (m, n))

    go(game.root, ())
    return Strategy.from_plays(game, plays, name=name)


@st.composite
def bool_hom_strategies(draw):
    g = hom_game(B, B)
    return random_strategy(g, lambda: draw(st.booleans()))


@given(bool_hom_strategies())
@settings(max_examples=40, deadline=None, derandomize=True)
def test_random_strategies_validate(sigma):
    assert validate_strategy(sigma).ok


@given(bool_hom_strategies())
@settings(max_examples=30, deadline=None, derandomize=True)
def test_identity_laws_random(sigma):
    assert compose(sigma, copycat(B)).plays() == sigma.plays()
    assert compose(copycat(B), sigma).plays() == sigma.plays()


@given(bool_hom_strategies(), bool_hom_strategies())
@settings(max_examples=20, deadline=None, derandomize=True)
def test_associativity_random(s2, s3):
    s1 = const_tt()
    left = compose(compose(s1, s2), s3).plays()
    right = compose(s1, compose(s2, s3)).plays()
    assert left == right


@given(bool_hom_strategies(), bool_hom_strategies())
@settings(max_examples=20, deadline=None, derandomize=True)
def test_compose_output_valid_random(s2, s3):
    out = compose(s2, s3)
    assert validate_strategy(out).ok


@given(bool_hom_strategies(), bool_hom_strategies())
@settings(max_examples=20, deadline=None, derandomize=True)
def test_witnesses_unique_and_monotone_random(s2, s3):
    out = compose(s2, s3)
    for play in out.plays():
        w = unique_witness(play, s2, s3)
        assert w.project("AC") == play
        if len(play) >= 2:
            half = unique_witness(play[:-2], s2, s3)
            assert w.moves[: len(half.moves)] == half.moves
