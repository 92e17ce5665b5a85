"""Replicated games and their comonoid structure."""

import pytest
from hypothesis import given, settings, strategies as st

from cgw.algol.gamedefs import bool_game
from cgw.corpus import random_game
from cgw.exponential import (
    ComonoidStructure,
    ExponentialError,
    bang,
    check_comonoid_negative,
    comonoid_law_check,
    comonoid_structure,
    comult,
    counit,
    dereliction,
)
from cgw.games import Path, dual, tensor, unit_game
from cgw.monoidal import StrategyMorphism, morphism_from_plays
from cgw.strategies import copycat, hom_game, validate_strategy
from cgw.wiring import PortPair, wiring_strategy

B = bool_game()


def all_plays(game, limit=64):
    out = []

    def go(pos, prefix):
        out.append(prefix)
        if len(prefix) >= limit:
            raise AssertionError("game deeper than expected")
        for m, dst in game.enabled(pos):
            go(dst, prefix + (m,))

    go(game.root, ())
    return out


# --------------------------------------------------------------------------- #
# the replicated game
# --------------------------------------------------------------------------- #


def test_bang_rejects_bad_parameters():
    with pytest.raises(ExponentialError):
        bang(B, 0)
    with pytest.raises(ExponentialError):
        bang(dual(B), 2)


def test_bang_bool_two_shape():
    bg = bang(B, 2)
    assert len(bg.positions) == 13
    assert len(bg.edges) == 18
    assert bg.negative
    assert bg.game is bg


def test_bang_prefix_discipline():
    bg = bang(B, 2)
    assert not bg.is_play(((1, "q"),))
    assert bg.is_play(((0, "q"), (1, "q")))
    assert bg.is_play(((0, "q"), (0, "tt"), (1, "q")))


def test_bang_polarity_inherited():
    bg = bang(B, 2)
    assert bg.polarity((0, "q")) == B.polarity("q")
    assert bg.polarity((1, "tt")) == B.polarity("tt")


def test_bang_payoff_sums_per_copy():
    bg = bang(B, 2)
    expected = {
        ((0, "q"),): (0, 1),
        ((0, "q"), (1, "q")): (0, 2),
        ((0, "q"), (0, "tt")): (0, 0),
        ((0, "q"), (1, "q"), (0, "tt")): (0, 1),
    }
    for moves, value in expected.items():
        assert bg.payoff_of(Path(bg.root, moves)) == value


def test_bang_one_copy_is_base_relabelled():
    bg = bang(B, 1)
    base_plays = {tuple((0, m) for m in p) for p in all_plays(B)}
    assert set(all_plays(bg)) == base_plays
    for p in all_plays(B):
        lifted = tuple((0, m) for m in p)
        assert bg.payoff.of(bg.root, lifted) == B.payoff.of(B.root, p)


def test_bang_embeds_in_wider_truncation():
    small, big = bang(B, 2), bang(B, 3)
    for p in all_plays(small):
        assert big.is_play(p)
        assert big.payoff.of(big.root, p) == small.payoff.of(small.root, p)


def test_bang_equality_is_structural():
    assert bang(B, 2) == bang(B, 2)
    assert bang(B, 2) != bang(B, 3)
    assert hash(bang(B, 2)) == hash(bang(B, 2))


# --------------------------------------------------------------------------- #
# structure maps
# --------------------------------------------------------------------------- #


def test_counit_is_silent():
    e = counit(bang(B, 2))
    assert e.dst == unit_game()
    assert e.plays() == frozenset({()})


def test_dereliction_single_copy_is_identity_mirror():
    bg = bang(B, 1)
    der = dereliction(bg)
    relabelled = frozenset(
        tuple(("L", (0, mv[1])) if mv[0] == "L" else mv for mv in p)
        for p in copycat(B).plays()
    )
    assert der.plays() == relabelled


def test_dereliction_two_copies_uses_only_first():
    der = dereliction(bang(B, 2))
    plays = der.plays()
    thread = (("R", "q"), ("L", (0, "q")), ("L", (0, "tt")), ("R", "tt"))
    assert thread in plays
    for p in plays:
        for mv in p:
            if mv[0] == "L":
                assert mv[1][0] == 0


def test_comult_validates_and_routes_in_opening_order():
    d = comult(bang(B, 2))
    assert validate_strategy(d.strat, max_len=4).violations == []
    plays = d.plays(4)
    left_then_right = (
        ("R", ("L", (0, "q"))),
        ("L", (0, "q")),
        ("R", ("R", (0, "q"))),
        ("L", (1, "q")),
    )
    assert left_then_right in plays
    # opening the right half first claims source copy 0 for it
    assert (("R", ("R", (0, "q"))), ("L", (0, "q"))) in plays


def test_comult_overflow_caps_distinct_destination_copies():
    for k in (1, 2):
        d = comult(bang(B, k))
        for p in d.plays():
            opened = {mv[1][0] for mv in p if mv[0] == "R"}
            assert len(opened) <= k


def test_comult_mirrors_answers_back():
    d = comult(bang(B, 1))
    assert (
        ("R", ("L", (0, "q"))),
        ("L", (0, "q")),
        ("L", (0, "ff")),
        ("R", ("L", (0, "ff"))),
    ) in d.plays()


# --------------------------------------------------------------------------- #
# comonoid laws
# --------------------------------------------------------------------------- #


@pytest.mark.parametrize("copies", [1, 2])
def test_comonoid_laws_hold(copies):
    report = comonoid_law_check(comonoid_structure(bang(B, copies)), max_len=4)
    assert report.ok, [c.law for c in report.failures()]
    assert [c.law for c in report.checks] == [
        "counit-left",
        "counit-right",
        "coassociativity",
        "cocommutativity",
    ]
    for c in report.checks:
        assert c.left_size == c.right_size
        assert c.witness is None


def test_law_check_reports_witness_for_broken_duplication():
    bg = bang(B, 2)
    pair_game = tensor(bg, bg)
    left_only = StrategyMorphism(
        bg,
        pair_game,
        wiring_strategy(
            hom_game(bg, pair_game),
            [PortPair(("L",), bg, ("R", "L"), bg)],
            name="left-only-dup",
        ),
    )
    hacked = ComonoidStructure(counit(bg), left_only, dereliction(bg))
    report = comonoid_law_check(hacked, max_len=4)
    outcomes = {c.law: c for c in report.checks}
    assert not report.ok
    assert not outcomes["cocommutativity"].passed
    assert outcomes["cocommutativity"].witness == (
        ("R", ("L", (0, "q"))),
        ("L", (0, "q")),
    )
    assert not outcomes["counit-left"].passed
    assert outcomes["counit-right"].passed
    assert outcomes["coassociativity"].passed


# --------------------------------------------------------------------------- #
# negativity probe
# --------------------------------------------------------------------------- #


def test_negative_carrier_short_circuits():
    bg = bang(B, 2)
    report = check_comonoid_negative(bg, comult(bg))
    assert report.negative and bool(report)
    assert report.square_commutes is None
    assert not report.demonstrated


def test_unit_game_counts_as_negative():
    u = unit_game()
    d = morphism_from_plays(u, tensor(u, u), [()])
    assert check_comonoid_negative(u, d).negative


def test_positive_carrier_with_destination_traffic_fails_square():
    D = dual(B)
    touching = morphism_from_plays(
        D, tensor(D, D), [(), (("L", "q"), ("R", ("L", "q")))]
    )
    report = check_comonoid_negative(D, touching)
    assert not report.negative and not bool(report)
    assert report.square_commutes is False
    assert report.demonstrated
    assert report.witness == (("L", "q"), ("R", ("L", "q")))


def test_positive_carrier_with_source_only_duplication_evades_probe():
    # A duplication that never plays in its destination commutes with the
    # symmetry twist even on a Player-opening carrier, so the probe
    # reports the square intact rather than claiming a demonstration.
    D = dual(B)
    src_only = morphism_from_plays(D, tensor(D, D), [(), (("L", "q"), ("L", "tt"))])
    report = check_comonoid_negative(D, src_only)
    assert not report.negative
    assert report.square_commutes is True
    assert not report.demonstrated


def test_negativity_probe_rejects_mismatched_duplication():
    bg = bang(B, 2)
    with pytest.raises(ExponentialError):
        check_comonoid_negative(B, comult(bg))


# --------------------------------------------------------------------------- #
# randomized coverage
# --------------------------------------------------------------------------- #


@settings(max_examples=12, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=400), st.integers(min_value=1, max_value=2))
def test_comonoid_laws_on_random_negative_bases(seed, copies):
    import random

    base = random_game(random.Random(seed), max_positions=4, negative=True)
    report = comonoid_law_check(comonoid_structure(bang(base, copies)), max_len=4)
    assert report.ok, [c.law for c in report.failures()]
