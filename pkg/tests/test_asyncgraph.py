"""Labelled games: homotopy, independence, innocence, positionality,
and the relational collapse."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from cgw.algol.gamedefs import bool_game
from cgw.asyncgraph import (
    AsyncGame,
    AsyncGameError,
    Relation,
    RelationError,
    concat_respects_homotopy_check,
    experimental_trace_collapse_check,
    homotopic,
    independent,
    independent_paths,
    is_innocent,
    is_positional,
    label_repeat_violations,
    positional_functoriality_check,
    positions_of,
    rel_compose,
    rel_identity,
    rel_tensor,
    rel_trace,
    strategy_relation,
)
from cgw.corpus import random_game
from cgw.exponential import bang
from cgw.games import EdgeSpec, OPPONENT, PLAYER, Path, build_game, product, tensor
from cgw.monoidal import enumerate_strategies, identity
from cgw.strategies import Strategy, bottom, compose, copycat, hom_game

B = bool_game()
BB = tensor(B, B)
GB = AsyncGame(B)
GBB = AsyncGame(BB)
qL, ttL, ffL = ("L", "q"), ("L", "tt"), ("L", "ff")
qR, ttR, ffR = ("R", "q"), ("R", "tt"), ("R", "ff")


def paths_from(game, src, cap=500):
    out = []

    def go(pos, moves):
        out.append(Path(src, moves))
        if len(out) > cap:
            raise AssertionError("path explosion")
        for m, dst in game.enabled(pos):
            go(dst, moves + (m,))

    go(src, ())
    return out


# --------------------------------------------------------------------------- #
# labelling
# --------------------------------------------------------------------------- #


def test_identity_labels_validate_on_stock_games():
    for game in (B, BB, bang(B, 2), hom_game(B, B)):
        AsyncGame(game)  # does not raise


def test_repeated_label_along_path_is_rejected():
    chain = build_game(
        ["r", "x", "y"],
        "r",
        [
            EdgeSpec("a", "r", "x", OPPONENT, asks=(0, 1)),
            EdgeSpec("b", "x", "y", PLAYER, answers=(0, 1)),
        ],
    )
    labels = {"a": "m", "b": "m"}
    bad = label_repeat_violations(chain, lambda mv: labels[mv])
    assert len(bad) == 1
    assert bad[0].label == "m"
    assert bad[0].move == "b"
    assert bad[0].path.moves == ("a",)
    with pytest.raises(AsyncGameError):
        AsyncGame(chain, labels)


def test_labels_default_to_move_ids():
    assert GB.label_of("q") == "q"
    assert AsyncGame(B, {"q": "ask"}).label_of("q") == "ask"


# --------------------------------------------------------------------------- #
# homotopy
# --------------------------------------------------------------------------- #


def test_homotopy_reflexive_on_paths():
    s = Path(B.root, ("q", "tt"))
    assert homotopic(s, s, GB)


def test_cross_component_moves_commute():
    assert homotopic(Path(BB.root, (qL, qR)), Path(BB.root, (qR, qL)), GBB)
    assert homotopic(
        Path(BB.root, (qL, ttL, qR)), Path(BB.root, (qR, qL, ttL)), GBB
    )


def test_question_answer_order_is_rigid():
    # the reversed sequence is not a path, so no homotopy
    assert not homotopic(Path(B.root, ("q", "tt")), Path(B.root, ("tt", "q")), GB)


def test_homotopy_distinguishes_targets():
    assert not homotopic(Path(B.root, ("q", "tt")), Path(B.root, ("q", "ff")), GB)


def test_homotopy_source_mismatch_raises():
    asked = B.step(B.root, "q")
    with pytest.raises(AsyncGameError):
        homotopic(Path(B.root, ("q",)), Path(asked, ("tt",)), GB)


def test_concat_respects_homotopy_on_examples():
    mid = BB.walk(BB.root, (qL, qR))
    corpus = [
        # empty second paths
        (
            Path(BB.root, (qL, qR)),
            Path(BB.root, (qR, qL)),
            Path(mid, ()),
            Path(mid, ()),
        ),
        # swaps on both sides of the cut
        (
            Path(BB.root, (qL, qR)),
            Path(BB.root, (qR, qL)),
            Path(mid, (ttL, ttR)),
            Path(mid, (ttR, ttL)),
        ),
    ]
    report = concat_respects_homotopy_check(GBB, corpus)
    assert report.ok
    assert all(c.passed for c in report.checks)


def test_concat_check_on_branch_of_choice_game():
    pg = product(BB, B)
    G = AsyncGame(pg)
    s1 = Path(pg.root, (("L", qL),))
    mid = pg.walk(pg.root, s1.moves)
    corpus = [
        (
            s1,
            s1,
            Path(mid, (("L", ttL), ("L", qR))),
            Path(mid, (("L", qR), ("L", ttL))),
        )
    ]
    assert concat_respects_homotopy_check(G, corpus).ok


def test_concat_check_flags_bad_endpoints():
    corpus = [
        (
            Path(BB.root, (qL,)),
            Path(BB.root, (qR,)),  # different targets
            Path(BB.walk(BB.root, (qL,)), ()),
            Path(BB.walk(BB.root, (qL,)), ()),
        )
    ]
    report = concat_respects_homotopy_check(GBB, corpus)
    assert not report.ok
    assert not report.checks[0].endpoints_ok


# --------------------------------------------------------------------------- #
# independence
# --------------------------------------------------------------------------- #


def test_empty_path_independent_of_everything():
    t = Path(B.root, ("q", "tt"))
    assert independent_paths(Path(B.root, ()), t, GB)


def test_cross_component_move_is_independent():
    assert independent(qL, Path(BB.root, (qR,)), GBB)
    assert independent_paths(Path(BB.root, (qL,)), Path(BB.root, (qR,)), GBB)


def test_move_not_independent_of_itself():
    assert not independent("q", Path(B.root, ("q",)), GB)


def test_dependent_sequencing_blocks_insertion():
    # the recursion anchors every move of the first path at the shared
    # source, so an answer that only becomes enabled later fails
    assert not independent_paths(
        Path(BB.root, (qL, ttL)), Path(BB.root, (qR, ttR)), GBB
    )
    assert independent_paths(Path(BB.root, (qL,)), Path(BB.root, (qR, ttR)), GBB)


def test_independent_requires_enabled_move():
    with pytest.raises(AsyncGameError):
        independent("tt", Path(B.root, ("q",)), GB)


def test_independent_paths_source_mismatch_raises():
    asked = B.step(B.root, "q")
    with pytest.raises(AsyncGameError):
        independent_paths(Path(B.root, ("q",)), Path(asked, ("tt",)), GB)


# --------------------------------------------------------------------------- #
# innocence
# --------------------------------------------------------------------------- #


def test_bottom_is_innocent():
    report = is_innocent(bottom(BB), GBB)
    assert report.innocent and report.checked and report.precondition_ok


def test_copycat_on_bool_pair_is_innocent():
    cc = copycat(BB)
    report = is_innocent(cc, AsyncGame(cc.game))
    assert report.innocent
    assert len(cc.plays()) == 45


def test_order_sniffing_strategy_fails_forward_consistency():
    sniffer = Strategy.from_plays(
        BB,
        [(), (qL, ttL), (qR, ttR), (qL, ttL, qR, ffR), (qR, ttR, qL, ffL)],
        name="order-sniffer",
    )
    report = is_innocent(sniffer, GBB)
    assert not report.innocent and report.precondition_ok
    forward = [w for w in report.witnesses if w.kind == "forward"]
    assert any(
        w.missing == "rescheduled play missing"
        and w.expected_play == (qL, ttL, qR, ttR)
        for w in forward
    )
    backward = [w for w in report.witnesses if w.kind == "backward"]
    assert any(
        w.expected_play == (qR, ffR, qL, ttL) for w in backward
    )


def test_innocence_requires_winning_strategy():
    leaky = build_game(
        ["r", "x", "y"],
        "r",
        [
            EdgeSpec("q", "r", "x", OPPONENT, asks=(0, 1)),
            EdgeSpec("p", "x", "y", PLAYER),  # answers nothing
        ],
    )
    sigma = Strategy.from_plays(leaky, [(), ("q", "p")])
    report = is_innocent(sigma, AsyncGame(leaky))
    assert not report.precondition_ok
    assert not report.checked
    assert not report.innocent
    assert report.witnesses == []


def test_innocence_game_mismatch_raises():
    with pytest.raises(AsyncGameError):
        is_innocent(bottom(BB), GB)


def test_innocence_preserved_by_composition():
    hom = hom_game(B, B)
    G = AsyncGame(hom)
    innocent = [
        s for s in enumerate_strategies(hom) if is_innocent(s, G).innocent
    ]
    assert len(innocent) >= 2
    for s in innocent:
        for t in innocent:
            st_composed = compose(s, t)
            assert is_innocent(st_composed, G).innocent, (s.plays(), t.plays())


# --------------------------------------------------------------------------- #
# positionality
# --------------------------------------------------------------------------- #


def test_bottom_is_positional():
    assert is_positional(bottom(BB), GBB).positional


def test_route_sensitive_strategy_yields_witness():
    T3 = tensor(B, tensor(B, B))
    q1, tt1 = ("L", "q"), ("L", "tt")
    q2, tt2 = ("R", ("L", "q")), ("R", ("L", "tt"))
    q3, tt3, ff3 = ("R", ("R", "q")), ("R", ("R", "tt")), ("R", ("R", "ff"))
    hist = Strategy.from_plays(
        T3,
        [
            (),
            (q1, tt1),
            (q2, tt2),
            (q1, tt1, q2, tt2),
            (q2, tt2, q1, tt1),
            (q1, tt1, q2, tt2, q3, tt3),
            (q2, tt2, q1, tt1, q3, ff3),
        ],
        name="route-sensitive",
    )
    G3 = AsyncGame(T3)
    report = is_positional(hist, G3)
    assert not report.positional
    assert any(w.continuation == (q3, tt3) for w in report.witnesses)
    # and, consistently, the strategy is not innocent either
    assert not is_innocent(hist, G3).innocent


def test_innocent_implies_positional_exhaustively():
    strategies = list(enumerate_strategies(BB))
    assert len(strategies) == 49
    innocent_count = 0
    for s in strategies:
        if is_innocent(s, GBB).innocent:
            innocent_count += 1
            assert is_positional(s, GBB).positional
    assert innocent_count == 9


def test_positions_of_known_strategies():
    assert positions_of(bottom(B)) == frozenset({B.root})
    answer = Strategy.from_plays(B, [(), ("q", "tt")])
    assert positions_of(answer) == frozenset({B.root, B.walk(B.root, ("q", "tt"))})


def test_innocent_strategies_reconstructible_from_positions():
    groups = {}
    for s in enumerate_strategies(BB):
        if is_innocent(s, GBB).innocent:
            groups.setdefault(positions_of(s), set()).add(s.plays())
    assert groups  # non-trivial corpus
    for plays in groups.values():
        assert len(plays) == 1


def test_positionality_alone_does_not_determine_plays():
    # Two positional strategies reaching identical positions but playing
    # different schedules: position sets characterise innocent strategies,
    # not merely positional ones.
    sig = Strategy.from_plays(BB, [(), (qL, ttL), (qR, ttR), (qL, ttL, qR, ttR)])
    tau = Strategy.from_plays(BB, [(), (qL, ttL), (qR, ttR), (qR, ttR, qL, ttL)])
    assert is_positional(sig, GBB).positional
    assert is_positional(tau, GBB).positional
    assert positions_of(sig) == positions_of(tau)
    assert sig.plays() != tau.plays()
    assert not is_innocent(sig, GBB).innocent


# --------------------------------------------------------------------------- #
# relations
# --------------------------------------------------------------------------- #


def test_relation_rejects_escaping_pairs():
    with pytest.raises(RelationError):
        Relation(frozenset({1}), frozenset({2}), frozenset({(1, 3)}))


def test_rel_compose_and_identity():
    r = Relation(frozenset({1, 2}), frozenset({"a"}), frozenset({(1, "a")}))
    s = Relation(frozenset({"a"}), frozenset({True}), frozenset({("a", True)}))
    assert rel_compose(r, s).pairs == frozenset({(1, True)})
    ident = rel_identity({1, 2})
    assert rel_compose(ident, r).pairs == r.pairs
    with pytest.raises(RelationError):
        rel_compose(r, ident)


def test_rel_tensor_pairs_up_components():
    r = Relation(frozenset({1}), frozenset({"x"}), frozenset({(1, "x")}))
    s = Relation(frozenset({2}), frozenset({"y"}), frozenset({(2, "y")}))
    assert rel_tensor(r, s).pairs == frozenset({((1, 2), ("x", "y"))})


def test_rel_trace_identity_and_examples():
    xs = frozenset({("x1", "a"), ("x2", "a")})
    ident = rel_identity(xs)
    traced = rel_trace(ident)
    assert traced.pairs == frozenset({("a", "a")})

    dom = frozenset({("x1", "a"), ("x2", "a")})
    cod = frozenset({("x1", "b"), ("x2", "b")})
    r = Relation(dom, cod, frozenset({(("x2", "a"), ("x2", "b"))}))
    assert rel_trace(r).pairs == frozenset({("a", "b")})

    empty = Relation(dom, cod, frozenset())
    assert rel_trace(empty).pairs == frozenset()


def test_rel_trace_needs_pair_shaped_carriers():
    with pytest.raises(RelationError):
        rel_trace(rel_identity({1, 2}))


# --------------------------------------------------------------------------- #
# relational collapse of strategies
# --------------------------------------------------------------------------- #


def test_copycat_collapses_to_diagonal():
    assert strategy_relation(copycat(B)) == rel_identity(B.positions)


def test_strategy_relation_needs_two_sided_game():
    with pytest.raises(RelationError):
        strategy_relation(bottom(B))


def test_functoriality_on_copycats():
    rep = positional_functoriality_check(copycat(B), copycat(B))
    assert rep.compose_ok and rep.tensor_ok and rep.ok


def test_functoriality_on_mixed_pair():
    const = Strategy.from_plays(
        hom_game(B, B), [(), (("R", "q"), ("R", "tt"))], name="const-tt"
    )
    rep = positional_functoriality_check(const, copycat(B))
    assert rep.compose_ok and rep.tensor_ok


def test_functoriality_exhaustive_on_small_hom():
    hom = hom_game(B, B)
    G = AsyncGame(hom)
    positional = [
        s for s in enumerate_strategies(hom, max_len=2) if is_positional(s, G).positional
    ]
    assert positional
    for s in positional:
        for t in positional:
            rep = positional_functoriality_check(s, t)
            assert rep.compose_ok and rep.tensor_ok


def test_functoriality_rejects_non_positional_inputs():
    T3 = tensor(B, tensor(B, B))
    q1, tt1 = ("L", "q"), ("L", "tt")
    q2, tt2 = ("R", ("L", "q")), ("R", ("L", "tt"))
    q3, tt3, ff3 = ("R", ("R", "q")), ("R", ("R", "tt")), ("R", ("R", "ff"))
    hist = Strategy.from_plays(
        T3,
        [
            (),
            (q1, tt1),
            (q2, tt2),
            (q1, tt1, q2, tt2),
            (q2, tt2, q1, tt1),
            (q1, tt1, q2, tt2, q3, tt3),
            (q2, tt2, q1, tt1, q3, ff3),
        ],
    )
    with pytest.raises(AsyncGameError):
        positional_functoriality_check(hist, copycat(B))


def test_experimental_trace_collapse_observed_on_identity():
    report = experimental_trace_collapse_check(identity(BB))
    assert report.matches
    assert report.traced.pairs == frozenset((p, p) for p in B.positions)


# --------------------------------------------------------------------------- #
# randomized coverage
# --------------------------------------------------------------------------- #


@settings(max_examples=10, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=300))
def test_homotopy_is_symmetric_and_endpoint_preserving(seed):
    game = random_game(random.Random(seed), max_positions=5)
    G = AsyncGame(game)
    paths = paths_from(game, game.root)
    for s in paths:
        assert homotopic(s, s, G)
    small = [p for p in paths if len(p.moves) <= 4][:12]
    for s1 in small:
        for s2 in small:
            fwd = homotopic(s1, s2, G)
            assert fwd == homotopic(s2, s1, G)
            if fwd:
                assert game.walk(game.root, s1.moves) == game.walk(game.root, s2.moves)
                assert sorted(map(repr, s1.moves)) == sorted(map(repr, s2.moves))


@settings(max_examples=10, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=300))
def test_concat_respects_homotopy_on_random_games(seed):
    game = random_game(random.Random(seed), max_positions=5)
    G = AsyncGame(game)
    quadruples = []
    first_legs = [p for p in paths_from(game, game.root) if len(p.moves) <= 4]
    for s1 in first_legs:
        for s1_alt in first_legs:
            if s1.moves >= s1_alt.moves:
                continue
            mid = game.walk(game.root, s1.moves)
            if mid != game.walk(game.root, s1_alt.moves):
                continue
            if not homotopic(s1, s1_alt, G):
                continue
            second_legs = [p for p in paths_from(game, mid) if len(p.moves) <= 3]
            for s2 in second_legs:
                for s2_alt in second_legs:
                    if s2.moves > s2_alt.moves:
                        continue
                    if game.walk(mid, s2.moves) != game.walk(mid, s2_alt.moves):
                        continue
                    if homotopic(s2, s2_alt, G):
                        quadruples.append((s1, s1_alt, s2, s2_alt))
    report = concat_respects_homotopy_check(G, quadruples[:40])
    assert report.ok
