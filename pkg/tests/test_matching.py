import random

import pytest

from rainbowtx.collection import GraphCollection, canon, color_set, verify_transversal
from rainbowtx.errors import InputError
from rainbowtx.generators import gen_random_dirac, gen_two_cliques
from rainbowtx.matching import (
    MatchingStats,
    MatchState,
    build_match_digraph,
    complete_free_high_indeg,
    final_augment,
    find_perfect_matching,
    grow_matching_step,
    reduce_matched_high_indeg,
    validate_match_state,
)
from rainbowtx.oracle import brute_perfect_matching

from conftest import complete, copies


def kn(n):
    return copies(n, complete(n), n // 2)


def test_greedy_first_edge():
    g = kn(6)
    new = grow_matching_step(MatchState(6, 3), g)
    assert new.items == ((0, 1, 1),)


def test_weight_swap_picks_the_valid_pairing():
    # free 0..3, matched 4-5 in color 3; colors 1 and 2 have no edge among the
    # free vertices, so only the swap can grow the matching
    g = GraphCollection.from_edges(6, [[(0, 4), (0, 5)], [(1, 5)], [(4, 5)]])
    state = MatchState(6, 3, ((4, 5, 3),))
    stats = MatchingStats()
    new = grow_matching_step(state, g, stats)
    assert stats.moves == {"weight-swap": 1}
    pairings = [((0, a, 1), (1, b, 2)) for a, b in ((4, 5), (5, 4))]
    valid = [p for p in pairings if all(g.has_edge(c, u, v) for u, v, c in p)]
    assert len(valid) == 1
    assert set(new.items) == {(*canon(u, v), c) for u, v, c in valid[0]}
    validate_match_state(new, g)


def test_grow_rejects_full_state():
    g = kn(6)
    state = MatchState(6, 3, ((0, 1, 1), (2, 3, 2)))
    with pytest.raises(InputError):
        grow_matching_step(state, g)


def test_digraph_on_complete_graphs():
    g = kn(8)
    state = MatchState(8, 4, ((0, 1, 1), (2, 3, 2), (4, 5, 3)))
    D = build_match_digraph(state, g)
    for v in range(6):
        assert D.outdeg[v] == 8 - 2
    assert D.outdeg[6] == D.outdeg[7] == 0


def test_digraph_matches_direct_scan():
    n = 10
    g = gen_random_dirac(n, "matching", 2)
    rng = random.Random(2)
    for _ in range(20):
        state = MatchState(n, g.s)
        for _ in range(rng.randrange(0, n // 2)):
            state = grow_matching_step(state, g)
        D = build_match_digraph(state, g)
        partner = state.partner()
        expected = {
            (x, y)
            for x, (z, c) in partner.items()
            for y in range(n)
            if y not in (x, z) and c in color_set(g, (x, y))
        }
        got = {(u, v) for u in range(n) for v in range(n) if D.has_arc(u, v)}
        assert got == expected
        g = gen_random_dirac(n, "matching", rng.randrange(1000))


def test_complete_free_on_k6():
    g = kn(6)
    state = MatchState(6, 3, ((0, 1, 1), (2, 3, 2)))
    stats = MatchingStats()
    t = complete_free_high_indeg(state, build_match_digraph(state, g), g, stats)
    assert verify_transversal(g, t, "matching").valid


def test_complete_free_returns_none_below_bound():
    # colors 1 and 2 only ever appear on their own matched edge
    g = GraphCollection.from_edges(6, [[(0, 1)], [(2, 3)], [(4, 5)]])
    state = MatchState(6, 3, ((0, 1, 1), (2, 3, 2)))
    assert complete_free_high_indeg(state, build_match_digraph(state, g), g) is None
    assert reduce_matched_high_indeg(state, build_match_digraph(state, g), g) is None


def test_reduce_on_k8_uses_first_case():
    g = kn(8)
    state = MatchState(8, 4, ((0, 1, 1), (2, 3, 2), (4, 5, 3)))
    stats = MatchingStats()
    out = reduce_matched_high_indeg(state, build_match_digraph(state, g), g, stats)
    assert out is not None and stats.moves == {"reduce-reassign": 1}
    validate_match_state(out, g)


@pytest.mark.parametrize(
    "n,seed,items,move",
    [
        (8, 15, ((0, 2, 4), (1, 4, 1), (3, 7, 2)), "reduce-reassign"),
        (8, 287, ((0, 4, 2), (2, 7, 1), (3, 5, 3)), "reduce-swap"),
    ],
)
def test_reduce_branches_leave_a_high_indegree_free_vertex(n, seed, items, move):
    g = gen_random_dirac(n, "matching", seed, density=0.0)
    state = MatchState(n, g.s, items)
    validate_match_state(state, g)
    D = build_match_digraph(state, g)
    stats = MatchingStats()
    out = reduce_matched_high_indeg(state, D, g, stats)
    assert stats.moves == {move: 1}
    validate_match_state(out, g)
    assert out.size == state.size
    D2 = build_match_digraph(out, g)
    ell = n // 2 - 1
    assert max(D2.indeg[z] for z in out.free) >= ell
    t = complete_free_high_indeg(out, D2, g)
    assert verify_transversal(g, t, "matching").valid


def test_final_augment_on_k6():
    g = kn(6)
    state = MatchState(6, 3, ((0, 1, 1), (2, 3, 2)))
    t = final_augment(state, build_match_digraph(state, g), g)
    assert verify_transversal(g, t, "matching").valid


@pytest.mark.parametrize(
    "n,seed,items,move",
    [
        (6, 58, ((1, 3, 2), (0, 4, 1)), "final-direct"),
        (6, 284, ((0, 5, 1), (1, 2, 3)), "final-reanchor"),
        (6, 10, ((2, 3, 2), (0, 1, 1)), "final-swap"),
    ],
)
def test_final_augment_branches(n, seed, items, move):
    g = gen_random_dirac(n, "matching", seed, density=0.0)
    state = MatchState(n, g.s, items)
    validate_match_state(state, g)
    stats = MatchingStats()
    t = final_augment(state, build_match_digraph(state, g), g, stats)
    assert move in stats.moves
    assert verify_transversal(g, t, "matching").valid


def test_completion_steps_need_target_size():
    g = kn(8)
    state = MatchState(8, 4, ((0, 1, 1),))
    D = build_match_digraph(state, g)
    for fn in (complete_free_high_indeg, reduce_matched_high_indeg, final_augment):
        with pytest.raises(InputError):
            fn(state, D, g)


def test_find_small_cases():
    g = copies(4, complete(4), 2)
    assert find_perfect_matching(g).phi == {(0, 1): 1, (2, 3): 2}
    g2 = GraphCollection.from_edges(2, [[(0, 1)]])
    assert find_perfect_matching(g2).phi == {(0, 1): 1}


def test_find_n40():
    g = gen_random_dirac(40, "matching", 13)
    assert verify_transversal(g, find_perfect_matching(g), "matching").valid


def test_find_rejects_non_dirac():
    g = GraphCollection.from_edges(4, [[(0, 1), (2, 3)], [(1, 2), (0, 3)]])
    with pytest.raises(InputError):
        find_perfect_matching(g)
    with pytest.raises(InputError):
        find_perfect_matching(copies(5, complete(5), 2))


@pytest.mark.parametrize("n", range(4, 17, 2))
def test_find_near_threshold_agrees_with_brute(n):
    for seed in range(6):
        g = gen_random_dirac(n, "matching", seed, density=0.0)
        t = find_perfect_matching(g)
        assert verify_transversal(g, t, "matching").valid
        if n <= 10:
            assert brute_perfect_matching(g) is not None


def test_two_cliques_matching_is_solved_by_brute_not_required_by_solver():
    g = gen_two_cliques(8, "matching")
    with pytest.raises(InputError):
        find_perfect_matching(g)
    assert brute_perfect_matching(g) is not None
