import pytest

from conftest import random_graph, reference_winner
from domatic_game.errors import CapacityError, UsageError
from domatic_game.game import ALICE, BOB, GameConfig, Move, apply_move, new_game, status
from domatic_game.graphs import (
    Complete,
    CompleteBipartite,
    Cycle,
    Path,
    domatic_number,
    from_edge_list,
    generate,
)
from domatic_game.solver import (
    ProfileCapacityError,
    Solver,
    SolverLimits,
    WinProfile,
    canonical_state_bound,
    game_domatic_numbers,
    optimal_move,
    solve,
    solve_many,
    win_profile,
)


def winner(spec, k, first=ALICE):
    return solve(GameConfig(generate(spec), k, first))[0]


def test_solve_examples():
    assert winner(Cycle(3), 2) is ALICE
    assert winner(Cycle(5), 2, BOB) is BOB
    assert winner(Path(6), 1) is ALICE
    assert winner(Path(6), 1, BOB) is ALICE


def test_profiles():
    k4 = generate(Complete(4))
    assert win_profile(k4, ALICE, 5).letters() == "AABBB"
    assert win_profile(generate(Path(4)), BOB).letters() == "AA"
    assert win_profile(generate(Path(5)), BOB).letters() == "AB"


@pytest.mark.parametrize("spec,expected", [
    (Complete(6), (3, 4)), (Cycle(6), (1, 2)), (CompleteBipartite(2, 3), (2, 1)),
    (Path(4), (1, 2)), (Path(5), (1, 1)), (Cycle(5), (1, 1)),
])
def test_game_numbers(spec, expected):
    nums = game_domatic_numbers(generate(spec))
    assert (nums.dg, nums.dg_delayed) == expected


def test_optimal_move_examples():
    c4 = GameConfig(generate(Cycle(4)), 2)
    s = apply_move(new_game(c4), Move(0, 1))
    assert optimal_move(s) == Move(1, 1)
    k1 = GameConfig(generate(Complete(1)), 1)
    assert optimal_move(new_game(k1)) == Move(0, 1)
    p2 = GameConfig(generate(Path(2)), 2)
    # Alice loses P2 with two colours whatever she does
    assert optimal_move(new_game(p2)) == Move(0, 1)


def test_optimal_move_plays_out_the_win(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 6), 0.6)
        k = rng.randint(1, 3)
        cfg = GameConfig(g, k, rng.choice([ALICE, BOB]))
        solver = Solver(cfg)
        w = solver.winner()
        s = new_game(cfg)
        while not status(s).decided:
            s = apply_move(s, solver.optimal_move(s))
        assert status(s).winner is w


def test_optimal_move_rejects_decided_state():
    cfg = GameConfig(generate(Path(2)), 2)
    s = apply_move(apply_move(new_game(cfg), Move(0, 1)), Move(1, 1))
    with pytest.raises(UsageError):
        optimal_move(s)


def test_capacity_guard():
    g = generate(Cycle(12))
    tight = SolverLimits(max_states=1000)
    assert canonical_state_bound(12, 3) > 1000
    with pytest.raises(CapacityError):
        solve(GameConfig(g, 3), tight)
    with pytest.raises(ProfileCapacityError) as exc:
        win_profile(g, ALICE, 3, tight)
    assert exc.value.k == 1


def test_agrees_with_reference_solver(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 6), rng.choice([0.3, 0.5, 0.8]))
        k = rng.randint(1, 3)
        for first in (ALICE, BOB):
            got = solve(GameConfig(g, k, first))[0]
            assert got.value == reference_winner(g, k, first is ALICE)


def test_memo_does_not_change_answers(rng):
    off = SolverLimits(memoize=False)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 6), 0.5)
        k = rng.randint(1, 3)
        cfg = GameConfig(g, k, rng.choice([ALICE, BOB]))
        assert solve(cfg)[0] is solve(cfg, off)[0]


def test_tiny_memo_still_correct(rng):
    small = SolverLimits(memo_capacity=8, depth_threshold=2)
    for _ in range(20):
        g = random_graph(rng, rng.randint(3, 7), 0.5)
        cfg = GameConfig(g, 2, ALICE)
        assert solve(cfg, small)[0].value == reference_winner(g, 2, True)


def test_game_number_bounded_by_domatic_number(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 7), 0.6)
        nums = game_domatic_numbers(g)
        d = domatic_number(g)
        assert nums.dg <= d and nums.dg_delayed <= d


def test_win_profile_round_trip():
    prof = win_profile(generate(Complete(4)), BOB, 4)
    assert WinProfile.from_dict(prof.to_dict()) == prof
    assert prof.winner(1) is ALICE


def test_solve_many_keeps_order():
    cfgs = [GameConfig(generate(s), k) for s, k in
            [(Cycle(3), 2), (Path(2), 2), (Complete(4), 2), (Complete(4), 3)]]
    serial = solve_many(cfgs)
    assert serial == [ALICE, BOB, ALICE, BOB]
    assert solve_many(cfgs, workers=2) == serial


def test_isolated_vertex_means_bob_from_k2():
    g = from_edge_list(3, [(0, 1)])
    assert win_profile(g, ALICE, 2).letters() == "AB"


def test_stats_are_populated():
    _, st = solve(GameConfig(generate(Cycle(6)), 2))
    assert st.states_expanded > 0
    assert set(st.as_dict()) == {"states_expanded", "memo_hits", "peak_table_size", "elapsed"}
