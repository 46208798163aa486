import pytest

from conftest import random_graph
from domatic_game.errors import (
    ApplicabilityError,
    CapacityError,
    InputError,
    StrategyFault,
    UsageError,
)
from domatic_game.experiments import grow_trees
from domatic_game.game import ALICE, BOB, GameConfig, Move, Status, apply_move, new_game
from domatic_game.graphs import (
    Bowtie,
    CompleteBipartite,
    Cycle,
    DisjointUnion,
    Grid,
    Path,
    Subdivision,
    generate,
    has_perfect_matching,
)
from domatic_game.solver import SolverLimits, solve
from domatic_game.strategies import (
    REFUTED,
    RandomStrategy,
    Strategy,
    alice_matching_follower,
    bipartite_general,
    bob_cycle,
    bob_flood,
    bob_grid2,
    bob_subdivision,
    bob_tree_peeler,
    build_strategy,
    play_match,
    theorem_values,
    validate_strategy,
)


def cfg(spec_or_graph, k, first):
    g = generate(spec_or_graph) if not hasattr(spec_or_graph, "adjacency") else spec_or_graph
    return GameConfig(g, k, first)


def first_reply(strategy, config, opening):
    mem = strategy.reset(config)
    s = new_game(config)
    mem = strategy.observe(mem, s, opening)
    return strategy.choose(apply_move(s, opening), mem)[0]


def test_matching_follower_replies():
    c6 = cfg(Cycle(6), 2, BOB)
    assert first_reply(alice_matching_follower([(0, 1), (2, 3), (4, 5)]), c6, Move(0, 1)) \
        == Move(1, 2)
    p4 = cfg(Path(4), 2, BOB)
    assert first_reply(alice_matching_follower(), p4, Move(3, 2)) == Move(2, 1)


def test_matching_follower_applicability():
    with pytest.raises(ApplicabilityError):
        alice_matching_follower().reset(cfg(Cycle(6), 2, ALICE))
    with pytest.raises(ApplicabilityError):
        alice_matching_follower().reset(cfg(Path(5), 2, BOB))
    with pytest.raises(ApplicabilityError):
        alice_matching_follower([(0, 2), (1, 3)]).reset(cfg(Path(4), 2, BOB))


def test_matching_follower_holds_on_matched_graphs(rng):
    done = 0
    while done < 12:
        g = random_graph(rng, rng.choice([4, 6, 8]), 0.4)
        if not has_perfect_matching(g):
            continue
        done += 1
        assert validate_strategy(alice_matching_follower(), ALICE, GameConfig(g, 2, BOB)).holds


@pytest.mark.parametrize("spec,k,first", [
    (Path(5), 3, ALICE), (Cycle(5), 4, BOB), (Grid(3, 3), 4, ALICE), (CompleteBipartite(2, 3), 4, BOB),
])
def test_flood_holds_above_min_degree_plus_one(spec, k, first):
    assert validate_strategy(bob_flood(), BOB, cfg(spec, k, first)).holds


def test_flood_follows_alice_into_a_min_degree_neighbourhood():
    p4 = cfg(Path(4), 3, ALICE)
    reply = first_reply(bob_flood(), p4, Move(1, 2))
    assert reply.color == 2 and reply.vertex in (0, 2)


def test_peeler_examples():
    assert validate_strategy(bob_tree_peeler(), BOB, cfg(Path(7), 2, BOB)).holds
    assert validate_strategy(bob_tree_peeler(), BOB, cfg(Path(9), 2, ALICE)).holds
    with pytest.raises(ApplicabilityError):
        bob_tree_peeler().reset(cfg(Path(6), 2, BOB))
    with pytest.raises(ApplicabilityError):
        bob_tree_peeler().reset(cfg(Cycle(6), 2, BOB))


@pytest.mark.slow
def test_peeler_on_all_small_trees():
    for n in range(3, 9):
        for t in grow_trees(n):
            games = [ALICE] if n % 2 else []
            if not has_perfect_matching(t):
                games.append(BOB)
            for first in games:
                report = validate_strategy(bob_tree_peeler(), BOB, GameConfig(t, 2, first))
                assert report.holds, (n, sorted(t.edges), first)


def _bipartite_roles(m, n):
    dg, dgp = theorem_values(m, n)
    g = generate(CompleteBipartite(m, n))
    for first, t in ((ALICE, dg), (BOB, dgp)):
        yield bipartite_general(ALICE), GameConfig(g, t, first)
        for k in (t + 1, t + 2):
            yield bipartite_general(BOB), GameConfig(g, k, first)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (2, 5), (3, 3), (3, 4), (4, 4), (4, 5)])
def test_bipartite_roles_hold(m, n):
    for strat, config in _bipartite_roles(m, n):
        assert validate_strategy(strat, strat.side, config).holds, (strat.side, config.k, config.first)


def test_bipartite_literal_rule_is_refuted_on_k22():
    c = GameConfig(generate(CompleteBipartite(2, 2)), 2, ALICE)
    report = validate_strategy(bipartite_general(BOB, immediate_wins=False), BOB, c)
    assert report.verdict == REFUTED
    line = report.counter_line
    assert line.final is Status.ALICE_WINS and line.replay() is not None


def test_bipartite_applicability():
    with pytest.raises(ApplicabilityError):
        bipartite_general(ALICE).reset(cfg(Cycle(6), 2, ALICE))
    with pytest.raises(ApplicabilityError):
        bipartite_general(ALICE).reset(cfg(CompleteBipartite(3, 3), 3, ALICE))


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_bob_cycle_a_game(n):
    assert validate_strategy(bob_cycle(n), BOB, cfg(Cycle(n), 2, ALICE)).holds


@pytest.mark.parametrize("n", [5, 7, 9])
def test_bob_cycle_b_game_odd(n):
    assert validate_strategy(bob_cycle(n), BOB, cfg(Cycle(n), 2, BOB)).holds


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bob_grid2(n):
    assert validate_strategy(bob_grid2(n), BOB, cfg(Grid(n, 2), 2, ALICE)).holds


def test_bob_subdivision_b_game_on_bowtie():
    base = generate(Bowtie())
    assert validate_strategy(bob_subdivision(base), BOB, cfg(Subdivision(Bowtie()), 2, BOB)).holds


def test_bob_subdivision_against_random_alice():
    spec = DisjointUnion((Bowtie(), Bowtie()))
    config = cfg(Subdivision(spec), 2, ALICE)
    for seed in range(40):
        tr = play_match(RandomStrategy(ALICE, seed), bob_subdivision(generate(spec)), config)
        assert tr.final is Status.BOB_WINS


def test_strategies_agree_with_solver_on_who_wins():
    for spec, strat, first in [(Cycle(7), bob_cycle(7), BOB), (Path(7), bob_tree_peeler(), BOB),
                               (Grid(3, 2), bob_grid2(3), ALICE)]:
        c = cfg(spec, 2, first)
        assert solve(c)[0] is BOB
        assert play_match(RandomStrategy(first, 3) if first is ALICE else strat,
                          strat if first is ALICE else RandomStrategy(ALICE, 3), c).final \
            is Status.BOB_WINS


class _Cheater(Strategy):
    name = "cheater"
    side = ALICE

    def choose(self, state, memory):
        return Move(0, 1), memory


def test_play_match_errors():
    c = cfg(Path(4), 2, BOB)
    with pytest.raises(UsageError):
        play_match(bob_flood(), bob_tree_peeler(), c)
    with pytest.raises(UsageError):
        play_match(alice_matching_follower(), bob_flood(), c)
    with pytest.raises(StrategyFault) as exc:
        play_match(_Cheater(), RandomStrategy(BOB, 0), cfg(Cycle(6), 2, ALICE))
    assert exc.value.ply == 3


def test_validate_usage_errors():
    c = cfg(Path(4), 2, BOB)
    with pytest.raises(UsageError):
        validate_strategy(bob_flood(), ALICE, c)
    with pytest.raises(UsageError):
        validate_strategy(RandomStrategy(BOB, 1), BOB, c)


def test_validate_capacity_guard():
    with pytest.raises(CapacityError):
        validate_strategy(bob_cycle(12), BOB, cfg(Cycle(12), 2, ALICE), SolverLimits(max_states=100))


def test_build_strategy():
    g = generate(Cycle(6))
    assert build_strategy("bob_cycle", g).n == 6
    assert build_strategy("bipartite_general:alice", g).side is ALICE
    assert build_strategy("bipartite_general:bob,immediate_wins=no", g).immediate_wins is False
    assert build_strategy("random:bob,seed=3", g).side is BOB
    assert build_strategy("bob_grid2", generate(Grid(4, 2))).params() == {"n": 4}
    with pytest.raises(InputError):
        build_strategy("bob_subdivision", g)
    with pytest.raises(InputError):
        build_strategy("nope", g)
