"""Scripted strategies for both sides, plus a match runner and a validator."""

from __future__ import annotations

from ..errors import InputError
from ..game import ALICE, BOB, Player
from ..graphs import Graph
from .base import (
    HOLDS,
    REFUTED,
    RandomStrategy,
    Strategy,
    ValidationReport,
    bob_winning_move,
    play_match,
    validate_strategy,
)
from .bipartite import BipartiteGeneral, bipartition, theorem_values
from .cycles import BobCycle, BobGrid2, BobSubdivision, cycle_pairs, ladder_rungs
from .simple import AliceMatchingFollower, BobFlood
from .trees import BobTreePeeler


def alice_matching_follower(matching=None) -> AliceMatchingFollower:
    return AliceMatchingFollower(matching)


def bob_flood() -> BobFlood:
    return BobFlood()


def bob_tree_peeler() -> BobTreePeeler:
    return BobTreePeeler()


def bipartite_general(side_role: Player, immediate_wins: bool = True) -> BipartiteGeneral:
    return BipartiteGeneral(side_role, immediate_wins)


def bob_cycle(n: int) -> BobCycle:
    return BobCycle(n)


def bob_grid2(n: int) -> BobGrid2:
    return BobGrid2(n)


def bob_subdivision(base: Graph, pairs=None) -> BobSubdivision:
    return BobSubdivision(base, pairs)


STRATEGY_IDS = (
    "alice_matching_follower", "bob_flood", "bob_tree_peeler", "bipartite_general:alice",
    "bipartite_general:bob", "bob_cycle", "bob_grid2", "bob_subdivision", "random:alice",
    "random:bob",
)


def build_strategy(spec: str, graph: Graph, base: Graph | None = None,
                   side: Player | None = None) -> Strategy:
    """Instantiate a strategy from a command-line id.

    ``random:seed=7`` plays the side given by ``side``; ``bob_cycle`` and
    ``bob_grid2`` read their size from the graph; ``bob_subdivision`` needs
    the base graph.
    """
    name, _, arg = spec.partition(":")
    opts = dict(part.split("=", 1) for part in arg.split(",") if "=" in part)
    flags = [part for part in arg.split(",") if part and "=" not in part]
    if name == "random":
        who = Player.parse(flags[0]) if flags else side
        if who is None:
            raise InputError("random strategy needs a side")
        return RandomStrategy(who, int(opts.get("seed", 0)))
    if name == "alice_matching_follower":
        return AliceMatchingFollower()
    if name == "bob_flood":
        return BobFlood()
    if name == "bob_tree_peeler":
        return BobTreePeeler()
    if name == "bipartite_general":
        who = Player.parse(opts.get("side", flags[0] if flags else (side.value if side else "")))
        wins = opts.get("immediate_wins", "1").lower() not in ("0", "false", "no")
        return BipartiteGeneral(who, wins)
    if name == "bob_cycle":
        return BobCycle(graph.order)
    if name == "bob_grid2":
        return BobGrid2(graph.order // 2)
    if name == "bob_subdivision":
        if base is None:
            raise InputError("bob_subdivision needs the base graph (use a subdivision(...) family)")
        return BobSubdivision(base)
    raise InputError(f"unknown strategy {spec!r}; known: {', '.join(STRATEGY_IDS)}")


__all__ = [
    "ALICE", "BOB", "HOLDS", "REFUTED", "Strategy", "RandomStrategy", "ValidationReport",
    "AliceMatchingFollower", "BobFlood", "BobTreePeeler", "BipartiteGeneral", "BobCycle",
    "BobGrid2", "BobSubdivision", "alice_matching_follower", "bob_flood", "bob_tree_peeler",
    "bipartite_general", "bob_cycle", "bob_grid2", "bob_subdivision", "play_match",
    "validate_strategy", "bob_winning_move", "bipartition", "theorem_values", "cycle_pairs",
    "ladder_rungs", "build_strategy", "STRATEGY_IDS",
]
