"""Matching follower (Alice) and neighbourhood flooding (Bob)."""

from __future__ import annotations

from typing import Iterable

from ..game import ALICE, BOB, UNCOLORED, GameConfig, GameState, Move
from ..graphs import Edge, has_perfect_matching, maximum_matching
from .base import Strategy, first_legal_move, require


class AliceMatchingFollower(Strategy):
    """Answer Bob on the other end of his matched edge with the other colour.

    Needs a perfect matching, Bob moving first and the palette ``{1, 2}``.
    With no matching given, a maximum matching of the graph is used.
    """

    name = "alice_matching_follower"
    side = ALICE

    def __init__(self, matching: Iterable[Edge] | None = None):
        self.matching = None if matching is None else [tuple(e) for e in matching]
        self.partner: dict[int, int] = {}

    def params(self):
        return {"matching": [list(e) for e in self.matching] if self.matching else None}

    def check(self, config: GameConfig) -> None:
        require(config.first is BOB, "the matching follower is a B-game strategy")
        require(config.k == 2, "the matching follower needs palette size 2")
        g = config.graph
        if self.matching is None:
            require(has_perfect_matching(g), "the graph has no perfect matching")
            return
        covered = [v for e in self.matching for v in e]
        require(all(g.has_edge(u, v) for u, v in self.matching), "matching uses a non-edge")
        require(sorted(covered) == list(g.vertices()), "the given matching is not perfect")

    def setup(self, config):
        pairs = self.matching or sorted(maximum_matching(config.graph))
        self.partner = {}
        for u, v in pairs:
            self.partner[u] = v
            self.partner[v] = u
        return None

    def choose(self, state: GameState, memory):
        a = state.assignment
        for u in sorted(self.partner):
            v = self.partner[u]
            if a[u] != UNCOLORED and a[v] == UNCOLORED:
                return Move(v, 3 - a[u]), memory
        return first_legal_move(state), memory


class BobFlood(Strategy):
    """Pile one colour onto the closed neighbourhood of a minimum-degree vertex.

    When Alice opened inside ``N[x]`` for some minimum-degree ``x``, Bob
    takes that ``x`` and her colour; otherwise colour 1 and the first
    minimum-degree vertex.  Once ``N[x]`` is full he plays the first legal move.
    Memory: ``(x, c)`` once chosen.
    """

    name = "bob_flood"
    side = BOB

    def setup(self, config):
        g = config.graph
        delta = g.min_degree
        self.min_vertices = [v for v in g.vertices() if g.degree(v) == delta]
        return None

    def _target(self, state: GameState) -> tuple[int, int]:
        g, a = state.graph, state.assignment
        coloured = [v for v in g.vertices() if a[v] != UNCOLORED]
        if coloured:
            (u,) = coloured
            for x in self.min_vertices:
                if u in g.adjacency[x] or u == x:
                    return x, a[u]
        return self.min_vertices[0], 1

    def choose(self, state, memory):
        if memory is None:
            memory = self._target(state)
        x, c = memory
        a = state.assignment
        for v in sorted(state.graph.adjacency[x] | {x}):
            if a[v] == UNCOLORED:
                return Move(v, c), memory
        return first_legal_move(state), memory
