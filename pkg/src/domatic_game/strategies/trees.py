"""Bob's strategy on trees with palette ``{1, 2}``.

Bob's colour ``c`` is Alice's first colour in the A-game and 1 in the
B-game.  Every turn he first takes a move that completes a closed
neighbourhood in one colour, if there is one.  Otherwise he plays one of
three modes, fixed by the tree and the game:

strong
    The tree has a support with two leaves: colour that support ``c``;
    Alice can protect only one of its leaves.
parity
    B-game on odd order, or A-game on even order.  Leaves and supports come
    in pairs, so Bob keeps to the other vertices and Alice runs out of safe
    moves first; the pair she opens is closed by Bob in her colour.
peel
    B-game on even order without a perfect matching, or A-game on odd
    order.  Bob colours the supports of ``F_0, F_1, ...`` (each layer is the
    previous one minus its leaves and supports) one by one, each move
    forcing Alice onto the matching leaf, then strikes the first isolated
    vertex, star with two or more leaves, or strong support of a layer.  In the A-game the plan is cut
    short when Alice's first vertex is a leaf or support of an earlier layer.
"""

from __future__ import annotations

from ..game import ALICE, BOB, UNCOLORED, GameConfig, GameState, Move
from ..graphs import (
    ISOLATED,
    LARGE_STAR,
    STRONG_SUPPORT,
    forest_peel_sequence,
    has_perfect_matching,
    leaf_support_profile,
)
from .base import Strategy, bob_winning_move, first_legal_move, require

STRONG = "strong"
PARITY = "parity"
PEEL = "peel"


class BobTreePeeler(Strategy):
    name = "bob_tree_peeler"
    side = BOB

    def check(self, config: GameConfig) -> None:
        g = config.graph
        require(g.is_tree() and g.order >= 2, "bob_tree_peeler needs a tree with at least 2 vertices")
        require(config.k == 2, "bob_tree_peeler needs palette size 2")
        if config.first is BOB:
            require(not has_perfect_matching(g),
                    "the tree has a perfect matching, so Bob cannot win the B-game")

    def setup(self, config):
        g = config.graph
        prof = leaf_support_profile(g)
        self.profile = prof
        self.peel = forest_peel_sequence(g)
        self.outer = prof.leaves | prof.supports
        self.inner = [v for v in g.vertices() if v not in self.outer]
        if prof.strong_supports:
            self.mode = STRONG
        elif (config.first is BOB) == (g.order % 2 == 1):
            self.mode = PARITY
        else:
            self.mode = PEEL
        self.plan: list[tuple[int, int]] | None = None
        self._plan_x: int | None = None
        # memory: Bob's colour and Alice's opening vertex (A-game), once known
        return None

    def _peel_plan(self, x: int | None) -> list[tuple[int, int]]:
        """(layer index, vertex) targets in the order Bob colours them."""
        peel = self.peel
        stop = peel.q
        r = peel.layer_of(x) if x is not None else None
        if r is not None and r < peel.q:
            stop = r
        plan = []
        for i in range(stop):
            plan += [(i, s) for s in sorted(peel.layers[i].supports)]
        if r is not None and r < peel.q:
            layer = peel.layers[r]
            pairs = dict(layer.leaf_support)
            if x in layer.leaves:
                plan.append((r, pairs[x]))
            else:
                plan.append((r, min(leaf for leaf, s in layer.leaf_support if s == x)))
            return plan
        term = peel.terminal
        if term.kind == ISOLATED:
            if x not in term.isolated:
                plan.append((stop, term.isolated[0]))
        elif term.kind in (LARGE_STAR, STRONG_SUPPORT):
            centre, leaves = term.stars[0]
            for c, ls in term.stars:
                if c == x:
                    centre, leaves = c, ls
                    break
            plan.append((stop, leaves[0] if centre == x else centre))
        return plan

    def choose(self, state: GameState, memory):
        if memory is None:
            if state.config.first is ALICE:
                (x,) = [v for v in state.graph.vertices() if state.assignment[v] != UNCOLORED]
                memory = (state.assignment[x], x)
            else:
                memory = (1, None)
        colour, x = memory
        win = bob_winning_move(state)
        if win is not None:
            return win, memory
        a = state.assignment
        if self.mode == STRONG:
            for s in sorted(self.profile.strong_supports):
                if a[s] == UNCOLORED:
                    return Move(s, colour), memory
        elif self.mode == PARITY:
            for v in self.inner:
                if a[v] == UNCOLORED:
                    return Move(v, colour), memory
        else:
            if self.plan is None or self._plan_x != x:
                self.plan = self._peel_plan(x)
                self._plan_x = x
            for _, v in self.plan:
                if a[v] == UNCOLORED:
                    return Move(v, colour), memory
        return first_legal_move(state), memory
