"""Bob's strategies on cycles, ladders ``P_n x P_2`` and subdivision graphs.

All three play with palette ``{1, 2}`` and take an immediately winning move
(one that fills a closed neighbourhood with a single colour) whenever there
is one; the scripted moves below only set those wins up.
"""

from __future__ import annotations

import itertools

import networkx as nx

from ..game import ALICE, BOB, UNCOLORED, GameConfig, GameState, Move
from ..graphs import Cycle, Graph, Grid, generate, subdivision, subdivision_vertex
from .base import Strategy, bob_winning_move, first_legal_move, require


class BobCycle(Strategy):
    """Bob on ``C_n`` (vertices in cycle order).

    A-game, ``n >= 4``: copy Alice's colour onto the next vertex round the
    cycle, leaving two equal neighbours with free outer ends.

    B-game, odd ``n >= 5``: open ``(0, 1)``.  If Alice leaves a neighbour of
    0 free to make such a pair, make it.  If she coloured neighbour 1 with
    the other colour, colour vertex 4 with 1, leaving the trap 1-2-3-4 whose
    middle Alice is forced to enter first (mirrored when she took ``n - 1``);
    afterwards stay out of the trap.
    """

    name = "bob_cycle"
    side = BOB

    def __init__(self, n: int):
        self.n = n

    def params(self):
        return {"n": self.n}

    def check(self, config: GameConfig) -> None:
        n = self.n
        require(n >= 3 and config.graph == generate(Cycle(n)), f"bob_cycle({n}) needs C_{n}")
        require(config.k == 2, "bob_cycle needs palette size 2")
        if config.first is ALICE:
            require(n >= 4, "the A-game strategy needs n >= 4")
        else:
            require(n >= 5 and n % 2 == 1, "the B-game strategy needs odd n >= 5")

    def setup(self, config):
        self.first = config.first
        return None

    def choose(self, state: GameState, memory):
        win = bob_winning_move(state)
        if win is not None:
            return win, memory
        n, a = self.n, state.assignment
        made = state.moves_made
        if self.first is ALICE:
            if made == 1:
                (v,) = [u for u in range(n) if a[u] != UNCOLORED]
                return Move((v + 1) % n, a[v]), None
            return first_legal_move(state), memory
        if made == 0:
            return Move(0, 1), None
        if made == 2:
            for u, far, outer in ((1, 2, n - 1), (n - 1, n - 2, 1)):
                if a[u] == UNCOLORED and a[far] == UNCOLORED and a[outer] == UNCOLORED:
                    return Move(u, 1), None
            if a[1] != UNCOLORED:
                return Move(4, 1), (2, 3)
            return Move(n - 4, 1), (n - 2, n - 3)
        trap = memory or ()
        for v in range(n):
            if a[v] == UNCOLORED and v not in trap:
                return Move(v, 1), memory
        return first_legal_move(state), memory


def ladder_rungs(g: Graph, n: int) -> list[tuple[int, int]] | None:
    """Rungs ``(x_i, y_i)``, i = 1..n, if ``g`` is ``P_n x P_2`` or ``P_2 x P_n``."""
    if g == generate(Grid(n, 2)):
        return [(2 * i, 2 * i + 1) for i in range(n)]
    if g == generate(Grid(2, n)):
        return [(i, n + i) for i in range(n)]
    return None


class BobGrid2(Strategy):
    """Bob on the ladder ``P_n x P_2`` in the A-game.

    If Alice colours a corner, Bob gives its rung partner the same colour
    (two equal degree-2 vertices with free ends).  If she colours an inner
    vertex, Bob gives its rung partner the other colour.  Inner rungs then
    fill in pairs, so Alice is the first to touch a corner once the end
    rungs carry two different colours.
    Memory: Alice's last vertex.
    """

    name = "bob_grid2"
    side = BOB

    def __init__(self, n: int):
        self.n = n

    def params(self):
        return {"n": self.n}

    def check(self, config):
        require(self.n >= 2 and ladder_rungs(config.graph, self.n) is not None,
                f"bob_grid2({self.n}) needs the ladder P_{self.n} x P_2")
        require(config.k == 2, "bob_grid2 needs palette size 2")
        require(config.first is ALICE, "bob_grid2 is an A-game strategy")

    def setup(self, config):
        self.partner = {}
        for x, y in ladder_rungs(config.graph, self.n):
            self.partner[x], self.partner[y] = y, x
        return None

    def observe(self, memory, state, move):
        return move.vertex

    def choose(self, state, memory):
        win = bob_winning_move(state)
        if win is not None:
            return win, memory
        a = state.assignment
        if memory is not None:
            u = memory
            p = self.partner[u]
            if a[p] == UNCOLORED:
                if state.graph.degree(u) == 2:
                    return Move(p, a[u]), memory
                return Move(p, 3 - a[u]), memory
        return first_legal_move(state), memory


def cycle_pairs(g: Graph) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """All ``(x, P, Q)``: edge-disjoint cycles ``P``, ``Q`` meeting only in ``x``.

    Cycles are given as vertex tuples starting at ``x``.
    """
    cycles = []
    for cyc in nx.simple_cycles(g.to_networkx()):
        if len(cyc) >= 3:
            cycles.append(tuple(cyc))
    out = []
    for c1, c2 in itertools.combinations(cycles, 2):
        common = set(c1) & set(c2)
        if len(common) != 1:
            continue
        (x,) = common
        out.append((x, _rotate(c1, x), _rotate(c2, x)))
    return sorted(out)


def _rotate(cyc: tuple[int, ...], x: int) -> tuple[int, ...]:
    i = cyc.index(x)
    return cyc[i:] + cyc[:i]


class BobSubdivision(Strategy):
    """Bob on the subdivision ``S(G)`` of a base graph ``G``.

    Given two cycles of ``G`` meeting only in ``x`` (B-game), Bob colours
    ``x`` with 1, picks the cycle Alice has not touched and colours its old
    vertices with 1 one after another; each step threatens the subdivision
    vertex just behind, and the last step threatens two at once.

    Given two such pairs with disjoint vertex sets (A-game), Bob first
    colours the common vertex of the pair Alice's opening missed, then walks
    as above on a cycle avoided by both of Alice's moves.
    Memory: Alice's first (up to two) vertices.
    """

    name = "bob_subdivision"
    side = BOB

    def __init__(self, base: Graph, pairs=None):
        self.base = base
        self.pairs = list(pairs) if pairs is not None else None

    def params(self):
        return {"pairs": [[x, list(p), list(q)] for x, p, q in self._pairs()]}

    def _pairs(self):
        if self.pairs is None:
            self.pairs = _disjoint_pairs(self.base)
        return self.pairs

    def check(self, config):
        require(config.graph == subdivision(self.base), "bob_subdivision needs S(base)")
        require(config.k == 2, "bob_subdivision needs palette size 2")
        pairs = self._pairs()
        need = 2 if config.first is ALICE else 1
        require(len(pairs) >= need,
                f"the {'A' if need == 2 else 'B'}-game strategy needs {need} vertex-disjoint "
                "pair(s) of edge-disjoint cycles sharing one vertex")

    def setup(self, config):
        self.first = config.first
        self.regions = []
        for x, p, q in self._pairs():
            self.regions.append((x, self._region(p), self._region(q), p, q))
        return ()

    def _region(self, cyc):
        old = set(cyc[1:])
        new = {subdivision_vertex(self.base, cyc[i], cyc[(i + 1) % len(cyc)])
               for i in range(len(cyc))}
        return frozenset(old | new)

    def observe(self, memory, state, move):
        return memory + (move.vertex,) if len(memory) < 2 else memory

    def _pair_for(self, alice: tuple[int, ...]):
        if self.first is BOB:
            return self.regions[0]
        u = alice[0]
        for reg in self.regions:
            x, rp, rq, _, _ = reg
            if u != x and u not in rp and u not in rq:
                return reg
        return self.regions[0]

    def choose(self, state, memory):
        win = bob_winning_move(state)
        if win is not None:
            return win, memory
        a = state.assignment
        if self.first is BOB and not memory:
            return Move(self.regions[0][0], 1), memory
        if self.first is ALICE and len(memory) < 1:
            return first_legal_move(state), memory
        x, rp, rq, p, q = self._pair_for(memory)
        if a[x] == UNCOLORED:
            return Move(x, 1), memory
        touched = set(memory[:1] if self.first is BOB else memory[:2])
        cyc = p if not touched & rp else q
        for v in cyc[1:]:
            if a[v] == UNCOLORED:
                return Move(v, 1), memory
        return first_legal_move(state), memory


def _disjoint_pairs(g: Graph):
    """A greedy list of cycle pairs whose vertex sets are pairwise disjoint."""
    chosen, used = [], set()
    for x, p, q in cycle_pairs(g):
        verts = set(p) | set(q)
        if verts & used:
            continue
        chosen.append((x, p, q))
        used |= verts
    return chosen
