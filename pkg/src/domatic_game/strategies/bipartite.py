"""General strategies on complete bipartite graphs ``K_{m,n}``, ``m <= n``.

``V`` is the smaller side (the side holding vertex 0 when both sides have
the same size) and ``W`` the other one.  A player "follows" when they colour
a vertex on the side the opponent just played, if one is still uncoloured.

Colour rules:

* Bob colours a fresh side with the first colour of the game (1 when he
  opens; Alice's opening colour otherwise, which is "1" up to renaming).
  On a side that already has colours he reuses that first colour if it is
  there, else the smallest one present.  Before any of this he takes a move
  that leaves a closed neighbourhood fully coloured but short of a colour;
  ``immediate_wins=False`` turns that off (it is needed when ``m = 2``).
* Alice colours the smallest colour missing from that side (``j + 1`` when
  the side holds exactly ``1..j``), or 1 once the side shows every colour.

The theorem value ``t`` (the largest palette Alice wins with) depends on the
parities of ``m`` and ``n`` and on who opens.  Alice's strategy is defined for
palettes up to ``t``, Bob's for larger ones.
"""

from __future__ import annotations

from ..game import ALICE, BOB, UNCOLORED, GameConfig, GameState, Move, Player
from ..graphs import Graph
from .base import Strategy, bob_winning_move, first_legal_move, require

CASE_BOTH_EVEN = 1
CASE_M_EVEN_N_ODD = 2
CASE_M_ODD = 3


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """The two sides of a complete bipartite graph, smaller first; else None."""
    if g.order < 2:
        return None
    side = {0: 0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    if len(side) != g.order:
        return None
    a = [v for v in g.vertices() if side[v] == 0]
    b = [v for v in g.vertices() if side[v] == 1]
    if not b or g.size != len(a) * len(b):
        return None
    return (a, b) if len(a) <= len(b) else (b, a)


def theorem_case(m: int, n: int) -> int:
    if m % 2 == 1:
        return CASE_M_ODD
    return CASE_BOTH_EVEN if n % 2 == 0 else CASE_M_EVEN_N_ODD


def theorem_values(m: int, n: int) -> tuple[int, int]:
    """(A-game value, B-game value) for ``K_{m,n}`` with ``2 <= m <= n``."""
    up = (m + 2) // 2  # ceil((m+1)/2)
    dg = m // 2 if m % 2 == 0 and n % 2 == 0 else up
    dgp = m // 2 if m % 2 == 0 and n % 2 == 1 else up
    return dg, dgp


class BipartiteGeneral(Strategy):
    name = "bipartite_general"

    def __init__(self, side: Player, immediate_wins: bool = True):
        self.side = side
        self.immediate_wins = immediate_wins

    def params(self):
        return {"side_role": self.side.value, "immediate_wins": self.immediate_wins}

    def check(self, config: GameConfig) -> None:
        parts = bipartition(config.graph)
        require(parts is not None, "bipartite_general needs a complete bipartite graph")
        v_side, w_side = parts
        m, n = len(v_side), len(w_side)
        require(m >= 2, "bipartite_general needs both sides of size at least 2")
        dg, dgp = theorem_values(m, n)
        t = dg if config.first is ALICE else dgp
        if self.side is ALICE:
            require(config.k <= t, f"Alice's strategy is for palettes up to {t}")
        else:
            require(config.k > t, f"Bob's strategy is for palettes larger than {t}")

    def setup(self, config):
        self.V, self.W = bipartition(config.graph)
        self.side_of = {v: 0 for v in self.V} | {w: 1 for w in self.W}
        self.case = theorem_case(len(self.V), len(self.W))
        self.first = config.first
        # memory: (side of the opponent's last move, first colour of the game)
        return (None, None if config.first is ALICE else 1)

    def observe(self, memory, state, move):
        base = memory[1] if memory[1] is not None else move.color
        return (self.side_of[move.vertex], base)

    def _sides(self):
        return (self.V, self.W)

    def _free(self, state: GameState, s: int) -> list[int]:
        return [v for v in self._sides()[s] if state.assignment[v] == UNCOLORED]

    def _present(self, state: GameState, s: int) -> set[int]:
        return {state.assignment[v] for v in self._sides()[s]} - {UNCOLORED}

    def _colour(self, state: GameState, s: int, base: int = 1) -> int:
        if self.side is BOB:
            return self._bob_colour(state, s, base)
        present = self._present(state, s)
        for c in range(1, state.k + 1):
            if c not in present:
                return c
        return 1

    def _bob_colour(self, state: GameState, s: int, base: int) -> int:
        present = self._present(state, s)
        if not present:
            return base
        return base if base in present else min(present)

    def _play(self, state: GameState, s: int, base: int = 1, colour: int | None = None) -> Move:
        free = self._free(state, s)
        if not free:
            s = 1 - s
            free = self._free(state, s)
        if not free:
            return first_legal_move(state)
        return Move(free[0], self._colour(state, s, base) if colour is None else colour)

    def choose(self, state: GameState, memory):
        last, base = memory
        if base is None:
            base = 1
        made = state.moves_made
        if self.side is ALICE:
            move = self._alice(state, last, made)
        else:
            move = bob_winning_move(state) if self.immediate_wins else None
            move = move or self._bob(state, last, base, made)
        if memory[1] is None:
            memory = (last, move.color)
        return move, memory

    def _alice(self, state, last, made):
        if made == 0:
            # A-game opening: W when m is even, V when m is odd
            return Move(self.W[0] if self.case != CASE_M_ODD else self.V[0], 1)
        if made == 1 and self.case == CASE_M_EVEN_N_ODD:
            return self._play(state, 0)
        return self._play(state, 0 if last is None else last)

    def _bob(self, state, last, base, made):
        case, a_game = self.case, self.first is ALICE
        follow = 0 if last is None else last
        if case == CASE_M_ODD:
            # the first colour all the way: V first, then W
            return self._play(state, 0, colour=base)
        if case == CASE_BOTH_EVEN:
            if not a_game and made == 0:
                return self._play(state, 0, base)
            return self._play(state, follow, base)
        if a_game and made == 1:
            return self._play(state, 0, base)
        if not a_game and made == 0:
            return Move(self.W[0], 1)
        return self._play(state, follow, base)
