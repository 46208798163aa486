"""Exact optimal-play adjudication of the domatic number game.

The search is a plain win/loss minimax over an undoable incremental
position, memoised on the colour-canonical assignment.  Three things keep it
small:

* colours are interchangeable, so at each node only the colours already in
  use plus the smallest unused one are tried;
* a closed neighbourhood that misses more colours than it has uncoloured
  vertices can never be completed, so Bob has already won there;
* moves that end the game are examined before any recursion.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CapacityError, UsageError
from .game import (
    ALICE,
    BOB,
    UNCOLORED,
    GameConfig,
    GameState,
    Move,
    Player,
    apply_move,
    canonical_assignment,
    legal_moves,
    new_game,
    status,
)
from .graphs import Graph

DEFAULT_MAX_STATES = int(os.environ.get("DOMATIC_MAX_STATES", 10**8))
DEFAULT_MEMO_CAPACITY = int(os.environ.get("DOMATIC_MEMO_CAPACITY", 5_000_000))
DEFAULT_DEPTH_THRESHOLD = int(os.environ.get("DOMATIC_DEPTH_THRESHOLD", 4))


@dataclass(frozen=True)
class SolverLimits:
    max_states: int = DEFAULT_MAX_STATES
    memo_capacity: int = DEFAULT_MEMO_CAPACITY
    # once the table is full, only states with at least this many
    # uncoloured vertices are still cached
    depth_threshold: int = DEFAULT_DEPTH_THRESHOLD
    memoize: bool = True


@dataclass
class SolveStats:
    states_expanded: int = 0
    memo_hits: int = 0
    peak_table_size: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "states_expanded": self.states_expanded,
            "memo_hits": self.memo_hits,
            "peak_table_size": self.peak_table_size,
            "elapsed": round(self.elapsed, 6),
        }


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def canonical_state_bound(n: int, k: int) -> int:
    """Number of colour-canonical assignments of ``n`` vertices over ``k`` colours."""
    return sum(
        math.comb(n, j) * sum(_stirling2(j, i) for i in range(min(j, k) + 1))
        for j in range(n + 1)
    )


class _Position:
    """Mutable position with per-neighbourhood colour counts and undo."""

    def __init__(self, config: GameConfig, assignment: Sequence[int]):
        g = config.graph
        self.n = g.order
        self.k = config.k
        self.first_is_alice = config.first is ALICE
        self.nbrs = [tuple(sorted(g.adjacency[v] | {v})) for v in range(self.n)]
        self.a = [UNCOLORED] * self.n
        self.cnt = [[0] * (self.k + 1) for _ in range(self.n)]
        self.distinct = [0] * self.n
        self.free = [len(nb) for nb in self.nbrs]
        self.complete = 0
        self.usage = [0] * (self.k + 2)
        self.used = 0
        self.depth = 0
        for v, c in enumerate(canonical_assignment(assignment)):
            if c != UNCOLORED:
                self.push(v, c)

    def push(self, v: int, c: int) -> bool:
        """Colour ``v`` with ``c``; return True if some neighbourhood is now doomed."""
        self.a[v] = c
        self.depth += 1
        if self.usage[c] == 0:
            self.used += 1
        self.usage[c] += 1
        k = self.k
        cnt, distinct, free = self.cnt, self.distinct, self.free
        doomed = False
        for w in self.nbrs[v]:
            free[w] -= 1
            row = cnt[w]
            if row[c] == 0:
                distinct[w] += 1
                if distinct[w] == k:
                    self.complete += 1
            row[c] += 1
            if k - distinct[w] > free[w]:
                doomed = True
        return doomed

    def pop(self, v: int, c: int) -> None:
        self.a[v] = UNCOLORED
        self.depth -= 1
        self.usage[c] -= 1
        if self.usage[c] == 0:
            self.used -= 1
        k = self.k
        for w in self.nbrs[v]:
            self.free[w] += 1
            row = self.cnt[w]
            row[c] -= 1
            if row[c] == 0:
                if self.distinct[w] == k:
                    self.complete -= 1
                self.distinct[w] -= 1

    def root_verdict(self) -> Player | None:
        if any(self.k - self.distinct[w] > self.free[w] for w in range(self.n)):
            return BOB
        if self.complete == self.n:
            return ALICE
        return None

    def alice_to_move(self) -> bool:
        return (self.depth % 2 == 0) == self.first_is_alice


class Solver:
    """Optimal-play oracle for one game configuration.

    The transposition table persists across calls, so repeated queries on
    positions of the same game (``winner_from``, ``optimal_move``) share work.
    """

    def __init__(self, config: GameConfig, limits: SolverLimits | None = None):
        self.config = config
        self.limits = limits or SolverLimits()
        self.memo: dict[tuple[int, ...], bool] = {}
        self.stats = SolveStats()

    def _check_capacity(self) -> None:
        bound = canonical_state_bound(self.config.graph.order, self.config.k)
        if bound > self.limits.max_states:
            raise CapacityError(
                f"{bound} canonical states for n={self.config.graph.order}, k={self.config.k} "
                f"exceed the guard of {self.limits.max_states}"
            )

    def winner(self) -> Player:
        return self.winner_from(new_game(self.config))

    def winner_from(self, state: GameState) -> Player:
        if state.config != self.config:
            raise UsageError("state belongs to a different game configuration")
        t0 = time.perf_counter()
        pos = _Position(self.config, state.assignment)
        verdict = pos.root_verdict()
        if verdict is None:
            self._check_capacity()
            verdict = ALICE if self._alice_wins(pos) else BOB
        self.stats.elapsed += time.perf_counter() - t0
        return verdict

    def _alice_wins(self, pos: _Position) -> bool:
        memo = self.memo
        use_memo = self.limits.memoize
        key = None
        if use_memo:
            key = tuple(canonical_assignment(pos.a))
            hit = memo.get(key)
            if hit is not None:
                self.stats.memo_hits += 1
                return hit
        self.stats.states_expanded += 1
        alice_moves = pos.alice_to_move()
        a, n = pos.a, pos.n
        top = min(pos.used + 1, pos.k)
        pending = []
        result = None
        for v in range(n):
            if a[v] != UNCOLORED:
                continue
            for c in range(1, top + 1):
                doomed = pos.push(v, c)
                if doomed:
                    pos.pop(v, c)
                    if not alice_moves:
                        result = False
                        break
                elif pos.complete == n:
                    pos.pop(v, c)
                    if alice_moves:
                        result = True
                        break
                else:
                    pos.pop(v, c)
                    pending.append((v, c))
            if result is not None:
                break
        if result is None:
            result = not alice_moves
            for v, c in pending:
                pos.push(v, c)
                child = self._alice_wins(pos)
                pos.pop(v, c)
                if child == alice_moves:
                    result = alice_moves
                    break
        if use_memo:
            if len(memo) < self.limits.memo_capacity or pos.n - pos.depth >= self.limits.depth_threshold:
                memo[key] = result
                if len(memo) > self.stats.peak_table_size:
                    self.stats.peak_table_size = len(memo)
        return result

    def optimal_move(self, state: GameState) -> Move:
        """First move (vertex, then colour ascending) that wins for the mover;
        the first legal move if the mover is lost anyway."""
        moves = legal_moves(state)
        mover = state.to_move
        for mv in moves:
            child = apply_move(state, mv)
            st = status(child)
            outcome = st.winner if st.decided else self.winner_from(child)
            if outcome is mover:
                return mv
        return moves[0]


def solve(config: GameConfig, limits: SolverLimits | None = None) -> tuple[Player, SolveStats]:
    solver = Solver(config, limits)
    return solver.winner(), solver.stats


def optimal_move(state: GameState, limits: SolverLimits | None = None) -> Move:
    return Solver(state.config, limits).optimal_move(state)


@dataclass(frozen=True)
class WinProfile:
    first: Player
    winners: tuple[Player, ...]

    @property
    def k_max(self) -> int:
        return len(self.winners)

    def winner(self, k: int) -> Player:
        return self.winners[k - 1]

    @property
    def game_number(self) -> int:
        """Largest palette size Alice wins with (over the whole profile)."""
        return max(k for k in range(1, self.k_max + 1) if self.winners[k - 1] is ALICE)

    def letters(self) -> str:
        return "".join("A" if w is ALICE else "B" for w in self.winners)

    def to_dict(self) -> dict:
        return {"first": self.first.value, "winners": [w.value for w in self.winners]}

    @classmethod
    def from_dict(cls, doc: dict) -> "WinProfile":
        return cls(Player(doc["first"]), tuple(Player(w) for w in doc["winners"]))


class ProfileCapacityError(CapacityError):
    def __init__(self, k: int, cause: CapacityError):
        self.k = k
        super().__init__(f"k={k}: {cause}")


def win_profile(
    g: Graph,
    first: Player,
    k_max: int | None = None,
    limits: SolverLimits | None = None,
    stats: list[SolveStats] | None = None,
) -> WinProfile:
    """Winner for every palette size ``1..k_max``; ``None`` means min degree + 1."""
    if k_max is None:
        k_max = g.min_degree + 1
    winners = []
    for k in range(1, k_max + 1):
        try:
            w, st = solve(GameConfig(g, k, first), limits)
        except CapacityError as exc:
            raise ProfileCapacityError(k, exc) from exc
        winners.append(w)
        if stats is not None:
            stats.append(st)
    return WinProfile(first, tuple(winners))


@dataclass(frozen=True)
class GameNumbers:
    dg: int
    dg_delayed: int
    a_profile: WinProfile
    b_profile: WinProfile

    def to_dict(self) -> dict:
        return {
            "dg": self.dg,
            "dg_delayed": self.dg_delayed,
            "a_profile": self.a_profile.to_dict(),
            "b_profile": self.b_profile.to_dict(),
        }


def game_domatic_numbers(g: Graph, k_max: int | None = None,
                         limits: SolverLimits | None = None) -> GameNumbers:
    a = win_profile(g, ALICE, k_max, limits)
    b = win_profile(g, BOB, k_max, limits)
    return GameNumbers(a.game_number, b.game_number, a, b)


def _solve_task(task: tuple[GameConfig, SolverLimits | None]) -> Player:
    config, limits = task
    return solve(config, limits)[0]


def solve_many(configs: Iterable[GameConfig], workers: int = 1,
               limits: SolverLimits | None = None) -> list[Player]:
    """Solve independent configurations, optionally across processes.

    Results come back in input order whatever the scheduling.
    """
    tasks = [(c, limits) for c in configs]
    if workers <= 1 or len(tasks) <= 1:
        return [_solve_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_solve_task, tasks))
