"""Strategy protocol, match arena and exhaustive strategy validator."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Hashable

from ..errors import ApplicabilityError, CapacityError, IllegalMoveError, StrategyFault, UsageError
from ..game import (
    BOB,
    UNCOLORED,
    GameConfig,
    GameState,
    Move,
    MoveRecord,
    Player,
    Status,
    Transcript,
    apply_move,
    check_move,
    legal_moves,
    new_game,
    status,
)
from ..solver import SolverLimits, canonical_state_bound


class Strategy:
    """A policy for one side.

    Subclasses set up per-game plans in :meth:`setup` (stored on the
    instance, so an instance must not be shared between concurrent games)
    and keep anything that depends on the move history in a hashable
    ``memory`` value.  :meth:`choose` returns the move together with the
    updated memory; :meth:`observe` folds in the opponent's moves.
    """

    name = "strategy"
    side: Player = BOB
    validatable = True

    def params(self) -> dict[str, Any]:
        return {}

    def describe(self) -> dict[str, Any]:
        return {"id": self.name, "side": self.side.value, "params": self.params()}

    def check(self, config: GameConfig) -> None:
        """Raise :class:`ApplicabilityError` if the strategy is undefined for ``config``."""

    def reset(self, config: GameConfig) -> Hashable:
        self.check(config)
        return self.setup(config)

    def setup(self, config: GameConfig) -> Hashable:
        """Build per-game plans; return the initial memory."""
        return None

    def observe(self, memory: Hashable, state: GameState, move: Move) -> Hashable:
        return memory

    def choose(self, state: GameState, memory: Hashable) -> tuple[Move, Hashable]:
        raise NotImplementedError


def require(cond: bool, message: str) -> None:
    if not cond:
        raise ApplicabilityError(message)


def first_legal_move(state: GameState) -> Move:
    return legal_moves(state)[0]


def bob_winning_move(state: GameState) -> Move | None:
    """A move after which some closed neighbourhood is fully coloured but
    misses a colour, if one exists (vertex then colour ascending)."""
    g, a, k = state.graph, state.assignment, state.k
    for v in range(g.order):
        if a[v] != UNCOLORED:
            continue
        for c in range(1, k + 1):
            for w in g.adjacency[v] | {v}:
                nb = g.adjacency[w] | {w}
                if any(a[u] == UNCOLORED for u in nb if u != v):
                    continue
                colours = {a[u] for u in nb if u != v} | {c}
                if len(colours) < k:
                    return Move(v, c)
    return None


class RandomStrategy(Strategy):
    """Uniformly random legal moves from a seeded generator (arena baseline)."""

    name = "random"
    validatable = False

    def __init__(self, side: Player, seed: int = 0):
        self.side = side
        self.seed = seed
        self.rng = random.Random(seed)

    def params(self):
        return {"seed": self.seed}

    def setup(self, config):
        self.rng = random.Random(self.seed)
        return None

    def choose(self, state, memory):
        return self.rng.choice(legal_moves(state)), memory


def play_match(s_first: Strategy, s_second: Strategy, config: GameConfig) -> Transcript:
    """Let two strategies play the game in ``config`` to the end."""
    if s_first.side is s_second.side:
        raise UsageError("both strategies play the same side")
    if s_first.side is not config.first:
        raise UsageError(f"{s_first.name} plays {s_first.side.value} but "
                         f"{config.first.value} moves first in this game")
    players = {s_first.side: s_first, s_second.side: s_second}
    memories = {side: s.reset(config) for side, s in players.items()}
    state = new_game(config)
    transcript = Transcript(config, meta={
        "first": s_first.describe(), "second": s_second.describe(),
    })
    ply = 0
    while not status(state).decided:
        ply += 1
        mover = state.to_move
        strat = players[mover]
        move, memories[mover] = strat.choose(state, memories[mover])
        try:
            check_move(state, move)
        except IllegalMoveError as exc:
            raise StrategyFault(f"{strat.name} returned an illegal move: {exc}", ply) from None
        other = mover.other
        memories[other] = players[other].observe(memories[other], state, move)
        state = apply_move(state, move)
        transcript.moves.append(MoveRecord(ply, mover, move.vertex, move.color))
    transcript.final = status(state)
    return transcript


HOLDS = "holds"
REFUTED = "refuted"


@dataclass
class ValidationReport:
    strategy: dict[str, Any]
    side: Player
    config: GameConfig
    verdict: str
    states_checked: int
    counter_line: Transcript | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict[str, Any]:
        from ..game import config_to_dict

        return {
            "strategy": self.strategy,
            "side": self.side.value,
            "config": config_to_dict(self.config),
            "verdict": self.verdict,
            "states_checked": self.states_checked,
            "counter_line": self.counter_line.to_dict() if self.counter_line else None,
        }


def validate_strategy(strategy: Strategy, side: Player, config: GameConfig,
                      limits: SolverLimits | None = None) -> ValidationReport:
    """Check ``strategy`` against every line of adversary play.

    The strategy's moves are fixed; the opponent branches over all legal
    moves.  Positions are memoised on (assignment, strategy memory); no
    colour canonicalisation is applied since strategies need not be
    colour-symmetric.
    """
    if strategy.side is not side:
        raise UsageError(f"{strategy.name} plays {strategy.side.value}, not {side.value}")
    if not strategy.validatable:
        raise UsageError(f"{strategy.name} is randomised and cannot be validated")
    limits = limits or SolverLimits()
    memory0 = strategy.reset(config)
    bound = canonical_state_bound(config.graph.order, config.k)
    if bound > limits.max_states:
        raise CapacityError(f"validation of n={config.graph.order}, k={config.k} exceeds "
                            f"the guard of {limits.max_states} states")
    proven: set[tuple] = set()
    checked = 0

    def refute(state: GameState, memory: Hashable, ply: int) -> list[tuple[Player, Move]] | None:
        nonlocal checked
        st = status(state)
        if st.decided:
            return None if st.winner is side else []
        key = (state.assignment, memory)
        if key in proven:
            return None
        checked += 1
        mover = state.to_move
        if mover is side:
            move, mem2 = strategy.choose(state, memory)
            try:
                check_move(state, move)
            except IllegalMoveError as exc:
                raise StrategyFault(f"{strategy.name} returned an illegal move: {exc}", ply) from None
            line = refute(apply_move(state, move), mem2, ply + 1)
            if line is not None:
                return [(mover, move)] + line
        else:
            for move in legal_moves(state):
                mem2 = strategy.observe(memory, state, move)
                line = refute(apply_move(state, move), mem2, ply + 1)
                if line is not None:
                    return [(mover, move)] + line
        proven.add(key)
        return None

    line = refute(new_game(config), memory0, 1)
    if line is None:
        return ValidationReport(strategy.describe(), side, config, HOLDS, checked)
    transcript = Transcript(config, meta={"strategy": strategy.describe()})
    state = new_game(config)
    for ply, (player, move) in enumerate(line, start=1):
        transcript.moves.append(MoveRecord(ply, player, move.vertex, move.color))
        state = apply_move(state, move)
    transcript.final = status(state)
    return ValidationReport(strategy.describe(), side, config, REFUTED, checked, transcript)
