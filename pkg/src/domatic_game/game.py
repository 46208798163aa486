"""Rules of the domatic number game.

Alice and Bob alternately colour an uncoloured vertex with a colour from
``1..k``.  Alice wins when every colour class dominates the graph, i.e. when
every closed neighbourhood sees all ``k`` colours.  ``0`` marks an uncoloured
vertex in assignments; colours are 1-based as in the palette ``[k]``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import IllegalMoveError, InputError, UsageError
from .graphs import Graph

UNCOLORED = 0


class Player(enum.Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE

    @classmethod
    def parse(cls, text: str) -> "Player":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InputError(f"player must be 'alice' or 'bob', got {text!r}") from None


ALICE = Player.ALICE
BOB = Player.BOB


class Status(enum.Enum):
    ONGOING = "ongoing"
    ALICE_WINS = "alice_wins"
    BOB_WINS = "bob_wins"

    @property
    def decided(self) -> bool:
        return self is not Status.ONGOING

    @property
    def winner(self) -> Player | None:
        return {Status.ALICE_WINS: ALICE, Status.BOB_WINS: BOB}.get(self)


@dataclass(frozen=True)
class GameConfig:
    graph: Graph
    k: int
    first: Player = ALICE

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError(f"palette size must be a positive integer, got {self.k!r}")

    @property
    def game_name(self) -> str:
        return "A" if self.first is ALICE else "B"


@dataclass(frozen=True, order=True)
class Move:
    vertex: int
    color: int

    def __iter__(self):
        return iter((self.vertex, self.color))


@dataclass(frozen=True)
class GameState:
    config: GameConfig
    assignment: tuple[int, ...]

    @property
    def graph(self) -> Graph:
        return self.config.graph

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def moves_made(self) -> int:
        return sum(1 for c in self.assignment if c != UNCOLORED)

    @property
    def to_move(self) -> Player:
        return self.config.first if self.moves_made % 2 == 0 else self.config.first.other

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.assignment) if c == UNCOLORED]

    def color_class(self, c: int) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.assignment) if x == c)

    def color_classes(self) -> list[frozenset[int]]:
        return [self.color_class(c) for c in range(1, self.k + 1)]

    def colors_in(self, vertices: Iterable[int]) -> set[int]:
        return {self.assignment[v] for v in vertices} - {UNCOLORED}

    def with_assignment(self, assignment: Sequence[int]) -> "GameState":
        return GameState(self.config, tuple(assignment))


def new_game(config: GameConfig) -> GameState:
    return GameState(config, (UNCOLORED,) * config.graph.order)


def state_from_assignment(config: GameConfig, assignment: Sequence[int]) -> GameState:
    if len(assignment) != config.graph.order:
        raise InputError("assignment length differs from the graph order")
    for v, c in enumerate(assignment):
        if not 0 <= c <= config.k:
            raise IllegalMoveError(f"vertex {v} has colour {c} outside 0..{config.k}")
    return GameState(config, tuple(assignment))


def status(state: GameState) -> Status:
    """Adjudicate a position.

    Bob has won once some closed neighbourhood is fully coloured and still
    misses a colour; Alice has won once every closed neighbourhood shows all
    ``k`` colours.  Both verdicts are final because colours are never removed.
    """
    g, a, k = state.graph, state.assignment, state.k
    alice = True
    for v in g.vertices():
        seen = set()
        full = True
        for u in g.adjacency[v] | {v}:
            c = a[u]
            if c == UNCOLORED:
                full = False
            else:
                seen.add(c)
        if len(seen) < k:
            alice = False
            if full:
                return Status.BOB_WINS
    return Status.ALICE_WINS if alice else Status.ONGOING


def legal_moves(state: GameState) -> list[Move]:
    if status(state).decided:
        raise UsageError("the game is already decided; no moves are legal")
    return [Move(v, c) for v in state.uncolored() for c in range(1, state.k + 1)]


def check_move(state: GameState, move: Move) -> None:
    v, c = move
    if not 0 <= v < state.graph.order:
        raise IllegalMoveError(f"vertex {v} is not in the graph")
    if state.assignment[v] != UNCOLORED:
        raise IllegalMoveError(f"vertex {v} is already coloured {state.assignment[v]}")
    if not 1 <= c <= state.k:
        raise IllegalMoveError(f"colour {c} is outside the palette 1..{state.k}")


def apply_move(state: GameState, move: Move) -> GameState:
    check_move(state, move)
    a = list(state.assignment)
    a[move.vertex] = move.color
    return GameState(state.config, tuple(a))


def canonical_assignment(assignment: Sequence[int]) -> tuple[int, ...]:
    """Rename colours in order of first appearance (scanning vertices 0..n-1)."""
    rename: dict[int, int] = {}
    out = []
    for c in assignment:
        if c == UNCOLORED:
            out.append(UNCOLORED)
        else:
            if c not in rename:
                rename[c] = len(rename) + 1
            out.append(rename[c])
    return tuple(out)


def canonical_key(state: GameState) -> tuple[int, ...]:
    return canonical_assignment(state.assignment)


# -- path configurations ------------------------------------------------------

STAR_MM_STAR = "star_mm_star"
C_STAR_STAR_C = "c_star_star_c"


@dataclass(frozen=True)
class ConfigurationFinding:
    kind: str
    path: tuple[int, int, int, int]
    colors: tuple[int, ...]


def _degree_two_paths(g: Graph):
    for u2, u3 in g.sorted_edges():
        if g.degree(u2) != 2 or g.degree(u3) != 2:
            continue
        (u1,) = g.adjacency[u2] - {u3}
        (u4,) = g.adjacency[u3] - {u2}
        if u1 == u4:
            continue
        path = (u1, u2, u3, u4)
        yield path if u1 < u4 else path[::-1]


def detect_configurations(state: GameState) -> list[ConfigurationFinding]:
    """Find the ``*mm*`` and ``c**c'`` patterns on paths whose middle pair
    has degree two."""
    a = state.assignment
    found = []
    for path in _degree_two_paths(state.graph):
        u1, u2, u3, u4 = (a[u] for u in path)
        if u2 != UNCOLORED and u2 == u3 and u1 == UNCOLORED and u4 == UNCOLORED:
            found.append(ConfigurationFinding(STAR_MM_STAR, path, (u2,)))
        elif u2 == UNCOLORED and u3 == UNCOLORED and UNCOLORED not in (u1, u4) and u1 != u4:
            found.append(ConfigurationFinding(C_STAR_STAR_C, path, (u1, u4)))
    return found


# -- transcripts --------------------------------------------------------------

TRANSCRIPT_SCHEMA = "domatic-game/transcript/1"


@dataclass(frozen=True)
class MoveRecord:
    ply: int
    player: Player
    vertex: int
    color: int


@dataclass
class Transcript:
    config: GameConfig
    moves: list[MoveRecord] = field(default_factory=list)
    final: Status = Status.ONGOING
    meta: dict[str, Any] = field(default_factory=dict)

    def replay(self) -> GameState:
        state = new_game(self.config)
        for rec in self.moves:
            if state.to_move is not rec.player:
                raise UsageError(f"ply {rec.ply}: {rec.player.value} moved out of turn")
            state = apply_move(state, Move(rec.vertex, rec.color))
        return state

    def to_dict(self) -> dict[str, Any]:
        g = self.config.graph
        return {
            "schema": TRANSCRIPT_SCHEMA,
            "config": config_to_dict(self.config),
            "moves": [
                {"ply": r.ply, "player": r.player.value, "vertex": r.vertex, "color": r.color}
                for r in self.moves
            ],
            "final": self.final.value,
            "meta": self.meta,
            "graph_tag": g.tag,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Transcript":
        if doc.get("schema") != TRANSCRIPT_SCHEMA:
            raise InputError(f"unknown transcript schema {doc.get('schema')!r}")
        moves = [MoveRecord(m["ply"], Player(m["player"]), m["vertex"], m["color"])
                 for m in doc["moves"]]
        return cls(config_from_dict(doc["config"]), moves, Status(doc["final"]),
                   dict(doc.get("meta", {})))

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))


def config_to_dict(config: GameConfig) -> dict[str, Any]:
    g = config.graph
    return {
        "n": g.order,
        "edges": [list(e) for e in g.sorted_edges()],
        "tag": g.tag,
        "k": config.k,
        "first": config.first.value,
    }


def config_from_dict(doc: dict[str, Any]) -> GameConfig:
    from .graphs import from_edge_list

    g = from_edge_list(doc["n"], [tuple(e) for e in doc["edges"]], doc.get("tag"))
    return GameConfig(g, doc["k"], Player(doc["first"]))
