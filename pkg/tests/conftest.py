"""Shared fixtures and an independent reference solver.

The reference solver plays the game out to a full colouring and checks
domination class by class.  It shares no code with the package solver
(no early adjudication, no colour symmetry, no canonical keys).
"""

from __future__ import annotations

import functools
import itertools
import random

import networkx as nx
import pytest

from domatic_game.graphs import Graph, from_edge_list


def nx_to_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return from_edge_list(h.number_of_nodes(), list(h.edges()))


def classes_dominate(g: Graph, colouring: tuple[int, ...], k: int) -> bool:
    for c in range(1, k + 1):
        cls = {v for v in range(g.order) if colouring[v] == c}
        for v in range(g.order):
            if v not in cls and not (set(g.adjacency[v]) & cls):
                return False
    return True


def reference_winner(g: Graph, k: int, alice_first: bool) -> str:
    """'alice' or 'bob' by exhaustive play to the last vertex."""
    n = g.order

    @functools.lru_cache(maxsize=None)
    def alice_wins(a: tuple[int, ...]) -> bool:
        free = [v for v in range(n) if a[v] == 0]
        if not free:
            return classes_dominate(g, a, k)
        made = n - len(free)
        alice_moves = (made % 2 == 0) == alice_first
        results = (alice_wins(a[:v] + (c,) + a[v + 1:]) for v in free for c in range(1, k + 1))
        return any(results) if alice_moves else all(results)

    return "alice" if alice_wins((0,) * n) else "bob"


def brute_domatic_number(g: Graph) -> int:
    best = 1
    for k in range(2, g.min_degree + 2):
        for col in itertools.product(range(1, k + 1), repeat=g.order):
            if classes_dominate(g, col, k):
                best = k
                break
        else:
            break
    return best


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
