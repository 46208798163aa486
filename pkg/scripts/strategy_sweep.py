"""Validate the scripted strategies over whole families.

Covers complete bipartite graphs K_{m,n} for 2 <= m <= n, m + n <= N
(every role of the bipartite strategy) and every tree up to a given order
(the tree peeler, in each game where Bob should win).

    python scripts/strategy_sweep.py --bipartite-max 10 --tree-max 10
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from domatic_game.experiments import grow_trees
from domatic_game.game import ALICE, BOB, GameConfig
from domatic_game.graphs import CompleteBipartite, generate, has_perfect_matching
from domatic_game.strategies import (
    bipartite_general,
    bob_tree_peeler,
    theorem_values,
    validate_strategy,
)


@dataclass(frozen=True)
class Config:
    bipartite_max: int = 9
    tree_max: int = 9


def bipartite_cases(total: int):
    for m in range(2, total):
        for n in range(m, total - m + 1):
            g = generate(CompleteBipartite(m, n))
            dg, dgp = theorem_values(m, n)
            for first, t in ((ALICE, dg), (BOB, dgp)):
                yield f"K{m},{n}", bipartite_general(ALICE), GameConfig(g, t, first)
                for k in (t + 1, t + 2):
                    yield f"K{m},{n}", bipartite_general(BOB), GameConfig(g, k, first)


def tree_cases(n_max: int):
    for n in range(3, n_max + 1):
        for t in grow_trees(n):
            if n % 2:
                yield f"tree n={n}", bob_tree_peeler(), GameConfig(t, 2, ALICE)
            if not has_perfect_matching(t):
                yield f"tree n={n}", bob_tree_peeler(), GameConfig(t, 2, BOB)


def run(cfg: Config) -> int:
    t0 = time.perf_counter()
    total = refuted = 0
    for label, strat, config in [*bipartite_cases(cfg.bipartite_max), *tree_cases(cfg.tree_max)]:
        rep = validate_strategy(strat, strat.side, config)
        total += 1
        if not rep.holds:
            refuted += 1
            moves = ", ".join(f"{r.player.value}:{r.vertex}<-{r.color}"
                              for r in rep.counter_line.moves)
            print(f"REFUTED {strat.name} ({strat.side.value}) on {label}, k={config.k}, "
                  f"{config.first.value} first: {moves}")
    print(f"{total} validations, {refuted} refuted, {time.perf_counter() - t0:.1f}s")
    return 1 if refuted else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bipartite-max", type=int, default=9)
    ap.add_argument("--tree-max", type=int, default=9)
    raise SystemExit(run(Config(**vars(ap.parse_args()))))
