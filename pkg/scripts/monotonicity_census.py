"""Win profiles of every connected graph up to a given order.

Flags any graph where Bob wins with k colours but Alice wins with k + 1,
and writes the full archive so the run can be replayed or diffed later.

    python scripts/monotonicity_census.py --n-max 6 --archive census6.json
"""

from __future__ import annotations

import argparse
import collections
import time
from dataclasses import dataclass

from domatic_game.experiments import (
    MONOTONICITY_VIOLATION,
    archive_to_json,
    connected_graphs,
    monotonicity_search,
)


@dataclass(frozen=True)
class Config:
    n_max: int = 5
    workers: int = 1
    archive: str = "monotonicity.json"


def run(cfg: Config) -> None:
    t0 = time.perf_counter()
    graphs = [g for n in range(1, cfg.n_max + 1) for g in connected_graphs(n)]
    found = monotonicity_search(graphs, workers=cfg.workers)
    shapes = collections.Counter((f.profiles["A"].letters(), f.profiles["B"].letters())
                                 for f in found if len(f.profiles) == 2)
    for (a, b), count in sorted(shapes.items()):
        print(f"A {a:8s} B {b:8s} {count:5d}")
    flagged = [f for f in found if MONOTONICITY_VIOLATION in f.flags]
    for f in flagged:
        print("violation:", f.graph_id, f.witness["violations"])
    with open(cfg.archive, "w") as fh:
        fh.write(archive_to_json(found))
    print(f"{len(found)} graphs, {len(flagged)} flagged, archive {cfg.archive}, "
          f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--archive", default="monotonicity.json")
    run(Config(**vars(ap.parse_args())))
