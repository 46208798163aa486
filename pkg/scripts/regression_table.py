"""Solve the release regression suite and print expected vs solved values.

    python scripts/regression_table.py [--workers 2] [--json out.json]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from domatic_game.experiments import THEOREM_MISMATCH, archive_to_json, core_suite, verify_family


@dataclass(frozen=True)
class Config:
    workers: int = 1
    json_path: str | None = None


def run(cfg: Config) -> int:
    t0 = time.perf_counter()
    found = verify_family(core_suite(), workers=cfg.workers)
    bad = 0
    for f in found:
        exp = tuple("-" if v is None else v for v in f.witness["expected"])
        got = tuple("-" if v is None else v for v in f.witness["solved"])
        mark = "MISMATCH" if THEOREM_MISMATCH in f.flags else "ok"
        bad += mark != "ok"
        print(f"{f.graph_id:14s} {f.witness['source']:32s} expected {exp}  solved {got}  {mark}")
    print(f"{len(found)} instances, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            fh.write(archive_to_json(found))
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", dest="json_path")
    raise SystemExit(run(Config(**vars(ap.parse_args()))))
