"""Command-line front end.

Vertices are 0-based and colours 1-based everywhere on the command line.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path as FilePath
from typing import Any, Callable, TextIO

from . import __version__
from .errors import (
    CapacityError,
    DomaticGameError,
    IllegalMoveError,
    InputError,
    NotCoveredError,
    StrategyFault,
    UsageError,
)
from .experiments import (
    CAPACITY_SKIP,
    EDGE_DELETION_RAISE,
    MONOTONICITY_VIOLATION,
    THEOREM_MISMATCH,
    connected_graphs,
    edge_deletion_scan,
    expand_family_range,
    monotonicity_search,
    core_suite,
    read_graph6_stream,
    verify_family,
)
from .game import (
    ALICE,
    BOB,
    GameConfig,
    Move,
    MoveRecord,
    Player,
    Transcript,
    apply_move,
    check_move,
    config_to_dict,
    new_game,
    status,
)
from .graphs import (
    Corona,
    Graph,
    Subdivision,
    format_edge_list_text,
    generate,
    parse_edge_list_text,
    parse_family,
    parse_graph6,
    to_graph6,
)
from .solver import SolverLimits, game_domatic_numbers, optimal_move, solve
from .strategies import build_strategy, play_match, validate_strategy

RESULT_SCHEMA = "domatic-game/result/1"

EXIT_OK = 0
EXIT_FAILED = 1  # a validation was refuted
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CAPACITY = 4
EXIT_MISMATCH = 5
EXIT_FAULT = 6


# -- graph sources ---------------------------------------------------------------

def _family_with_base(args) -> Any:
    spec = parse_family(args.family) if args.family not in ("corona", "subdivision") else None
    if spec is None:
        if not args.base:
            raise InputError(f"--family {args.family} needs --base")
        base = parse_family(args.base)
        spec = Corona(base) if args.family == "corona" else Subdivision(base)
    return spec


def load_graph(args) -> tuple[Graph, Graph | None]:
    """The graph named on the command line, plus the base graph of a subdivision."""
    if args.family:
        spec = _family_with_base(args)
        base = generate(spec.base) if isinstance(spec, Subdivision) else None
        return generate(spec), base
    if args.edges:
        return parse_edge_list_text(FilePath(args.edges).read_text(), tag=FilePath(args.edges).stem), None
    if args.graph6:
        lines = [ln for ln in FilePath(args.graph6).read_text().splitlines() if ln.strip()]
        if not lines:
            raise InputError(f"{args.graph6} holds no graph")
        return parse_graph6(lines[0]), None
    raise InputError("give a graph with --family, --edges or --graph6")


def _add_graph_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--family", help="family spec, e.g. cycle:5, grid:2,4, corona(path:3)")
    src.add_argument("--edges", help="edge-list file: header 'n m', then m lines 'u v'")
    src.add_argument("--graph6", help="graph6 file (first line is used)")
    p.add_argument("--base", help="base family for --family corona / subdivision")


def _limits(args) -> SolverLimits:
    return SolverLimits(max_states=args.max_states) if args.max_states else SolverLimits()


# -- output ------------------------------------------------------------------------

class Output:
    def __init__(self, args, argv: list[str], stream: TextIO):
        self.args, self.argv, self.stream = args, argv, stream
        self.t0 = time.perf_counter()

    def emit(self, config: Any, outputs: dict[str, Any], text: str,
             stats: dict[str, Any] | None = None) -> None:
        if self.args.json:
            doc = {
                "schema": RESULT_SCHEMA,
                "command": self.argv,
                "config": config,
                "outputs": outputs,
                "stats": stats or {},
                "version": __version__,
                "timing": round(time.perf_counter() - self.t0, 6),
            }
            print(json.dumps(doc, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


def _letters(profile) -> str:
    return " ".join("A" if w is ALICE else "B" for w in profile.winners)


# -- commands ----------------------------------------------------------------------

def cmd_solve(args, out: Output) -> int:
    g, _ = load_graph(args)
    config = GameConfig(g, args.k, Player.parse(args.first))
    winner, stats = solve(config, _limits(args))
    out.emit(config_to_dict(config), {"winner": winner.value},
             f"{g.tag or to_graph6(g)}  k={args.k}  {config.game_name}-game: {winner.value} wins",
             stats.as_dict())
    return EXIT_OK


def cmd_numbers(args, out: Output) -> int:
    g, _ = load_graph(args)
    nums = game_domatic_numbers(g, args.k_max, _limits(args))
    text = (f"{g.tag or to_graph6(g)}\n"
            f"  A-game profile (k=1..{nums.a_profile.k_max}): {_letters(nums.a_profile)}\n"
            f"  B-game profile (k=1..{nums.b_profile.k_max}): {_letters(nums.b_profile)}\n"
            f"  dg = {nums.dg}   dg' = {nums.dg_delayed}")
    out.emit({"graph": config_to_dict(GameConfig(g, 1))["edges"], "n": g.order, "tag": g.tag},
             nums.to_dict(), text)
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    if args.suite:
        if args.suite not in ("core", "paper-core"):
            raise InputError(f"unknown suite {args.suite!r} (known: core)")
        families = core_suite()
    elif args.family:
        families = expand_family_range(args.family)
    else:
        raise InputError("give --suite or --family")
    try:
        findings = verify_family(families, _limits(args), args.workers)
    except NotCoveredError as exc:
        raise InputError(str(exc)) from None
    rows = []
    for f in findings:
        exp, got = f.witness["expected"], f.witness["solved"]
        verdict = "MISMATCH" if THEOREM_MISMATCH in f.flags else (
            "skipped" if CAPACITY_SKIP in f.flags else "ok")
        rows.append(f"{f.graph_id:<14} expected {_pair(exp):<8} solved {_pair(got):<8} {verdict}")
    bad = [f for f in findings if THEOREM_MISMATCH in f.flags]
    rows.append(f"{len(findings)} instances, {len(bad)} mismatches")
    out.emit({"suite": args.suite, "family": args.family},
             {"findings": [f.to_dict() for f in findings], "mismatches": len(bad)},
             "\n".join(rows))
    return EXIT_MISMATCH if bad else EXIT_OK


def _pair(p) -> str:
    return "(" + ",".join("-" if x is None else str(x) for x in p) + ")"


def cmd_arena(args, out: Output) -> int:
    g, base = load_graph(args)
    first = build_strategy(args.first, g, base)
    second = build_strategy(args.second, g, base, side=first.side.other)
    config = GameConfig(g, args.k, first.side)
    tr = play_match(first, second, config)
    lines = [f"{r.ply:>3}  {r.player.value:<5} v{r.vertex} <- {r.color}" for r in tr.moves]
    lines.append(f"result: {tr.final.value}")
    out.emit(config_to_dict(config), {"transcript": tr.to_dict(), "final": tr.final.value},
             "\n".join(lines))
    return EXIT_OK


def cmd_validate(args, out: Output) -> int:
    g, base = load_graph(args)
    first = Player.parse(args.first)
    strat = build_strategy(args.strategy, g, base, side=Player.parse(args.side) if args.side else None)
    config = GameConfig(g, args.k, first)
    rep = validate_strategy(strat, strat.side, config, _limits(args))
    text = f"{strat.name} ({strat.side.value}) on {g.tag or to_graph6(g)}, k={args.k}, " \
           f"{config.game_name}-game: {rep.verdict} ({rep.states_checked} states)"
    if rep.counter_line:
        text += "\ncounter-line: " + ", ".join(
            f"{r.player.value}:{r.vertex}<-{r.color}" for r in rep.counter_line.moves)
    out.emit(config_to_dict(config), rep.to_dict(), text)
    return EXIT_OK if rep.holds else EXIT_FAILED


def _census_graphs(expr: str) -> list[Graph]:
    expr = expr.replace(" ", "")
    if not expr.startswith("n<="):
        raise InputError("census spec must look like n<=5")
    top = int(expr[3:])
    gs = []
    for n in range(1, top + 1):
        gs += connected_graphs(n)
    return gs


def cmd_search(args, out: Output) -> int:
    limits = _limits(args)
    if args.mode == "monotonicity":
        if args.census:
            graphs = _census_graphs(args.census)
        elif args.graph6:
            with open(args.graph6) as fh:
                graphs = list(read_graph6_stream(fh))
        else:
            graphs = [load_graph(args)[0]]
        findings = monotonicity_search(graphs, args.k_max, limits, args.workers)
        flagged = [f for f in findings if MONOTONICITY_VIOLATION in f.flags]
        rows = [f"{f.graph_id:<12} A {f.profiles['A'].letters() if 'A' in f.profiles else '-':<8} "
                f"B {f.profiles['B'].letters() if 'B' in f.profiles else '-':<8} "
                f"{'VIOLATION' if f in flagged else ''}" for f in findings]
        rows.append(f"{len(findings)} graphs, {len(flagged)} with a Bob-then-Alice step")
        outputs = {"findings": [f.to_dict() for f in findings], "violations": len(flagged)}
    else:
        g, _ = load_graph(args)
        findings = edge_deletion_scan(g, limits)
        rows = []
        for f in findings:
            w = f.witness
            rows.append(f"-{tuple(w['edge'])}: {_pair(w['base'])} -> {_pair(w.get('after', [None, None]))}"
                        + ("  RAISE" if EDGE_DELETION_RAISE in f.flags else ""))
        outputs = {"findings": [f.to_dict() for f in findings],
                   "raises": sum(EDGE_DELETION_RAISE in f.flags for f in findings)}
    if args.archive:
        from .experiments import archive_to_json

        FilePath(args.archive).write_text(archive_to_json(findings))
    out.emit({"mode": args.mode}, outputs, "\n".join(rows))
    return EXIT_OK


def cmd_generate(args, out: Output) -> int:
    g, _ = load_graph(args)
    fmt = args.format
    text = to_graph6(g) if fmt == "graph6" else format_edge_list_text(g).rstrip("\n")
    out.emit({"tag": g.tag}, {"graph6": to_graph6(g), "n": g.order,
                              "edges": [list(e) for e in g.sorted_edges()]}, text)
    return EXIT_OK


def cmd_play(args, out: Output, stdin: TextIO = sys.stdin) -> int:
    g, _ = load_graph(args)
    config = GameConfig(g, args.k, Player.parse(args.first))
    human = Player.parse(args.human)
    limits = _limits(args)
    state = new_game(config)
    tr = Transcript(config, meta={"human": human.value})
    say: Callable[[str], None] = lambda s: print(s, file=out.stream)
    say(f"{g.tag or to_graph6(g)}: vertices 0..{g.order - 1}, colours 1..{config.k}; "
        f"you are {human.value}")
    ply = 0
    while not status(state).decided:
        mover = state.to_move
        if mover is human:
            print("your move (vertex colour): ", end="", file=out.stream, flush=True)
            line = stdin.readline()
            if not line:
                say("\ninput closed")
                return EXIT_USAGE
            try:
                v, c = (int(x) for x in line.split())
                move = Move(v, c)
                check_move(state, move)
            except (ValueError, IllegalMoveError) as exc:
                say(f"  not accepted: {exc}; try again")
                continue
        else:
            move = optimal_move(state, limits)
            say(f"engine ({mover.value}) colours {move.vertex} with {move.color}")
        ply += 1
        state = apply_move(state, move)
        tr.moves.append(MoveRecord(ply, mover, move.vertex, move.color))
        say(f"  status: {status(state).value}")
    tr.final = status(state)
    say(f"game over: {tr.final.value}")
    if args.transcript:
        FilePath(args.transcript).write_text(tr.to_json())
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domatic-game",
                                description="Exact solver and experiments for the domatic number game.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured result document")
    common.add_argument("--max-states", type=int, default=None,
                        help="capacity guard (default from DOMATIC_MAX_STATES or 1e8)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="optimal-play winner of one game")
    _add_graph_args(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--first", default="alice")
    s.set_defaults(func=cmd_solve)

    for name in ("numbers", "profile"):
        s = sub.add_parser(name, parents=[common], help="win profiles and dg, dg'")
        _add_graph_args(s)
        s.add_argument("--k-max", type=int, default=None)
        s.set_defaults(func=cmd_numbers)

    s = sub.add_parser("verify", parents=[common], help="solver vs closed forms")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--suite")
    grp.add_argument("--family", help="range spec, e.g. path:2..10 or trees:8")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("arena", parents=[common], help="play two strategies against each other")
    _add_graph_args(s)
    s.add_argument("--first", required=True, help="strategy id of the player moving first")
    s.add_argument("--second", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_arena)

    s = sub.add_parser("validate", parents=[common], help="check a strategy against all replies")
    _add_graph_args(s)
    s.add_argument("--strategy", required=True)
    s.add_argument("--side", default=None, help="side for strategies that play either side")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--first", default="alice")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("search", parents=[common], help="open-question search harnesses")
    s.add_argument("mode", choices=["monotonicity", "edge-deletion"])
    _add_graph_args(s, required=False)
    s.add_argument("--census", help="connected-graph census, e.g. 'n<=5'")
    s.add_argument("--k-max", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--archive", help="write the findings archive to this file")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("generate", parents=[common], help="print a family member")
    _add_graph_args(s)
    s.add_argument("--format", choices=["graph6", "edges"], default="graph6")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("play", parents=[common], help="play against the solver in the terminal")
    _add_graph_args(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--first", default="alice")
    s.add_argument("--human", default="alice")
    s.add_argument("--transcript", help="write the finished game here as JSON")
    s.set_defaults(func=cmd_play)
    return p


def main(argv: list[str] | None = None, stream: TextIO | None = None,
         stdin: TextIO | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    out = Output(args, argv, stream or sys.stdout)
    try:
        if args.func is cmd_play:
            return cmd_play(args, out, stdin or sys.stdin)
        return args.func(args, out)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except StrategyFault as exc:
        print(f"strategy fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except (UsageError, DomaticGameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
