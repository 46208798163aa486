"""Theorem regression tables, small-graph censuses and open-question searches."""

from __future__ import annotations

import functools
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from .errors import CapacityError, InputError, NotCoveredError
from .game import ALICE, BOB
from .graphs import (
    Complete,
    CompleteBipartite,
    Corona,
    Custom,
    Cycle,
    FamilySpec,
    Graph,
    Grid,
    Path,
    Subdivision,
    family_tag,
    from_edge_list,
    generate,
    has_perfect_matching,
    is_dominating,
    minimal_dominating_set,
    parse_family,
    parse_graph6,
    to_graph6,
)
from .solver import SolverLimits, WinProfile, win_profile

log = logging.getLogger(__name__)

ARCHIVE_SCHEMA = "domatic-game/findings/1"

MONOTONICITY_VIOLATION = "MonotonicityViolation"
EDGE_DELETION_RAISE = "EdgeDeletionRaise"
THEOREM_MISMATCH = "TheoremMismatch"
CAPACITY_SKIP = "CapacitySkip"


# -- closed forms ------------------------------------------------------------

@dataclass(frozen=True)
class ExpectedValue:
    """Closed-form game numbers.  ``None`` marks a number with no closed form
    for this member (e.g. dg of larger grids)."""

    family: FamilySpec
    dg_expected: int | None
    dg_delayed_expected: int | None
    source: str


def _ceil_half(x: int) -> int:
    return -(-x // 2)


def _has_overlapping_cycles(g: Graph) -> bool:
    from .strategies.cycles import cycle_pairs

    return bool(cycle_pairs(g))


def expected_value(family: FamilySpec) -> ExpectedValue:
    """The (dg, dg') pair predicted by the closed forms for ``family``."""
    match family:
        case Complete(n) if n >= 1:
            return ExpectedValue(family, _ceil_half(n), (n + 1) // 2 if n % 2 else (n + 2) // 2,
                                 "cliques")
        case Path(n) if n >= 1:
            return ExpectedValue(family, 1, 1 if n % 2 else 2, "paths")
        case Cycle(n) if n >= 3:
            return ExpectedValue(family, 2 if n == 3 else 1,
                                 1 if n >= 5 and n % 2 else 2, "cycles")
        case CompleteBipartite(a, b) if min(a, b) >= 2:
            m, n = sorted((a, b))
            up = _ceil_half(m + 1)
            dg = m // 2 if m % 2 == 0 and n % 2 == 0 else up
            dgp = m // 2 if m % 2 == 0 and n % 2 == 1 else up
            return ExpectedValue(family, dg, dgp, "complete_bipartite")
        case Grid(a, b) if min(a, b) >= 2:
            m, n = sorted((a, b))
            dg = 1 if m == 2 else None
            dgp = 2 if (m % 2 == 0 or n % 2 == 0) else None
            if dg is None and dgp is None:
                raise NotCoveredError(f"no closed form for {family_tag(family)}")
            return ExpectedValue(family, dg, dgp, "grids")
        case Corona(_):
            return ExpectedValue(family, 1, 2, "corona")
        case Subdivision(base):
            if _has_overlapping_cycles(generate(base)):
                return ExpectedValue(family, None, 1, "subdivision_overlapping_cycles")
        case Custom(g) if g.order >= 2 and g.is_tree():
            return ExpectedValue(family, 1, 2 if has_perfect_matching(g) else 1, "trees")
    raise NotCoveredError(f"no closed form covers {family_tag(family)}")


# -- findings ----------------------------------------------------------------

@dataclass
class Finding:
    graph_id: str
    profiles: dict[str, WinProfile] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph_id": self.graph_id,
            "profiles": {k: p.to_dict() for k, p in self.profiles.items()},
            "flags": list(self.flags),
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "Finding":
        return cls(doc["graph_id"],
                   {k: WinProfile.from_dict(p) for k, p in doc["profiles"].items()},
                   list(doc["flags"]), doc["witness"])


def archive_to_json(findings: Iterable[Finding]) -> str:
    return json.dumps({"schema": ARCHIVE_SCHEMA,
                       "findings": [f.to_dict() for f in findings]}, sort_keys=True)


def archive_from_json(text: str) -> list[Finding]:
    doc = json.loads(text)
    if doc.get("schema") != ARCHIVE_SCHEMA:
        raise InputError(f"not a findings archive (schema {doc.get('schema')!r})")
    return [Finding.from_dict(f) for f in doc["findings"]]


def graph_id(g: Graph) -> str:
    return g.tag or to_graph6(g)


def _map(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- theorem regression --------------------------------------------------------

def _verify_one(task: tuple[FamilySpec, SolverLimits | None]) -> Finding:
    family, limits = task
    exp = expected_value(family)
    g = generate(family)
    f = Finding(graph_id(g), witness={
        "family": family_tag(family), "graph6": to_graph6(g), "source": exp.source,
        "expected": [exp.dg_expected, exp.dg_delayed_expected],
    })
    got: list[int | None] = [None, None]
    for i, (first, want) in enumerate(((ALICE, exp.dg_expected), (BOB, exp.dg_delayed_expected))):
        if want is None:
            continue
        try:
            prof = win_profile(g, first, limits=limits)
        except CapacityError as exc:
            f.flags.append(CAPACITY_SKIP)
            f.witness.setdefault("capacity", []).append(str(exc))
            continue
        f.profiles["A" if first is ALICE else "B"] = prof
        got[i] = prof.game_number
    f.witness["solved"] = got
    if any(w is not None and s is not None and w != s
           for w, s in zip(f.witness["expected"], got)):
        f.flags.append(THEOREM_MISMATCH)
    return f


def verify_family(families: Iterable[FamilySpec], limits: SolverLimits | None = None,
                  workers: int = 1) -> list[Finding]:
    """Solver values against closed forms, one finding per instance.

    Disagreements get a TheoremMismatch flag; capacity trouble on one instance
    is recorded and the rest carry on.
    """
    return _map(_verify_one, [(f, limits) for f in families], workers)


def trees(n_max: int, n_min: int = 2) -> list[Graph]:
    out = []
    for n in range(n_min, n_max + 1):
        out += enumerate_trees(n)
    return out


def expand_family_range(text: str) -> list[FamilySpec]:
    """``path:2..10``, ``complete_bipartite:2..4,2..5``, ``trees:8`` or a single spec."""
    name, _, args = text.strip().lower().partition(":")
    if name == "trees":
        return [Custom(t) for t in trees(int(args))]
    if ".." not in args:
        return [parse_family(text)]
    ranges = []
    for part in args.split(","):
        lo, _, hi = part.partition("..")
        try:
            r = range(int(lo), int(hi or lo) + 1)
        except ValueError:
            raise InputError(f"bad range {part!r} in {text!r}") from None
        if not r:
            raise InputError(f"empty range {part!r} in {text!r}")
        ranges.append(r)
    specs = []
    for combo in itertools.product(*ranges):
        if name == "complete_bipartite" and combo[0] > combo[1]:
            continue
        specs.append(parse_family(f"{name}:{','.join(map(str, combo))}"))
    return specs


def core_suite() -> list[FamilySpec]:
    """Every instance in the release regression table."""
    suite: list[FamilySpec] = [Complete(n) for n in range(2, 9)]
    suite += [Path(n) for n in range(2, 11)]
    suite += [Cycle(n) for n in range(3, 11)]
    suite += [CompleteBipartite(m, n) for m in range(2, 5) for n in range(m, 5)]
    suite += [CompleteBipartite(2, 5), CompleteBipartite(4, 5)]
    suite += [Grid(n, 2) for n in range(2, 7)]
    suite += [Grid(3, 4)]
    suite += [Custom(t) for t in trees(8)]
    suite += [Corona(Path(3)), Corona(Cycle(3)), Corona(Path(4))]
    suite += [Subdivision(parse_family("bowtie"))]
    return suite


# -- census enumeration ------------------------------------------------------

def _refine(g: Graph) -> list[int]:
    """Colour refinement from degrees; colours are isomorphism-invariant ranks."""
    colour = [g.degree(v) for v in range(g.order)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in g.adjacency[v])))
               for v in range(g.order)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_form(g: Graph) -> tuple[int, int]:
    """Exact canonical code ``(order, adjacency bits)``.

    Vertices are ordered by refined colour; within each colour cell every
    permutation is tried and the smallest adjacency code wins.
    """
    n = g.order
    colour = _refine(g)
    cells = [[v for v in range(n) if colour[v] == c] for c in sorted(set(colour))]
    pairs = [(i, j) for j in range(n) for i in range(j)]
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for p in perms for v in p]
        code = 0
        for i, j in pairs:
            code = (code << 1) | (order[j] in g.adjacency[order[i]])
        if best is None or code < best:
            best = code
    return n, best or 0


def _from_code(n: int, code: int) -> Graph:
    pairs = [(i, j) for j in range(n) for i in range(j)]
    bits = len(pairs)
    edges = [p for t, p in enumerate(pairs) if (code >> (bits - 1 - t)) & 1]
    return from_edge_list(n, edges)


def all_graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class on ``n`` vertices (``n <= 7``)."""
    if not 1 <= n <= 7:
        raise InputError("the built-in census covers 1 <= n <= 7")
    classes = {canonical_form(from_edge_list(1, []))}
    for order in range(2, n + 1):
        nxt = set()
        for key in classes:
            h = _from_code(*key)
            for r in range(order):
                for nb in itertools.combinations(range(order - 1), r):
                    edges = list(h.edges) + [(u, order - 1) for u in nb]
                    nxt.add(canonical_form(from_edge_list(order, edges)))
        classes = nxt
    return [_from_code(*key) for key in sorted(classes)]


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in all_graphs(n) if len(g.components()) == 1]


def _tree_code(adj: list[list[int]], root: int, parent: int) -> str:
    return "(" + "".join(sorted(_tree_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def tree_canonical(g: Graph) -> str:
    """Centre-rooted nested-bracket encoding; equal iff the trees are isomorphic."""
    adj = [sorted(g.adjacency[v]) for v in range(g.order)]
    deg = [len(a) for a in adj]
    layer = [v for v in range(g.order) if deg[v] <= 1]
    left = g.order
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for u in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return min(_tree_code(adj, c, -1) for c in layer)


def prufer_tree(seq: tuple[int, ...]) -> Graph:
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return from_edge_list(n, edges)


def enumerate_trees(n: int) -> list[Graph]:
    """All trees of order ``n`` up to isomorphism, via labelled Prüfer codes."""
    if n < 1:
        raise InputError("tree order must be positive")
    return list(_trees_of_order(n))


@functools.cache
def _trees_of_order(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (from_edge_list(1, [], tag="T1.0"),)
    if n == 2:
        return (from_edge_list(2, [(0, 1)], tag="T2.0"),)
    seen: dict[str, Graph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = prufer_tree(seq)
        seen.setdefault(tree_canonical(t), t)
    out = []
    for i, key in enumerate(sorted(seen)):
        t = seen[key]
        out.append(Graph(t.order, t.edges, tag=f"T{n}.{i}"))
    return tuple(out)


def grow_trees(n: int) -> list[Graph]:
    """All trees of order ``n`` up to isomorphism, by hanging a leaf on every
    vertex of every tree one size smaller.  Faster than Prüfer codes past n = 8."""
    if n <= 2:
        return enumerate_trees(n)
    seen: dict[str, Graph] = {}
    for t in grow_trees(n - 1):
        for v in range(t.order):
            h = from_edge_list(n, list(t.edges) + [(v, n - 1)])
            seen.setdefault(tree_canonical(h), h)
    return [Graph(n, seen[key].edges, tag=f"T{n}.{i}") for i, key in enumerate(sorted(seen))]


def is_spider(t: Graph) -> bool:
    return sum(1 for v in t.vertices() if t.degree(v) >= 3) <= 1


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip().removeprefix(">>graph6<<")
        if line:
            yield parse_graph6(line)


# -- open-question searches ----------------------------------------------------

def _profiles(task: tuple[Graph, int | None, SolverLimits | None]) -> Finding:
    g, k_max, limits = task
    f = Finding(graph_id(g), witness={"graph6": to_graph6(g)})
    for first, label in ((ALICE, "A"), (BOB, "B")):
        try:
            f.profiles[label] = win_profile(g, first, k_max, limits)
        except CapacityError as exc:
            log.warning("skipping %s (%s-game): %s", f.graph_id, label, exc)
            f.flags.append(CAPACITY_SKIP)
            f.witness.setdefault("capacity", []).append(str(exc))
    return f


def monotonicity_violations(profile: WinProfile) -> list[int]:
    """Every ``k`` with Bob winning at ``k`` and Alice at ``k + 1``."""
    w = profile.winners
    return [k for k in range(1, len(w)) if w[k - 1] is BOB and w[k] is ALICE]


def monotonicity_search(graphs: Iterable[Graph], k_max: int | None = None,
                        limits: SolverLimits | None = None, workers: int = 1) -> list[Finding]:
    """Both win profiles of every graph (palettes ``1..k_max``, default
    ``min degree + 1``), flagging any Bob-then-Alice step."""
    findings = _map(_profiles, [(g, k_max, limits) for g in graphs], workers)
    for f in findings:
        for label, prof in f.profiles.items():
            ks = monotonicity_violations(prof)
            if ks:
                f.flags.append(MONOTONICITY_VIOLATION)
                f.witness.setdefault("violations", {})[label] = ks
    return sorted(findings, key=lambda f: f.graph_id)


def _numbers(g: Graph, limits: SolverLimits | None) -> tuple[int, int]:
    return (win_profile(g, ALICE, limits=limits).game_number,
            win_profile(g, BOB, limits=limits).game_number)


def edge_deletion_scan(g: Graph, limits: SolverLimits | None = None) -> list[Finding]:
    """dg and dg' of ``g`` and of each ``g - e``; a raise is flagged.

    Palettes run to ``min degree + 1`` of the graph being solved, so a
    deletion can only raise a number through the smaller graph's own play.
    """
    base = _numbers(g, limits)
    out = []
    for e in sorted(g.edges):
        h = g.remove_edge(e)
        f = Finding(f"{graph_id(g)}-{e[0]}{e[1]}",
                    witness={"graph6": to_graph6(h), "edge": list(e), "base": list(base)})
        try:
            dg, dgp = _numbers(h, limits)
        except CapacityError as exc:
            f.flags.append(CAPACITY_SKIP)
            f.witness["capacity"] = str(exc)
            out.append(f)
            continue
        f.witness["after"] = [dg, dgp]
        f.witness["delta"] = [dg - base[0], dgp - base[1]]
        if dg > base[0] or dgp > base[1]:
            f.flags.append(EDGE_DELETION_RAISE)
        out.append(f)
    return out


@dataclass(frozen=True)
class OreVerdict:
    holds: bool
    dominating_set: frozenset[int]
    complement: frozenset[int]


def ore_property_check(g: Graph, dset: Iterable[int] | None = None) -> OreVerdict:
    """Complement of a minimal dominating set dominates (no isolated vertices)."""
    if g.min_degree < 1:
        raise InputError("the complement property needs a graph without isolated vertices")
    d = frozenset(dset) if dset is not None else minimal_dominating_set(g)
    rest = frozenset(g.vertices()) - d
    return OreVerdict(is_dominating(g, rest), d, rest)
