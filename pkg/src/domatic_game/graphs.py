"""Graphs, family generators and domination primitives.

Vertices are the integers ``0..n-1``.  Generators document their labelling
so that transcripts and examples are reproducible:

* ``Path(n)`` and ``Cycle(n)``: vertices in path / cycle order.
* ``CompleteBipartite(m, n)``: the ``m``-side is ``0..m-1``, the ``n``-side
  is ``m..m+n-1``.
* ``Grid(m, n)`` is ``P_m x P_n`` (Cartesian product), row-major: vertex
  ``(i, j)`` gets label ``i*n + j``.
* ``Corona(base)``: leaf ``i + n`` hangs off base vertex ``i``.
* ``Subdivision(base)``: old vertices keep ``0..n-1``; the vertex that
  replaces the ``t``-th edge of the base (edges sorted lexicographically as
  ``(u, v)`` with ``u < v``) is ``n + t``.
* ``Bowtie()``: triangles ``0,1,2`` and ``2,3,4`` sharing vertex 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import CapacityError, InputError, ParseError

Edge = tuple[int, int]

DOMINATION_MAX_ORDER = 32
DOMATIC_MAX_ORDER = 20
MATCHING_MAX_ORDER = 32


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph on ``0..order-1``.

    Build instances with :func:`from_edge_list`; the constructor assumes the
    edge set is already normalised.
    """

    order: int
    edges: frozenset[Edge]
    tag: str | None = None
    adjacency: tuple[frozenset[int], ...] = field(init=False, repr=False)
    closed_masks: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        adj: list[set[int]] = [set() for _ in range(self.order)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))
        masks = []
        for v, nbrs in enumerate(adj):
            m = 1 << v
            for u in nbrs:
                m |= 1 << u
            masks.append(m)
        object.__setattr__(self, "closed_masks", tuple(masks))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.edges == other.edges

    def __hash__(self):
        return hash((self.order, self.edges))

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.order)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_tag(self, tag: str | None) -> "Graph":
        return Graph(self.order, self.edges, tag)

    def relabel(self, perm: Sequence[int], tag: str | None = None) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.order)):
            raise InputError("relabelling must be a permutation of the vertices")
        return from_edge_list(self.order, [(perm[u], perm[v]) for u, v in self.edges], tag)

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabelled densely.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        old = sorted(set(keep))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return from_edge_list(max(len(old), 1), edges), old

    def remove_edge(self, e: Edge) -> "Graph":
        e = _norm_edge(*e)
        if e not in self.edges:
            raise InputError(f"edge {e} not in graph")
        return Graph(self.order, self.edges - {e}, None)

    def components(self) -> list[list[int]]:
        seen = [False] * self.order
        comps = []
        for s in range(self.order):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.size == self.order - len(self.components())

    def is_tree(self) -> bool:
        return self.is_forest() and self.is_connected()

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.order))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self):
        name = self.tag or "Graph"
        return f"<{name}: n={self.order}, m={self.size}>"


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def from_edge_list(n: int, edges: Iterable[Sequence[int]], tag: str | None = None) -> Graph:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"vertex count must be a positive integer, got {n!r}")
    norm = set()
    for pair in edges:
        if len(pair) != 2:
            raise InputError(f"edge {pair!r} is not a vertex pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        norm.add(_norm_edge(u, v))
    return Graph(n, frozenset(norm), tag)


# -- text formats -----------------------------------------------------------

def parse_edge_list_text(text: str, tag: str | None = None) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines ``u v``."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("edge list needs an 'n m' header")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer token in edge list: {exc}") from None
    n, m = values[0], values[1]
    body = values[2:]
    if len(body) != 2 * m:
        raise ParseError(f"header announces {m} edges but {len(body) / 2:g} were given")
    return from_edge_list(n, list(zip(body[0::2], body[1::2])), tag)


def format_edge_list_text(g: Graph) -> str:
    lines = [f"{g.order} {g.size}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one short-form graph6 line (``n <= 62``)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.strip()
    base = 0
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    if not line:
        raise ParseError("empty graph6 string", base)
    data = [ord(ch) for ch in line]
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"byte {b} outside the graph6 range 63..126", base + i)
    if data[0] == 126:
        raise ParseError("long-form graph6 (n > 62) is not supported", base)
    n = data[0] - 63
    if n < 1:
        raise ParseError("graph6 encodes the empty graph; at least one vertex is required", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise ParseError(f"truncated bit field: expected {nbytes} bytes, got {len(body)}",
                         base + 1 + len(body))
    if len(body) > nbytes:
        raise ParseError("trailing bytes after the bit field", base + 1 + nbytes)
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits", base + len(data) - 1)
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return from_edge_list(n, edges)


def to_graph6(g: Graph) -> str:
    if g.order > 62:
        raise InputError("only the short graph6 form (n <= 62) is supported")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.order) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.order + 63)]
    for t in range(0, len(bits), 6):
        v = 0
        for b in bits[t:t + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


# -- families ---------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class CompleteBipartite:
    m: int
    n: int


@dataclass(frozen=True)
class Grid:
    m: int
    n: int


@dataclass(frozen=True)
class Corona:
    base: "FamilySpec"


@dataclass(frozen=True)
class Subdivision:
    base: "FamilySpec"


@dataclass(frozen=True)
class Bowtie:
    pass


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple["FamilySpec", ...]


@dataclass(frozen=True)
class Custom:
    graph: Graph


FamilySpec = (Path | Cycle | Complete | CompleteBipartite | Grid | Corona | Subdivision
              | Bowtie | DisjointUnion | Custom)


def family_tag(spec: FamilySpec) -> str:
    match spec:
        case Path(n):
            return f"P{n}"
        case Cycle(n):
            return f"C{n}"
        case Complete(n):
            return f"K{n}"
        case CompleteBipartite(m, n):
            return f"K{m},{n}"
        case Grid(m, n):
            return f"P{m}xP{n}"
        case Corona(base):
            return f"{family_tag(base)}oK1"
        case Subdivision(base):
            return f"S({family_tag(base)})"
        case Bowtie():
            return "bowtie"
        case DisjointUnion(parts):
            return "+".join(family_tag(p) for p in parts)
        case Custom(graph):
            return graph.tag or to_graph6(graph)
    raise InputError(f"unknown family {spec!r}")


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cartesian_product(g: Graph, h: Graph, tag: str | None = None) -> Graph:
    """``G x H`` with ``(a, b)`` labelled ``a * |H| + b``."""
    nh = h.order
    edges = []
    for a in range(g.order):
        for b1, b2 in h.edges:
            edges.append((a * nh + b1, a * nh + b2))
    for a1, a2 in g.edges:
        for b in range(nh):
            edges.append((a1 * nh + b, a2 * nh + b))
    return from_edge_list(g.order * nh, edges, tag)


def corona(g: Graph, tag: str | None = None) -> Graph:
    n = g.order
    return from_edge_list(2 * n, list(g.edges) + [(i, i + n) for i in range(n)], tag)


def subdivision(g: Graph, tag: str | None = None) -> Graph:
    n = g.order
    edges = []
    for t, (u, v) in enumerate(g.sorted_edges()):
        edges += [(u, n + t), (v, n + t)]
    return from_edge_list(n + g.size, edges, tag)


def subdivision_vertex(g: Graph, u: int, v: int) -> int:
    """Label of the vertex replacing edge ``uv`` in :func:`subdivision`."""
    return g.order + g.sorted_edges().index(_norm_edge(u, v))


def disjoint_union(*graphs: Graph, tag: str | None = None) -> Graph:
    """Union with the vertices of each part shifted after the previous ones."""
    offset, edges = 0, []
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.order
    return from_edge_list(offset, edges, tag)


def generate(spec: FamilySpec) -> Graph:
    tag = family_tag(spec)
    match spec:
        case Path(n):
            _need(n >= 1, f"path needs n >= 1, got {n}")
            return path_graph(n)
        case Cycle(n):
            _need(n >= 3, f"cycle needs n >= 3, got {n}")
            return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)], tag)
        case Complete(n):
            _need(n >= 1, f"complete graph needs n >= 1, got {n}")
            return from_edge_list(n, itertools.combinations(range(n), 2), tag)
        case CompleteBipartite(m, n):
            _need(m >= 1 and n >= 1, f"complete bipartite needs m, n >= 1, got {m}, {n}")
            return from_edge_list(m + n, [(i, m + j) for i in range(m) for j in range(n)], tag)
        case Grid(m, n):
            _need(m >= 1 and n >= 1, f"grid needs m, n >= 1, got {m}, {n}")
            return cartesian_product(path_graph(m), path_graph(n), tag)
        case Corona(base):
            return corona(generate(base), tag)
        case Subdivision(base):
            return subdivision(generate(base), tag)
        case Bowtie():
            return from_edge_list(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)], tag)
        case DisjointUnion(parts):
            _need(len(parts) >= 1, "disjoint union needs at least one part")
            return disjoint_union(*(generate(p) for p in parts), tag=tag)
        case Custom(graph):
            return graph
    raise InputError(f"unknown family {spec!r}")


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


_FAMILY_ARITY = {
    "path": (Path, 1), "cycle": (Cycle, 1), "complete": (Complete, 1),
    "complete_bipartite": (CompleteBipartite, 2), "grid": (Grid, 2),
}


def parse_family(text: str) -> FamilySpec:
    """Parse specs such as ``cycle:5``, ``grid:2,4``, ``corona(cycle:3)``,
    ``subdivision(bowtie)`` or ``union(bowtie,bowtie)``."""
    text = text.strip().lower()
    for wrapper, cls in (("corona", Corona), ("subdivision", Subdivision)):
        if text.startswith(wrapper + "(") and text.endswith(")"):
            return cls(parse_family(text[len(wrapper) + 1:-1]))
    if text.startswith("union(") and text.endswith(")"):
        return DisjointUnion(tuple(parse_family(p) for p in _split_top(text[6:-1])))
    if text == "bowtie":
        return Bowtie()
    name, _, args = text.partition(":")
    if name not in _FAMILY_ARITY:
        raise InputError(f"unknown family {name!r}")
    cls, arity = _FAMILY_ARITY[name]
    try:
        params = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise InputError(f"bad parameters in family spec {text!r}") from None
    if len(params) != arity:
        raise InputError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    return cls(*params)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts


# -- domination primitives -----------------------------------------------------

def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.order:
        raise InputError(f"vertex {v} out of range for order {g.order}")
    return g.adjacency[v] | {v}


@dataclass(frozen=True)
class LeafSupportProfile:
    leaves: frozenset[int]
    supports: frozenset[int]
    strong_supports: frozenset[int]

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @property
    def support_count(self) -> int:
        return len(self.supports)


def leaf_support_profile(g: Graph) -> LeafSupportProfile:
    leaves = frozenset(v for v in g.vertices() if g.degree(v) == 1)
    supports = frozenset(w for v in leaves for w in g.adjacency[v])
    strong = frozenset(w for w in supports if len(g.adjacency[w] & leaves) >= 2)
    return LeafSupportProfile(leaves, supports, strong)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def is_dominating(g: Graph, dset: Iterable[int]) -> bool:
    d = _mask(dset)
    return all(cm & d for cm in g.closed_masks)


def domination_number(g: Graph) -> int:
    if g.order > DOMINATION_MAX_ORDER:
        raise CapacityError(f"domination_number is exhaustive; n={g.order} > {DOMINATION_MAX_ORDER}")
    masks = g.closed_masks
    full = (1 << g.order) - 1
    for size in range(1, g.order + 1):
        for combo in itertools.combinations(range(g.order), size):
            covered = 0
            for v in combo:
                covered |= masks[v]
            if covered == full:
                return size
    raise AssertionError("the whole vertex set always dominates")


def minimal_dominating_set(g: Graph) -> frozenset[int]:
    """Greedy dominating set, then shrunk until every member is necessary."""
    full = (1 << g.order) - 1
    chosen: list[int] = []
    covered = 0
    while covered != full:
        best = max(g.vertices(), key=lambda v: (bin(g.closed_masks[v] & ~covered).count("1"), -v))
        chosen.append(best)
        covered |= g.closed_masks[best]
    current = set(chosen)
    for v in sorted(chosen):
        if is_dominating(g, current - {v}):
            current.remove(v)
    return frozenset(current)


def domatic_number(g: Graph) -> int:
    """Largest ``k`` admitting a partition of V(G) into ``k`` dominating sets."""
    if g.order > DOMATIC_MAX_ORDER:
        raise CapacityError(f"domatic_number is exhaustive; n={g.order} > {DOMATIC_MAX_ORDER}")
    for k in range(g.min_degree + 1, 1, -1):
        if domatic_partition(g, k) is not None:
            return k
    return 1


def domatic_partition(g: Graph, k: int) -> list[frozenset[int]] | None:
    """Find a ``k``-domatic partition by backtracking, or return None.

    Classes are opened in order (a vertex may only start class ``max+1``),
    and a branch is cut as soon as some closed neighbourhood has fewer
    uncoloured vertices than classes it still misses.
    """
    n = g.order
    if k > n:
        return None
    nbrs = [sorted(g.adjacency[v] | {v}) for v in range(n)]
    # order vertices so that small neighbourhoods fill early
    order = sorted(range(n), key=lambda v: (len(nbrs[v]), v))
    counts = [[0] * k for _ in range(n)]
    missing = [k] * n
    free = [len(nbrs[v]) for v in range(n)]
    colour = [-1] * n

    def assign(v: int, c: int, sign: int) -> None:
        for w in nbrs[v]:
            free[w] -= sign
            if sign > 0:
                if counts[w][c] == 0:
                    missing[w] -= 1
                counts[w][c] += 1
            else:
                counts[w][c] -= 1
                if counts[w][c] == 0:
                    missing[w] += 1

    def feasible(v: int) -> bool:
        return all(missing[w] <= free[w] for w in nbrs[v])

    def search(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            colour[v] = c
            assign(v, c, 1)
            if feasible(v) and search(i + 1, max(used, c + 1)):
                return True
            assign(v, c, -1)
        colour[v] = -1
        return False

    if not search(0, 0):
        return None
    return [frozenset(v for v in range(n) if colour[v] == c) for c in range(k)]


def maximum_matching(g: Graph) -> frozenset[Edge]:
    """Maximum-cardinality matching (blossom algorithm from networkx)."""
    if g.order > MATCHING_MAX_ORDER:
        raise CapacityError(f"maximum_matching guard: n={g.order} > {MATCHING_MAX_ORDER}")
    matching = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    return frozenset(_norm_edge(u, v) for u, v in matching)


def has_perfect_matching(g: Graph) -> bool:
    return g.order % 2 == 0 and 2 * len(maximum_matching(g)) == g.order


# -- forest peeling -----------------------------------------------------------

ISOLATED = "isolated_vertex"
LARGE_STAR = "large_star"
STRONG_SUPPORT = "strong_support"
EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Terminal:
    kind: str
    q: int
    isolated: tuple[int, ...] = ()
    # (center, leaves) per large-star component of F_q
    stars: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def center(self) -> int | None:
        return self.stars[0][0] if self.kind in (LARGE_STAR, STRONG_SUPPORT) else None


@dataclass(frozen=True)
class PeelLayer:
    vertices: frozenset[int]
    leaves: frozenset[int]
    supports: frozenset[int]
    # leaf -> its unique neighbour inside the layer
    leaf_support: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PeelSequence:
    forest: Graph
    layers: tuple[PeelLayer, ...]
    terminal: Terminal

    @property
    def q(self) -> int:
        return self.terminal.q

    def layer_graph(self, i: int) -> Graph:
        sub, _ = self.forest.induced_subgraph(self.layers[i].vertices)
        return sub

    def layer_of(self, v: int) -> int | None:
        """Index ``i`` with ``v`` a leaf or support of ``F_i``, if any before the end."""
        for i, layer in enumerate(self.layers):
            if v in layer.leaves or v in layer.supports:
                return i
        return None


def _layer(g: Graph, keep: frozenset[int]) -> PeelLayer:
    deg = {v: len(g.adjacency[v] & keep) for v in keep}
    leaves = frozenset(v for v in keep if deg[v] == 1)
    pairs = []
    for v in sorted(leaves):
        (w,) = g.adjacency[v] & keep
        pairs.append((v, w))
    supports = frozenset(w for _, w in pairs)
    return PeelLayer(keep, leaves, supports, tuple(pairs))


def _terminal_at(g: Graph, keep: frozenset[int], q: int) -> Terminal | None:
    isolated, stars = [], []
    sub_adj = {v: g.adjacency[v] & keep for v in keep}
    seen: set[int] = set()
    for s in sorted(keep):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            v = stack.pop()
            for u in sub_adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        if len(comp) == 1:
            isolated.append(s)
        elif len(comp) >= 3:
            centres = [v for v in comp if len(sub_adj[v]) == len(comp) - 1]
            if centres and all(len(sub_adj[v]) == 1 for v in comp if v != centres[0]):
                c = centres[0]
                stars.append((c, tuple(sorted(comp - {c}))))
    if isolated:
        return Terminal(ISOLATED, q, tuple(isolated), tuple(stars))
    if stars:
        return Terminal(LARGE_STAR, q, (), tuple(stars))
    # a vertex with two or more leaves inside a bigger component
    hanging = []
    for w in sorted(keep):
        leaves = tuple(sorted(u for u in sub_adj[w] if len(sub_adj[u]) == 1))
        if len(leaves) >= 2:
            hanging.append((w, leaves))
    if hanging:
        return Terminal(STRONG_SUPPORT, q, (), tuple(hanging))
    return None


def forest_peel_sequence(forest: Graph) -> PeelSequence:
    """Repeatedly strip leaves and supports until an isolated vertex, a star
    with at least two leaves, or a strong support shows up, or nothing is left.

    Without the strong-support stop a tree such as a spider with two legs
    of length 1 would peel away completely although it has no perfect
    matching.
    """
    if not forest.is_forest():
        raise InputError("forest_peel_sequence needs an acyclic graph")
    keep = frozenset(forest.vertices())
    layers = []
    q = 0
    while True:
        layers.append(_layer(forest, keep))
        term = _terminal_at(forest, keep, q)
        if term is not None:
            return PeelSequence(forest, tuple(layers), term)
        nxt = keep - layers[-1].leaves - layers[-1].supports
        if not nxt:
            return PeelSequence(forest, tuple(layers), Terminal(EXHAUSTED, q))
        keep = nxt
        q += 1
