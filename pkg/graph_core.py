"""
Graphs, trees, connectivity oracles and instance generators.

Every other module builds on the three value types defined here:
  Graph    — simple undirected graph on nodes 0..n-1 with dense edge ids,
             rational edge costs and optional node profits
  Tree     — a Graph that is a spanning tree of its node set
  EdgeSet  — candidate edges ("links") kept apart from a companion tree

All values are immutable after construction. Connectivity questions are
answered by networkx (augmenting-path flows, biconnected components).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx
from networkx.algorithms.connectivity import local_edge_connectivity, local_node_connectivity
from networkx.algorithms.flow import edmonds_karp

from errors import (
    BadParams,
    DegeneratePath,
    InvalidNode,
    InvalidPair,
    NotATree,
    NotConnected,
    Unsupported,
)
from utils import derive_rng, to_fraction

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


class Mode(str, Enum):
    EDGE = "edge"
    NODE = "node"


class GenKind(str, Enum):
    RANDOM_TREE = "random_tree"
    GNP = "gnp"
    CYCLE = "cycle"
    GRID = "grid"
    RANDOM_CACTUS = "random_cactus"
    COMPLETE = "complete"


def canonical(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    cost: Fraction = Fraction(1)

    @property
    def pair(self) -> Pair:
        return (self.u, self.v)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()
    profits: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise BadParams(f"node count must be nonnegative, got {self.n}")
        seen: set[Pair] = set()
        for position, e in enumerate(self.edges):
            if e.id != position:
                raise BadParams(f"edge ids must be dense, edge {position} has id {e.id}")
            if e.u == e.v:
                raise BadParams(f"self-loop on node {e.u}")
            if not e.u < e.v:
                raise BadParams(f"edge {e.id} is not in canonical (u < v) order")
            if e.u < 0 or e.v >= self.n:
                raise InvalidNode(f"edge {e.id} = {e.pair} leaves the node range 0..{self.n - 1}")
            if e.pair in seen:
                raise BadParams(f"parallel edge {e.pair}")
            if e.cost < 0:
                raise BadParams(f"edge {e.pair} has negative cost {e.cost}")
            seen.add(e.pair)
        if self.profits is not None:
            if len(self.profits) != self.n:
                raise BadParams("profits must list one value per node")
            if any(p < 0 for p in self.profits):
                raise BadParams("node profits must be nonnegative")

    @classmethod
    def build(
        cls,
        n: int,
        pairs: Iterable[Pair],
        costs: Optional[Sequence[Any]] = None,
        profits: Optional[Sequence[Any]] = None,
    ) -> "Graph":
        """Canonicalize endpoint order and assign dense edge ids."""
        pairs = list(pairs)
        if costs is not None and len(costs) != len(pairs):
            raise BadParams("costs must list one value per edge")
        edges = []
        for i, (u, v) in enumerate(pairs):
            if u == v:
                raise BadParams(f"self-loop on node {u}")
            a, b = canonical(u, v)
            cost = to_fraction(costs[i]) if costs is not None else Fraction(1)
            edges.append(Edge(i, a, b, cost))
        profit_tuple = tuple(to_fraction(p) for p in profits) if profits is not None else None
        return cls(n, tuple(edges), profit_tuple)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for e in self.edges:
            g.add_edge(e.u, e.v, id=e.id, cost=e.cost)
        return nx.freeze(g)

    @cached_property
    def _index(self) -> dict[Pair, Edge]:
        return {e.pair: e for e in self.edges}

    def edge_between(self, u: int, v: int) -> Optional[Edge]:
        return self._index.get(canonical(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self._index

    def pairs(self) -> list[Pair]:
        return [e.pair for e in self.edges]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.nx.neighbors(v))

    def check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidNode(f"node {v} is not in 0..{self.n - 1}")

    def profit(self, v: int) -> Fraction:
        return self.profits[v] if self.profits is not None else Fraction(1)

    def total_cost(self) -> Fraction:
        return sum((e.cost for e in self.edges), Fraction(0))


# ---------------------------------------------------------------------------
# Tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    """A Graph that is connected and acyclic. The empty tree (n=0) is allowed."""

    graph: Graph

    def __post_init__(self) -> None:
        g = self.graph
        if g.n == 0:
            return
        if g.m != g.n - 1 or not nx.is_connected(g.nx):
            raise NotATree(f"graph with n={g.n}, m={g.m} is not a tree")

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: Iterable[Pair],
        costs: Optional[Sequence[Any]] = None,
    ) -> "Tree":
        return cls(Graph.build(n, pairs, costs))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    @property
    def nx(self) -> nx.Graph:
        return self.graph.nx

    @cached_property
    def leaves(self) -> frozenset[int]:
        if self.n < 2:
            return frozenset()
        return frozenset(v for v in range(self.n) if self.nx.degree(v) == 1)

    @cached_property
    def leaf_edges(self) -> frozenset[int]:
        """Ids of tree edges incident to a leaf."""
        return frozenset(e.id for e in self.edges if e.u in self.leaves or e.v in self.leaves)

    def parents(self, root: int) -> dict[int, Edge]:
        """child -> edge to its parent, for the tree rooted at `root`."""
        self.graph.check_node(root)
        return {
            child: self.graph.edge_between(parent, child)
            for parent, child in nx.bfs_edges(self.nx, root)
        }

    def path_nodes(self, u: int, v: int) -> list[int]:
        return nx.shortest_path(self.nx, u, v)

    def path(self, u: int, v: int) -> list[Edge]:
        nodes = self.path_nodes(u, v)
        return [self.graph.edge_between(a, b) for a, b in zip(nodes, nodes[1:])]

    def path_cost(self, u: int, v: int) -> Fraction:
        return sum((e.cost for e in self.path(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# Candidate edges
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Link:
    """A candidate edge; `id` is its position in the EdgeSet it came from."""

    id: int
    u: int
    v: int
    cost: Fraction = Fraction(1)

    @property
    def pair(self) -> Pair:
        return (self.u, self.v)


@dataclass(frozen=True)
class EdgeSet:
    links: tuple[Link, ...] = ()
    filtered: tuple[Pair, ...] = ()

    @classmethod
    def build(
        cls,
        pairs: Iterable[Pair],
        *,
        tree: Optional[Tree] = None,
        n: Optional[int] = None,
        costs: Optional[Sequence[Any]] = None,
    ) -> "EdgeSet":
        """
        Canonicalize candidate pairs. Pairs that duplicate a tree edge or an
        earlier candidate are dropped with a warning and kept in `filtered`.
        """
        pairs = list(pairs)
        if costs is not None and len(costs) != len(pairs):
            raise BadParams("costs must list one value per candidate edge")
        limit = tree.n if tree is not None else n
        links: list[Link] = []
        filtered: list[Pair] = []
        seen: set[Pair] = set()
        for i, (u, v) in enumerate(pairs):
            if u == v:
                raise BadParams(f"candidate self-loop on node {u}")
            a, b = canonical(u, v)
            if limit is not None and (a < 0 or b >= limit):
                raise InvalidNode(f"candidate {(a, b)} leaves the node range 0..{limit - 1}")
            if tree is not None and tree.graph.has_edge(a, b):
                logger.warning("Filtered candidate %s: duplicates a tree edge", (a, b))
                filtered.append((a, b))
                continue
            if (a, b) in seen:
                logger.warning("Filtered candidate %s: listed twice", (a, b))
                filtered.append((a, b))
                continue
            seen.add((a, b))
            cost = to_fraction(costs[i]) if costs is not None else Fraction(1)
            links.append(Link(len(links), a, b, cost))
        return cls(tuple(links), tuple(filtered))

    def __len__(self) -> int:
        return len(self.links)

    def __iter__(self) -> Iterator[Link]:
        return iter(self.links)

    def __getitem__(self, index: int) -> Link:
        return self.links[index]

    def pairs(self) -> list[Pair]:
        return [f.pair for f in self.links]

    def cost(self) -> Fraction:
        return sum((f.cost for f in self.links), Fraction(0))

    def subset(self, ids: Iterable[int]) -> "EdgeSet":
        """The links with the given ids; ids are kept, so F ⊆ E stays traceable."""
        wanted = set(ids)
        return EdgeSet(tuple(f for f in self.links if f.id in wanted))


def complement_links(G: Graph, T: Tree) -> EdgeSet:
    """The edges of G that are not in its spanning tree T, with G's costs."""
    rest = [e for e in G.edges if not T.graph.has_edge(e.u, e.v)]
    return EdgeSet.build([e.pair for e in rest], tree=T, costs=[e.cost for e in rest])


def union_graph(T: Tree, F: Iterable[Link]) -> Graph:
    """T ∪ F on T's node set; tree edges first, then links."""
    pairs = [e.pair for e in T.edges]
    costs: list[Fraction] = [e.cost for e in T.edges]
    for f in F:
        pairs.append(f.pair)
        costs.append(f.cost)
    return Graph.build(T.n, pairs, costs)


# ---------------------------------------------------------------------------
# Paths and forests
# ---------------------------------------------------------------------------

def tree_path(T: Tree, u: int, v: int) -> list[Edge]:
    """Edges of the u–v path in T, starting with the end edge at u."""
    T.graph.check_node(u)
    T.graph.check_node(v)
    if u == v:
        raise DegeneratePath(f"path from {u} to itself")
    return T.path(u, v)


def covered_edges(T: Tree, F: Iterable[Link]) -> list[Edge]:
    """Tree edges lying on some T_f, in tree-edge id order."""
    covered: dict[int, Edge] = {}
    for f in F:
        for e in tree_path(T, f.u, f.v):
            covered[e.id] = e
    return [covered[i] for i in sorted(covered)]


def covered_forest(T: Tree, F: Iterable[Link]) -> Graph:
    """T_F: the subgraph of T formed by the tree edges covered by F."""
    edges = covered_edges(T, F)
    return Graph.build(T.n, [e.pair for e in edges], [e.cost for e in edges])


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def _as_nx(G: Union[Graph, nx.Graph]) -> nx.Graph:
    return G.nx if isinstance(G, Graph) else G


def st_connectivity(G: Graph, s: int, t: int, mode: Union[Mode, str] = Mode.NODE) -> int:
    """
    λ_G(s,t) (edge mode) or κ_G(s,t) (node mode) by unit-capacity
    augmenting-path flow. For adjacent s,t the node mode counts the direct
    edge as one of the paths.
    """
    G.check_node(s)
    G.check_node(t)
    if s == t:
        raise InvalidPair(f"connectivity of {s} with itself")
    if Mode(mode) is Mode.EDGE:
        return local_edge_connectivity(G.nx, s, t, flow_func=edmonds_karp)
    return local_node_connectivity(G.nx, s, t, flow_func=edmonds_karp)


def is_k_connected(G: Union[Graph, nx.Graph], mode: Union[Mode, str] = Mode.NODE, k: int = 2) -> bool:
    if k != 2:
        raise Unsupported("only k = 2 is supported")
    h = _as_nx(G)
    n = h.number_of_nodes()
    if Mode(mode) is Mode.NODE:
        return n >= 3 and nx.is_biconnected(h)
    return n >= 2 and nx.is_connected(h) and not nx.has_bridges(h)


def span_subgraph(pairs: Iterable[Pair]) -> nx.Graph:
    """The graph formed by the given edges and the nodes they touch."""
    h = nx.Graph()
    h.add_edges_from(pairs)
    return h


@dataclass(frozen=True)
class BlockCutTree:
    tree: Tree
    blocks: tuple[frozenset[int], ...]
    cut_vertices: tuple[int, ...]


def block_cut_tree(G: Graph) -> BlockCutTree:
    """
    Block–cut-vertex tree: tree nodes 0..b-1 are the blocks (sorted by
    their smallest members), followed by the cut vertices in id order.
    """
    if G.n == 0 or not nx.is_connected(G.nx):
        raise NotConnected("block-cut tree needs a connected graph")
    if G.n == 1:
        return BlockCutTree(Tree.from_pairs(1, []), (frozenset({0}),), ())

    blocks = sorted((frozenset(c) for c in nx.biconnected_components(G.nx)), key=sorted)
    cuts = sorted(nx.articulation_points(G.nx))
    pairs = [
        (bi, len(blocks) + ci)
        for ci, c in enumerate(cuts)
        for bi, block in enumerate(blocks)
        if c in block
    ]
    return BlockCutTree(Tree.from_pairs(len(blocks) + len(cuts), pairs), tuple(blocks), tuple(cuts))


def dominates(G: Union[Graph, nx.Graph], S: Iterable[int]) -> bool:
    """True iff every node outside S has a neighbor in S."""
    h = _as_nx(G)
    S = set(S)
    for v in S:
        if v not in h:
            raise InvalidNode(f"node {v} is not in the graph")
    return nx.is_dominating_set(h, S)


def is_cactus(G: Graph) -> bool:
    """Connected, n ≥ 3, and every block is a simple cycle."""
    if G.n < 3 or not nx.is_connected(G.nx):
        return False
    for block_edges in nx.biconnected_component_edges(G.nx):
        block_nodes = {x for edge in block_edges for x in edge}
        if len(block_nodes) < 3 or len(block_edges) != len(block_nodes):
            return False
    return True


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _int_param(params: Mapping[str, Any], name: str, minimum: int) -> int:
    try:
        value = int(params[name])
    except (KeyError, TypeError, ValueError):
        raise BadParams(f"parameter {name!r} is required and must be an integer")
    if value < minimum:
        raise BadParams(f"parameter {name!r} must be >= {minimum}, got {value}")
    return value


def _random_tree_pairs(n: int, rng) -> list[Pair]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def _random_cactus_pairs(n: int, rng) -> list[Pair]:
    # cycles of length >= 3 glued at single nodes; never leave one node over
    first = rng.choice([size for size in range(3, n + 1) if n - size != 1])
    pairs = [(i, (i + 1) % first) for i in range(first)]
    placed = first
    while placed < n:
        remaining = n - placed
        fresh = rng.choice([k for k in range(2, remaining + 1) if remaining - k != 1])
        anchor = rng.randrange(placed)
        ring = [anchor] + list(range(placed, placed + fresh))
        pairs.extend((ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring)))
        placed += fresh
    return pairs


def generate(kind: Union[GenKind, str], params: Optional[Mapping[str, Any]] = None, seed: int = 0) -> Graph:
    """
    Deterministic instance generator: the output depends on (kind, params,
    seed) only. Optional params `max_cost` / `max_profit` draw integer edge
    costs in [1, max_cost] and node profits in [0, max_profit].
    """
    params = dict(params or {})
    try:
        kind = GenKind(kind)
    except ValueError:
        raise BadParams(f"unknown generator kind {kind!r}")
    rng = derive_rng(seed, "generate", kind.value)

    if kind is GenKind.RANDOM_TREE:
        n = _int_param(params, "n", 1)
        pairs = _random_tree_pairs(n, rng)
    elif kind is GenKind.GNP:
        n = _int_param(params, "n", 1)
        p = float(params.get("p", 0.5))
        if not 0 <= p <= 1:
            raise BadParams(f"edge probability must lie in [0, 1], got {p}")
        pairs = sorted(canonical(u, v) for u, v in nx.gnp_random_graph(n, p, seed=rng).edges)
    elif kind is GenKind.CYCLE:
        n = _int_param(params, "n", 3)
        pairs = [(i, (i + 1) % n) for i in range(n)]
    elif kind is GenKind.GRID:
        rows = _int_param(params, "rows", 1)
        cols = _int_param(params, "cols", 1)
        n = rows * cols
        grid = nx.convert_node_labels_to_integers(nx.grid_2d_graph(rows, cols), ordering="sorted")
        pairs = sorted(canonical(u, v) for u, v in grid.edges)
    elif kind is GenKind.RANDOM_CACTUS:
        n = _int_param(params, "n", 3)
        pairs = _random_cactus_pairs(n, rng)
    else:
        n = _int_param(params, "n", 1)
        pairs = list(combinations(range(n), 2))

    costs = None
    if params.get("max_cost") is not None:
        top = _int_param(params, "max_cost", 1)
        costs = [rng.randint(1, top) for _ in pairs]
    profits = None
    if params.get("max_profit") is not None:
        top = _int_param(params, "max_profit", 0)
        profits = [rng.randint(0, top) for _ in range(n)]
    return Graph.build(n, pairs, costs, profits)


def sample_candidates(
    T: Tree,
    count: int,
    seed: int,
    max_cost: Optional[int] = None,
) -> EdgeSet:
    """`count` distinct non-tree candidate pairs of T, drawn deterministically."""
    if count < 0:
        raise BadParams("candidate count must be nonnegative")
    rng = derive_rng(seed, "candidates", T.n)
    pool = [pair for pair in combinations(range(T.n), 2) if not T.graph.has_edge(*pair)]
    drawn = sorted(rng.sample(pool, min(count, len(pool))))
    costs = [rng.randint(1, max_cost) for _ in drawn] if max_cost else None
    return EdgeSet.build(drawn, tree=T, costs=costs)
