"""
Incidence graphs of tree paths.

For a tree T and candidate links F, every link f stands for the tree path
T_f between its ends:
  (F,V)-incidence     link f -- tree node v    for v on T_f
  (F,E_T)-incidence   link f -- tree edge e    for e on T_f
The short-cut variants add a clique on the neighbourhood of every terminal;
the reduced variants then drop the non-leaf tree nodes / non-leaf tree edges
and keep the leaf ones as terminals.

Reachability in these graphs decides 2-edge- and 2-node-connectivity of T ∪ F.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import ClassVar, Iterable, Union

import networkx as nx

from errors import EmptyTree, InvalidPair, Unsupported, WrongKind
from graph_core import Edge, EdgeSet, Link, Mode, Tree, st_connectivity, tree_path, union_graph
from utils import sorted_nodes

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Tagged nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    index: int
    rank: ClassVar[int] = 0

    @property
    def label(self) -> str:
        return f"v{self.index}"


@dataclass(frozen=True)
class TreeEdge:
    index: int
    rank: ClassVar[int] = 1

    @property
    def label(self) -> str:
        return f"e{self.index}"


@dataclass(frozen=True)
class LinkNode:
    index: int
    rank: ClassVar[int] = 2

    @property
    def label(self) -> str:
        return f"f{self.index}"


PathNode = Union[TreeNode, TreeEdge]


class IncidenceKind(str, Enum):
    FV = "FV"
    FET = "FET"
    SHORTCUT_FV = "shortcut_FV"
    SHORTCUT_FET = "shortcut_FET"
    REDUCED_FV = "reduced_FV"
    REDUCED_FET = "reduced_FET"

    @property
    def on_nodes(self) -> bool:
        return self in (IncidenceKind.FV, IncidenceKind.SHORTCUT_FV, IncidenceKind.REDUCED_FV)


_SHORTCUT = {IncidenceKind.FV: IncidenceKind.SHORTCUT_FV, IncidenceKind.FET: IncidenceKind.SHORTCUT_FET}
_REDUCED = {
    IncidenceKind.SHORTCUT_FV: IncidenceKind.REDUCED_FV,
    IncidenceKind.SHORTCUT_FET: IncidenceKind.REDUCED_FET,
}


@dataclass(frozen=True)
class IncidenceGraph:
    kind: IncidenceKind
    graph: nx.Graph
    terminals: frozenset
    tree: Tree
    links: EdgeSet

    @property
    def link_nodes(self) -> list[LinkNode]:
        return sorted_nodes(x for x in self.graph.nodes if isinstance(x, LinkNode))

    def link_of(self, node: LinkNode) -> Link:
        return next(f for f in self.links if f.id == node.index)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _incidence(T: Tree, F: EdgeSet, on_nodes: bool) -> IncidenceGraph:
    g = nx.Graph()
    if on_nodes:
        path_nodes: list[PathNode] = [TreeNode(v) for v in range(T.n)]
    else:
        path_nodes = [TreeEdge(e.id) for e in T.edges]
    g.add_nodes_from(path_nodes)
    for f in F:
        g.add_node(LinkNode(f.id))
    for f in F:
        if on_nodes:
            members = [TreeNode(v) for v in sorted(T.path_nodes(f.u, f.v))]
        else:
            members = [TreeEdge(e.id) for e in sorted(tree_path(T, f.u, f.v), key=lambda e: e.id)]
        g.add_edges_from((LinkNode(f.id), x) for x in members)
    kind = IncidenceKind.FV if on_nodes else IncidenceKind.FET
    return IncidenceGraph(kind, nx.freeze(g), frozenset(path_nodes), T, F)


def short_cut_terminals(H: IncidenceGraph) -> IncidenceGraph:
    """Add a clique on the neighbourhood of every terminal; terminals stay."""
    if H.kind not in _SHORTCUT:
        raise WrongKind(f"short-cutting applies to FV/FET graphs, not {H.kind.value}")
    g = nx.Graph(H.graph)
    for terminal in sorted_nodes(H.terminals):
        neighbours = sorted_nodes(H.graph.neighbors(terminal))
        g.add_edges_from(combinations(neighbours, 2))
    return IncidenceGraph(_SHORTCUT[H.kind], nx.freeze(g), H.terminals, H.tree, H.links)


def _reduce(H: IncidenceGraph) -> IncidenceGraph:
    T = H.tree
    if H.kind is IncidenceKind.SHORTCUT_FV:
        keep = {TreeNode(v) for v in T.leaves}
    else:
        keep = {TreeEdge(i) for i in T.leaf_edges}
    g = nx.Graph(H.graph)
    g.remove_nodes_from([x for x in H.terminals if x not in keep])
    return IncidenceGraph(_REDUCED[H.kind], nx.freeze(g), frozenset(keep), T, H.links)


def build_incidence(T: Tree, F: EdgeSet, kind: Union[IncidenceKind, str]) -> IncidenceGraph:
    kind = IncidenceKind(kind)
    if T.n == 0:
        raise EmptyTree("incidence graphs need a nonempty tree")
    H = _incidence(T, F, kind.on_nodes)
    if kind in (IncidenceKind.FV, IncidenceKind.FET):
        return H
    H = short_cut_terminals(H)
    if kind in (IncidenceKind.SHORTCUT_FV, IncidenceKind.SHORTCUT_FET):
        return H
    return _reduce(H)


# ---------------------------------------------------------------------------
# Reachability criteria
# ---------------------------------------------------------------------------

def end_edges(T: Tree, s: int, t: int) -> tuple[Edge, Edge]:
    """First and last edge of the s–t path in T."""
    if s == t:
        raise InvalidPair(f"end edges of {s} with itself")
    path = tree_path(T, s, t)
    return path[0], path[-1]


def h_reachable(T: Tree, F: EdgeSet, s: int, t: int) -> bool:
    """Does the (F,E_T)-incidence graph join e_s and e_t? True when e_s = e_t."""
    e_s, e_t = end_edges(T, s, t)
    if e_s.id == e_t.id:
        return True
    H = build_incidence(T, F, IncidenceKind.FET)
    return nx.has_path(H.graph, TreeEdge(e_s.id), TreeEdge(e_t.id))


def fv_reachable(T: Tree, F: EdgeSet, s: int, t: int) -> bool:
    """Does the (F,V)-incidence graph have an s–t path?"""
    if s == t:
        raise InvalidPair(f"reachability of {s} from itself")
    T.graph.check_node(s)
    T.graph.check_node(t)
    H = build_incidence(T, F, IncidenceKind.FV)
    return nx.has_path(H.graph, TreeNode(s), TreeNode(t))


def terminals_connected(H: IncidenceGraph) -> bool:
    if H.kind not in (IncidenceKind.REDUCED_FV, IncidenceKind.REDUCED_FET):
        raise WrongKind(f"terminal connectivity is defined on reduced graphs, not {H.kind.value}")
    terminals = sorted_nodes(H.terminals)
    if len(terminals) <= 1:
        return True
    component = nx.node_connected_component(H.graph, terminals[0])
    return all(r in component for r in terminals)


def two_connected_by_incidence(T: Tree, F: EdgeSet) -> bool:
    if T.n < 3:
        raise Unsupported("the global criterion needs a tree with at least 3 nodes")
    return terminals_connected(build_incidence(T, F, IncidenceKind.REDUCED_FET))


def two_edge_connected_by_incidence(T: Tree, F: EdgeSet) -> bool:
    if T.n < 3:
        raise Unsupported("the global criterion needs a tree with at least 3 nodes")
    return terminals_connected(build_incidence(T, F, IncidenceKind.REDUCED_FV))


@dataclass(frozen=True)
class EquivalenceCheck:
    agree: bool
    lhs: bool
    rhs: bool


def lemma_equiv_check(
    T: Tree,
    F: EdgeSet,
    s: int,
    t: int,
    mode: Union[Mode, str] = Mode.NODE,
) -> EquivalenceCheck:
    """
    Compare flow connectivity of T ∪ F on (s, t) with incidence reachability.

    Edge mode: λ ≥ 2  vs  (F,V)-incidence s–t path.
    Node mode: κ ≥ 2  vs  h_reachable; s,t must not be adjacent in T.
    """
    if s == t:
        raise InvalidPair(f"equivalence check of {s} with itself")
    mode = Mode(mode)
    if mode is Mode.NODE and T.graph.has_edge(s, t):
        raise InvalidPair(f"tree-adjacent pair {(s, t)} is outside the node-mode comparison")
    lhs = st_connectivity(union_graph(T, F), s, t, mode) >= 2
    rhs = fv_reachable(T, F, s, t) if mode is Mode.EDGE else h_reachable(T, F, s, t)
    return EquivalenceCheck(lhs == rhs, lhs, rhs)


def leaf_terminal_degrees(H: IncidenceGraph) -> Iterable[int]:
    """Number of terminal neighbours of every link node."""
    for x in H.link_nodes:
        yield sum(1 for y in H.graph.neighbors(x) if y in H.terminals)
