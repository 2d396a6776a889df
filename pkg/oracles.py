"""
Brute-force optima for desk-scale instances.

Each function enumerates candidate solutions in an order that lets it stop
at the first optimum, and tests feasibility with the direct networkx
checks only, never through an incidence-graph reduction.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Optional

import networkx as nx

from errors import CapExceeded, Infeasible
from graph_core import EdgeSet, Graph, Link, Mode, Pair, Tree, dominates, is_k_connected, span_subgraph, union_graph

logger = logging.getLogger(__name__)


def _check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(f"{what} {size} exceeds the oracle cap {cap}")


# ---------------------------------------------------------------------------
# Tree augmentation
# ---------------------------------------------------------------------------

def min_augmentation(
    T: Tree,
    E: EdgeSet,
    mode: Mode = Mode.NODE,
    *,
    unit: bool = True,
    max_nodes: int = 12,
    max_links: int = 22,
) -> tuple[Link, ...]:
    """
    Cheapest F ⊆ E with T ∪ F 2-connected (node mode) or 2-edge-connected
    (edge mode). unit=True minimizes |F|, otherwise c(F).
    """
    _check_cap("tree size", T.n, max_nodes)
    _check_cap("candidate count", len(E), max_links)
    links = list(E)

    def cost(subset) -> Fraction:
        return Fraction(len(subset)) if unit else sum((f.cost for f in subset), Fraction(0))

    if not is_k_connected(union_graph(T, links), mode):
        raise Infeasible("the candidate set does not augment the tree")

    cheapest = sorted(cost([f]) for f in links)
    best: Optional[tuple[Link, ...]] = None
    best_cost: Optional[Fraction] = None
    for size in range(len(links) + 1):
        if best_cost is not None and sum(cheapest[:size], Fraction(0)) >= best_cost:
            break
        for subset in combinations(links, size):
            c = cost(subset)
            if best_cost is not None and c >= best_cost:
                continue
            if is_k_connected(union_graph(T, subset), mode):
                best, best_cost = subset, c
        if unit and best is not None:
            break
    return best


# ---------------------------------------------------------------------------
# 2-connected dominating subgraph
# ---------------------------------------------------------------------------

def _fewest_edges_2connected(h: nx.Graph, limit: Optional[int]) -> Optional[tuple[Pair, ...]]:
    """Smallest spanning 2-connected edge subset of h, if one with < limit edges exists."""
    n = h.number_of_nodes()
    edges = sorted(tuple(sorted(e)) for e in h.edges)
    top = len(edges) if limit is None else min(len(edges), limit - 1)
    for size in range(n, top + 1):
        for subset in combinations(edges, size):
            degree = dict.fromkeys(h.nodes, 0)
            for u, v in subset:
                degree[u] += 1
                degree[v] += 1
            if min(degree.values()) < 2:
                continue
            candidate = nx.Graph()
            candidate.add_nodes_from(h.nodes)
            candidate.add_edges_from(subset)
            if is_k_connected(candidate, Mode.NODE):
                return subset
    return None


def min_2cds(G: Graph, max_nodes: int = 8) -> tuple[tuple[int, ...], tuple[Pair, ...]]:
    """(nodes, edges) of a 2-connected dominating subgraph with the fewest edges."""
    _check_cap("graph size", G.n, max_nodes)
    best: Optional[tuple[tuple[int, ...], tuple[Pair, ...]]] = None
    for size in range(3, G.n + 1):
        # a 2-connected graph on `size` nodes has at least `size` edges
        if best is not None and size >= len(best[1]):
            break
        for nodes in combinations(range(G.n), size):
            if not dominates(G, nodes):
                continue
            h = G.nx.subgraph(nodes)
            if not is_k_connected(h, Mode.NODE):
                continue
            edges = _fewest_edges_2connected(h, len(best[1]) if best else None)
            if edges is not None:
                best = (nodes, edges)
    if best is None:
        raise Infeasible("no 2-connected dominating subgraph exists")
    return best


# ---------------------------------------------------------------------------
# Quota family
# ---------------------------------------------------------------------------

def best_subgraph(
    G: Graph,
    mode: str,
    target: Fraction,
    *,
    root: Optional[int] = None,
    max_edges: int = 14,
) -> tuple[Fraction, tuple[Pair, ...]]:
    """
    Exhaustive optimum over 2-connected edge subsets of G.

    k_subgraph / quota: least cost with ≥ target nodes / profit; returns (cost, edges).
    budget: most profit with cost ≤ target; returns (profit, edges).
    A given root must be a node of every nonempty candidate.
    Targets ≤ 0 (and budgets nothing fits) give the empty subgraph.
    """
    _check_cap("edge count", G.m, max_edges)
    target = Fraction(target)
    budget = mode == "budget"
    if not budget and target <= 0:
        return Fraction(0), ()

    best: Optional[tuple[Fraction, Fraction, tuple[Pair, ...]]] = None
    for size in range(3, G.m + 1):
        for subset in combinations(G.edges, size):
            h = span_subgraph(e.pair for e in subset)
            if root is not None and root not in h:
                continue
            if not is_k_connected(h, Mode.NODE):
                continue
            cost = sum((e.cost for e in subset), Fraction(0))
            profit = sum((G.profit(v) for v in h.nodes), Fraction(0))
            pairs = tuple(e.pair for e in subset)
            if budget:
                if cost > target:
                    continue
                key = (-profit, cost)
            else:
                reached = Fraction(h.number_of_nodes()) if mode == "k_subgraph" else profit
                if reached < target:
                    continue
                key = (cost, Fraction(0))
            if best is None or key < best[:2]:
                best = (*key, pairs)

    if budget:
        if best is None:
            return Fraction(0), ()
        return -best[0], best[2]
    if best is None:
        raise Infeasible(f"no 2-connected subgraph reaches the {mode} target {target}")
    return best[0], best[2]
