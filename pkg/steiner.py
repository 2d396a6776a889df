"""
Steiner subroutines consumed by the reduction pipelines.

  nwst_greedy          — spider greedy for node-weighted Steiner tree
  nwst_exact_small     — exhaustive optimum over nonterminal subsets (capped)
  group_steiner_greedy — attach the nearest uncovered group until all are hit
  quota_subtree        — quota / terminal-count / budget subtree
  check_bga_properties — the two structural properties of reduced incidence
                         instances

Node weights live on nonterminals; terminals weigh 0. All graphs are
networkx graphs over hashable (possibly tagged) nodes; every choice breaks
ties by node_key so results depend on the instance only.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Optional, Union

import networkx as nx

import config
from errors import BadParams, CapExceeded, Infeasible, InvalidNode
from utils import node_key, sorted_nodes

logger = logging.getLogger(__name__)

Node = Hashable


# ---------------------------------------------------------------------------
# Instances and solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NwstInstance:
    graph: nx.Graph
    terminals: frozenset
    weights: Mapping[Node, Fraction]

    def __post_init__(self) -> None:
        missing = [r for r in self.terminals if r not in self.graph]
        if missing:
            raise BadParams(f"terminals {sorted_nodes(missing)} are not in the graph")
        expected = {v for v in self.graph.nodes if v not in self.terminals}
        if set(self.weights) != expected:
            raise BadParams("weights must be given for exactly the nonterminals")
        if any(w < 0 for w in self.weights.values()):
            raise BadParams("node weights must be nonnegative")

    def weight(self, v: Node) -> Fraction:
        return Fraction(0) if v in self.terminals else Fraction(self.weights[v])

    def total(self, nodes: Iterable[Node]) -> Fraction:
        return sum((self.weight(v) for v in nodes), Fraction(0))


@dataclass(frozen=True)
class SteinerSolution:
    nodes: frozenset
    edges: tuple = ()
    weight: Fraction = Fraction(0)
    profit: Fraction = Fraction(0)

    @property
    def empty(self) -> bool:
        return not self.nodes

    def nonterminals(self, terminals: Iterable[Node]) -> list:
        terminals = set(terminals)
        return sorted_nodes(v for v in self.nodes if v not in terminals)


EMPTY = SteinerSolution(frozenset())


@dataclass(frozen=True, eq=False)
class GroupSteinerInstance:
    graph: nx.Graph
    groups: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        for i, group in enumerate(self.groups):
            if not group:
                raise BadParams(f"group {i} is empty")


class QuotaMode(str, Enum):
    QUOTA = "quota"
    COUNT = "count"
    BUDGET = "budget"


@dataclass(frozen=True, eq=False)
class QuotaSubtreeInstance:
    graph: nx.Graph
    terminals: frozenset
    weights: Mapping[Node, Fraction]
    target: Fraction
    mode: QuotaMode = QuotaMode.QUOTA
    profits: Mapping[Node, Fraction] = field(default_factory=dict)
    require_nonterminal: bool = False
    # a nonempty subtree must reach one of these terminals
    anchors: frozenset = frozenset()

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "mode", QuotaMode(self.mode))
        except ValueError:
            raise BadParams(f"unknown quota mode {self.mode!r}")
        object.__setattr__(self, "target", Fraction(self.target))
        if self.target < 0:
            raise BadParams(f"{self.mode.value} target must be nonnegative, got {self.target}")
        expected = {v for v in self.graph.nodes if v not in self.terminals}
        if set(self.weights) != expected:
            raise BadParams("weights must be given for exactly the nonterminals")
        if any(p < 0 for p in self.profits.values()):
            raise BadParams("terminal profits must be nonnegative")
        object.__setattr__(self, "anchors", frozenset(self.anchors))
        if not self.anchors <= self.terminals:
            raise BadParams("anchors must be terminals")

    def weight(self, v: Node) -> Fraction:
        return Fraction(0) if v in self.terminals else Fraction(self.weights[v])

    def profit(self, nodes: Iterable[Node]) -> Fraction:
        reached = [v for v in nodes if v in self.terminals]
        if self.mode is QuotaMode.COUNT:
            return Fraction(len(reached))
        return sum((Fraction(self.profits.get(v, 0)) for v in reached), Fraction(0))

    @property
    def nonterminals(self) -> list:
        return sorted_nodes(v for v in self.graph.nodes if v not in self.terminals)


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _pair(u: Node, v: Node) -> tuple:
    return tuple(sorted((u, v), key=node_key))


def _induced(graph: nx.Graph, nodes: Iterable[Node]) -> nx.Graph:
    """Induced subgraph with deterministic node and edge insertion order."""
    keep = set(nodes)
    h = nx.Graph()
    h.add_nodes_from(sorted_nodes(keep))
    edges = [_pair(u, v) for u, v in graph.subgraph(keep).edges]
    h.add_edges_from(sorted(edges, key=lambda e: (node_key(e[0]), node_key(e[1]))))
    return h


def _spanning_edges(graph: nx.Graph, nodes: Iterable[Node]) -> tuple:
    tree = nx.minimum_spanning_tree(_induced(graph, nodes))
    return tuple(sorted((_pair(u, v) for u, v in tree.edges), key=lambda e: (node_key(e[0]), node_key(e[1]))))


def _prune_leaves(graph: nx.Graph, nodes: set, terminals: frozenset) -> set:
    """Drop nonterminal leaves of a spanning tree of graph[nodes] until none remain."""
    tree = nx.minimum_spanning_tree(_induced(graph, nodes))
    while True:
        leaves = [v for v in sorted_nodes(tree.nodes) if v not in terminals and tree.degree(v) <= 1]
        if not leaves or tree.number_of_nodes() == 1:
            return set(tree.nodes)
        tree.remove_nodes_from(leaves)


def _terminal_component(graph: nx.Graph, terminals: Iterable[Node]) -> set:
    ordered = sorted_nodes(terminals)
    component = nx.node_connected_component(graph, ordered[0])
    if any(r not in component for r in ordered):
        raise Infeasible("terminals lie in different components")
    return component


def _solution(inst: NwstInstance, nodes: set) -> SteinerSolution:
    return SteinerSolution(frozenset(nodes), _spanning_edges(inst.graph, nodes), inst.total(nodes))


# ---------------------------------------------------------------------------
# Node-weighted Steiner tree
# ---------------------------------------------------------------------------

def nwst_greedy(inst: NwstInstance) -> SteinerSolution:
    """
    Spider greedy: repeatedly buy the spider (a center plus shortest
    node-weighted paths to k ≥ 2 current components) of least weight per
    merged component, until the terminals form one component.
    """
    g = inst.graph
    terminals = inst.terminals
    if not terminals:
        return EMPTY
    reach = _terminal_component(g, terminals)
    chosen = set(terminals)

    while True:
        components = sorted(
            (frozenset(c) for c in nx.connected_components(g.subgraph(chosen))),
            key=lambda c: min(node_key(x) for x in c),
        )
        if len(components) <= 1:
            break

        def step(u, v, data, chosen=chosen):
            return 0 if v in chosen else inst.weight(v)

        best = None
        for center in sorted_nodes(reach):
            dist, paths = nx.single_source_dijkstra(g, center, weight=step)
            reached = []
            for index, comp in enumerate(components):
                ends = [x for x in comp if x in dist]
                if not ends:
                    continue
                end = min(ends, key=lambda x: (dist[x], node_key(x)))
                reached.append((Fraction(dist[end]), index, end))
            reached.sort()
            center_cost = Fraction(0) if center in chosen else inst.weight(center)
            running = center_cost
            for k, (d, _, _) in enumerate(reached, start=1):
                running += d
                if k < 2:
                    continue
                ratio = running / k
                if best is None or ratio < best[0]:
                    best = (ratio, center, [paths[end] for _, _, end in reached[:k]])

        if best is None:
            raise Infeasible("no spider joins two components")
        _, center, spider = best
        chosen.add(center)
        for path in spider:
            chosen.update(path)

    nodes = _prune_leaves(g, chosen, terminals)
    solution = _solution(inst, nodes)
    logger.debug("nwst greedy: |R|=%d, weight=%s", len(terminals), solution.weight)
    return solution


def nwst_exact_small(inst: NwstInstance, cap: Optional[int] = None) -> SteinerSolution:
    """Minimum-weight solution by enumerating nonterminal subsets of the terminals' component."""
    cap = config.EXACT_CAP if cap is None else cap
    g = inst.graph
    terminals = inst.terminals
    if not terminals:
        return EMPTY
    reach = _terminal_component(g, terminals)
    if len(terminals) == 1:
        return _solution(inst, set(terminals))

    relevant = sorted_nodes(v for v in reach if v not in terminals)
    if len(relevant) > cap:
        raise CapExceeded(f"{len(relevant)} nonterminals exceed the exact cap {cap}")

    cheapest = sorted(inst.weight(v) for v in relevant)
    best_nodes: Optional[set] = None
    best_weight: Optional[Fraction] = None
    for size in range(len(relevant) + 1):
        bound = sum(cheapest[:size], Fraction(0))
        if best_weight is not None and bound >= best_weight:
            break
        for subset in combinations(relevant, size):
            weight = inst.total(subset)
            if best_weight is not None and weight >= best_weight:
                continue
            nodes = set(terminals).union(subset)
            if nx.is_connected(g.subgraph(nodes)):
                best_nodes, best_weight = nodes, weight

    return _solution(inst, _prune_leaves(g, best_nodes, terminals))


# ---------------------------------------------------------------------------
# Group Steiner tree
# ---------------------------------------------------------------------------

def group_steiner_greedy(inst: GroupSteinerInstance, root: Node) -> frozenset:
    """Connected node set containing root and a member of every group (unit node weights)."""
    g = inst.graph
    if root not in g:
        raise InvalidNode(f"root {root!r} is not in the graph")
    tree = {root}
    pending = list(range(len(inst.groups)))

    while True:
        pending = [i for i in pending if not inst.groups[i] & tree]
        if not pending:
            return frozenset(tree)

        def step(u, v, data, tree=tree):
            return 0 if v in tree else 1

        dist, paths = nx.multi_source_dijkstra(g, sorted_nodes(tree), weight=step)
        best = None
        for i in pending:
            members = [x for x in inst.groups[i] if x in dist]
            if not members:
                raise Infeasible(f"group {i} is unreachable from root {root!r}")
            member = min(members, key=lambda x: (dist[x], node_key(x)))
            if best is None or dist[member] < best[0]:
                best = (dist[member], i, member)
        _, i, member = best
        tree.update(paths[member])
        logger.debug("group %d attached via %r (%d new nodes)", i, member, best[0])


# ---------------------------------------------------------------------------
# Quota, count and budget subtrees
# ---------------------------------------------------------------------------

def _span(inst: QuotaSubtreeInstance, chosen: frozenset) -> Optional[frozenset]:
    """The component of graph[chosen ∪ R] holding every chosen nonterminal, if there is one."""
    h = inst.graph.subgraph(set(chosen) | inst.terminals)
    holding = [c for c in nx.connected_components(h) if c & chosen]
    if len(holding) != 1:
        return None
    return frozenset(holding[0])


def _candidate(inst: QuotaSubtreeInstance, chosen: frozenset) -> Optional[tuple]:
    """(profit, weight, nodes) of a nonterminal set; None when disconnected."""
    if chosen:
        nodes = _span(inst, chosen)
        if nodes is None:
            return None
        if inst.anchors and not nodes & inst.anchors:
            return None
    else:
        nodes = frozenset()
    weight = sum((inst.weight(v) for v in chosen), Fraction(0))
    return inst.profit(nodes), weight, nodes


def _terminal_only(inst: QuotaSubtreeInstance) -> Optional[tuple]:
    """The most profitable component of graph[R] (weight 0)."""
    if inst.require_nonterminal or not inst.terminals:
        return None
    components = sorted(
        (frozenset(c) for c in nx.connected_components(inst.graph.subgraph(inst.terminals))),
        key=lambda c: min(node_key(x) for x in c),
    )
    if inst.anchors:
        components = [c for c in components if c & inst.anchors]
        if not components:
            return None
    best = max(components, key=lambda c: inst.profit(c))
    return inst.profit(best), Fraction(0), best


def _meets(inst: QuotaSubtreeInstance, profit: Fraction) -> bool:
    return profit >= inst.target


def _grow(inst: QuotaSubtreeInstance, start: Node) -> Optional[frozenset]:
    """Ball-growing from start: add the cheapest-per-profit path until the target or budget stops us."""
    chosen = {start}
    budget = inst.mode is QuotaMode.BUDGET
    while True:
        profit, weight, nodes = _candidate(inst, frozenset(chosen))
        if not budget and _meets(inst, profit):
            return frozenset(chosen)

        def step(u, v, data, chosen=chosen):
            return 0 if v in chosen or v in inst.terminals else inst.weight(v)

        dist, paths = nx.multi_source_dijkstra(inst.graph, sorted_nodes(nodes), weight=step)
        best = None
        for v in sorted_nodes(dist):
            if v in inst.terminals or v in chosen:
                continue
            cost = Fraction(dist[v])
            if budget and weight + cost > inst.target:
                continue
            grown = frozenset(chosen).union(x for x in paths[v] if x not in inst.terminals)
            result = _candidate(inst, grown)
            if result is None:
                continue
            gain = result[0] - profit
            if gain <= 0:
                continue
            # zero-cost gains come first, then the best profit per unit weight
            key = (0, -gain, node_key(v)) if cost == 0 else (1, -(gain / cost), node_key(v))
            if best is None or key < best[0]:
                best = (key, grown)
        if best is None:
            return frozenset(chosen) if budget else None
        chosen = set(best[1])


def _trim(inst: QuotaSubtreeInstance, chosen: frozenset) -> frozenset:
    """Drop nonterminals (heaviest first) while the target still holds."""
    for v in sorted(chosen, key=lambda x: (-inst.weight(x), node_key(x))):
        smaller = chosen - {v}
        if not smaller and inst.require_nonterminal:
            continue
        result = _candidate(inst, smaller)
        if result is not None and _meets(inst, result[0]):
            chosen = smaller
    return chosen


def _better(inst: QuotaSubtreeInstance, a: tuple, b: Optional[tuple]) -> bool:
    if b is None:
        return True
    if inst.mode is QuotaMode.BUDGET:
        return (-a[0], a[1]) < (-b[0], b[1])
    return a[1] < b[1]


def _feasible(inst: QuotaSubtreeInstance, result: tuple) -> bool:
    profit, weight, _ = result
    if inst.mode is QuotaMode.BUDGET:
        return weight <= inst.target
    return _meets(inst, profit)


def _quota_greedy(inst: QuotaSubtreeInstance) -> Optional[tuple]:
    best = None
    terminal_only = _terminal_only(inst)
    if terminal_only is not None and _feasible(inst, terminal_only):
        best = (*terminal_only, frozenset())
    for start in inst.nonterminals:
        if inst.mode is QuotaMode.BUDGET and inst.weight(start) > inst.target:
            continue
        if _candidate(inst, frozenset({start})) is None:
            continue
        chosen = _grow(inst, start)
        if chosen is None:
            continue
        if inst.mode is not QuotaMode.BUDGET:
            chosen = _trim(inst, chosen)
        result = _candidate(inst, chosen)
        if result is not None and _feasible(inst, result) and _better(inst, result, best):
            best = (*result, chosen)
    return best


def _quota_exact(inst: QuotaSubtreeInstance) -> Optional[tuple]:
    best = None
    terminal_only = _terminal_only(inst)
    if terminal_only is not None and _feasible(inst, terminal_only):
        best = (*terminal_only, frozenset())
    nonterminals = inst.nonterminals
    for size in range(1, len(nonterminals) + 1):
        for subset in combinations(nonterminals, size):
            result = _candidate(inst, frozenset(subset))
            if result is None or not _feasible(inst, result):
                continue
            if _better(inst, result, best):
                best = (*result, frozenset(subset))
    return best


def quota_subtree(inst: QuotaSubtreeInstance, exact_cap: Optional[int] = None) -> SteinerSolution:
    """
    quota / count: least-weight subtree whose terminals reach the target.
    budget: most profitable subtree of weight at most the target.

    A subtree is a nonterminal set S together with every terminal reachable
    from S through terminals; S must lie in one component of graph[S ∪ R].
    With anchors set, a nonempty subtree must also reach one of them.
    Exact enumeration replaces the greedy when the nonterminal count is
    within exact_cap.
    """
    if inst.mode is not QuotaMode.BUDGET and inst.target == 0:
        return EMPTY

    exact = exact_cap is not None and len(inst.nonterminals) <= exact_cap
    best = _quota_exact(inst) if exact else _quota_greedy(inst)

    if best is None:
        if inst.mode is QuotaMode.BUDGET:
            return EMPTY
        raise Infeasible(f"no subtree reaches the {inst.mode.value} target {inst.target}")

    profit, weight, nodes, _ = best
    logger.debug(
        "%s subtree (%s): profit=%s weight=%s",
        inst.mode.value, "exact" if exact else "greedy", profit, weight,
    )
    edges = _spanning_edges(inst.graph, nodes) if nodes else ()
    return SteinerSolution(frozenset(nodes), edges, weight, profit)


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------

def check_bga_properties(inst: Union[NwstInstance, nx.Graph], terminals: Iterable[Node] = ()) -> bool:
    """Terminal neighbourhoods are cliques and no nonterminal sees more than two terminals."""
    if isinstance(inst, NwstInstance):
        g, terminals = inst.graph, inst.terminals
    else:
        g, terminals = inst, frozenset(terminals)
    for r in terminals:
        if any(not g.has_edge(a, b) for a, b in combinations(g.neighbors(r), 2)):
            return False
    for v in g.nodes:
        if v not in terminals and sum(1 for x in g.neighbors(v) if x in terminals) > 2:
            return False
    return True
