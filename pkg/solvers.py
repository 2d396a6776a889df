"""
End-to-end pipelines: spanning tree → tree augmentation → Steiner subroutine.

  solve_block_tree_aug  — min-size 2-connectivity augmentation of a tree
  solve_tree_aug_ec     — min-cost 2-edge-connectivity augmentation of a tree
  solve_2cds            — 2-connected dominating subgraph of a graph
  solve_quota_family    — k-subgraph / quota / budgeted 2-connected subgraph
  exact_oracle          — brute-force optimum as a SolutionReport
  verify_solution       — direct re-check of a report against its instance

Every pipeline lifts the chosen links F to T_F ∪ F and checks the result
with the direct networkx verifier; the reduction is never trusted on its own.
"""

import logging
import time
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import Any, Callable, Iterable, Optional, Union

import networkx as nx

import config
from crossing import covers, exact_min_cover
from embedding import SamplerConfig, embedding_samples, measure_stretch
from errors import BadParams, CapExceeded, EmptySolution, Infeasible, InvariantViolation, NotConnected
from graph_core import (
    EdgeSet,
    Graph,
    Link,
    Mode,
    Pair,
    Tree,
    canonical,
    complement_links,
    covered_edges,
    dominates,
    is_k_connected,
    span_subgraph,
    union_graph,
)
from incidence import IncidenceGraph, IncidenceKind, LinkNode, TreeEdge, TreeNode, build_incidence
from oracles import best_subgraph, min_2cds, min_augmentation
from reports import Problem, SolutionReport
from steiner import (
    GroupSteinerInstance,
    NwstInstance,
    QuotaMode,
    QuotaSubtreeInstance,
    SteinerSolution,
    check_bga_properties,
    group_steiner_greedy,
    nwst_exact_small,
    nwst_greedy,
    quota_subtree,
)
from utils import derive_rng, sorted_nodes, to_fraction

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AugmentationInstance:
    """A tree T with candidate links E; tree edges cost nothing (ĉ = 0 on E_T)."""

    tree: Tree
    links: EdgeSet


class FamilyMode(str, Enum):
    K_SUBGRAPH = "k_subgraph"
    QUOTA = "quota"
    BUDGET = "budget"

    @property
    def problem(self) -> Problem:
        return {
            FamilyMode.K_SUBGRAPH: Problem.KSUB,
            FamilyMode.QUOTA: Problem.QUOTA,
            FamilyMode.BUDGET: Problem.BUDGET,
        }[self]


@dataclass(frozen=True)
class QuotaProblem:
    graph: Graph
    mode: FamilyMode
    target: Fraction
    root: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", FamilyMode(self.mode))
        object.__setattr__(self, "target", to_fraction(self.target))


@dataclass(frozen=True)
class OracleCaps:
    aug_nodes: int = 12
    aug_links: int = 22
    cds_nodes: int = 8
    quota_edges: int = 14
    cover_links: int = 22


# ---------------------------------------------------------------------------
# Lifting and accounting
# ---------------------------------------------------------------------------

def lift_solution(T: Tree, F: Iterable[Link]) -> Graph:
    """T_F ∪ F on T's node set (nodes off T_F stay isolated)."""
    F = list(F)
    if not F:
        raise EmptySolution("cannot lift an empty link set")
    tree_part = covered_edges(T, F)
    pairs = [e.pair for e in tree_part] + [f.pair for f in F]
    costs = [e.cost for e in tree_part] + [f.cost for f in F]
    return Graph.build(T.n, pairs, costs)


def _tree_part_is_tree(T: Tree, F: Iterable[Link]) -> bool:
    return nx.is_connected(span_subgraph(e.pair for e in covered_edges(T, F)))


def _lift_accounting(lifted: Graph, hat: Fraction, sigma: Optional[Fraction]) -> dict[str, Any]:
    if sigma is None:
        return {"lift_bound": None, "lift_bound_holds": None}
    bound = (sigma + 1) * hat
    return {"lift_bound": bound, "lift_bound_holds": lifted.total_cost() <= bound}


def _elapsed(started: float) -> Optional[float]:
    if not config.RECORD_TIMINGS:
        return None
    return round((time.perf_counter() - started) * 1000, 3)


def _shape(lifted: Graph) -> tuple[tuple[int, ...], tuple[Pair, ...]]:
    pairs = tuple(sorted(lifted.pairs()))
    nodes = tuple(sorted({x for pair in pairs for x in pair}))
    return nodes, pairs


def _chosen_links(H: IncidenceGraph, nodes: Iterable) -> EdgeSet:
    return H.links.subset(x.index for x in nodes if isinstance(x, LinkNode))


def _link_weights(H: IncidenceGraph, weight: Callable[[Link], Any]) -> dict:
    by_id = {f.id: f for f in H.links}
    return {x: Fraction(weight(by_id[x.index])) for x in H.link_nodes}


def _solve_nwst(inst: NwstInstance, exact_cap: Optional[int]) -> tuple[SteinerSolution, str]:
    if exact_cap is not None:
        try:
            return nwst_exact_small(inst, exact_cap), "exact"
        except CapExceeded as e:
            logger.info("exact NWST skipped: %s", e)
    return nwst_greedy(inst), "greedy"


def _stretch_over(T: Tree, E: EdgeSet) -> Optional[Fraction]:
    try:
        return measure_stretch(union_graph(T, E), T).sigma_max
    except BadParams as e:
        logger.debug("stretch not measured: %s", e)
        return None


# ---------------------------------------------------------------------------
# Tree augmentation
# ---------------------------------------------------------------------------

def _augment(
    problem: Problem,
    T: Tree,
    E: EdgeSet,
    *,
    exact_cap: Optional[int],
    with_oracle: bool,
    caps: Optional[OracleCaps],
) -> SolutionReport:
    started = time.perf_counter()
    if T.n < 3:
        raise BadParams(f"{problem.value} needs a tree with at least 3 nodes")

    unit = problem is Problem.BTA
    mode = Mode.NODE if unit else Mode.EDGE
    if unit:
        E = EdgeSet(tuple(replace(f, cost=Fraction(1)) for f in E), E.filtered)
    kind = IncidenceKind.REDUCED_FET if unit else IncidenceKind.REDUCED_FV
    H = build_incidence(T, E, kind)
    inst = NwstInstance(H.graph, H.terminals, _link_weights(H, lambda f: f.cost))
    try:
        solution, method = _solve_nwst(inst, exact_cap)
    except Infeasible:
        raise Infeasible(f"no subset of the {len(E)} candidates augments the tree")

    F = _chosen_links(H, solution.nodes)
    feasible = is_k_connected(union_graph(T, F), mode)
    if not feasible:
        logger.error("%s: reduction result rejected by the direct verifier (|F|=%d)", problem.value, len(F))
    elif not _tree_part_is_tree(T, F):
        raise InvariantViolation("T_F is not a tree although T ∪ F is feasible")

    lifted = lift_solution(T, F)
    sigma = _stretch_over(T, E)
    hat = F.cost()
    nodes, edges = _shape(lifted)
    diagnostics = {
        "nwst_method": method,
        "terminals": len(inst.terminals),
        "leaves": len(T.leaves),
        "structure_ok": check_bga_properties(inst),
        **_lift_accounting(lifted, hat, sigma),
    }
    if unit:
        diagnostics["leaf_lower_bound"] = ceil(len(T.leaves) / 2)

    report = SolutionReport(
        problem=problem,
        feasible=feasible,
        links=tuple(F.pairs()),
        nodes=nodes,
        edges=edges,
        objective=hat,
        cost=hat,
        lifted_cost=lifted.total_cost(),
        sigma_max=sigma,
        config={"exact_cap": exact_cap},
        diagnostics=diagnostics,
        wall_ms=_elapsed(started),
    )
    logger.info("%s: |F|=%d cost=%s via %s NWST", problem.value, len(F), hat, method)
    if with_oracle:
        exact = exact_oracle(problem, AugmentationInstance(T, E), caps)
        report = report.with_exact(exact.objective)
    return report


def solve_block_tree_aug(
    T: Tree,
    E: EdgeSet,
    *,
    exact_cap: Optional[int] = None,
    with_oracle: bool = False,
    caps: Optional[OracleCaps] = None,
) -> SolutionReport:
    """Fewest candidate links making T ∪ F 2-connected (reduced (E,E_T)-incidence NWST)."""
    return _augment(Problem.BTA, T, E, exact_cap=exact_cap, with_oracle=with_oracle, caps=caps)


def solve_tree_aug_ec(
    T: Tree,
    E: EdgeSet,
    *,
    exact_cap: Optional[int] = None,
    with_oracle: bool = False,
    caps: Optional[OracleCaps] = None,
) -> SolutionReport:
    """Cheapest candidate links making T ∪ F 2-edge-connected (reduced (E,V)-incidence NWST)."""
    return _augment(Problem.TAEC, T, E, exact_cap=exact_cap, with_oracle=with_oracle, caps=caps)


# ---------------------------------------------------------------------------
# 2-connected dominating subgraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SscdsInstance:
    """
    Nodes V ∪ E: tree nodes are the terminals, links the Steiner nodes.
    v–f when v lies on T_f or has a neighbour on it; f–g when T_f and T_g
    share a tree edge. `groups` is the group Steiner form over the links.
    """

    graph: nx.Graph
    groups: GroupSteinerInstance
    dominators: dict[int, frozenset]
    tree: Tree
    links: EdgeSet


def build_sscds(T: Tree, E: EdgeSet, G: Optional[Graph] = None) -> SscdsInstance:
    if T.n < 3:
        raise BadParams("dominating augmentation needs a tree with at least 3 nodes")
    base = (G if G is not None else union_graph(T, E)).nx

    path_nodes = {f.id: set(T.path_nodes(f.u, f.v)) for f in E}
    path_edges = {f.id: {e.id for e in T.path(f.u, f.v)} for f in E}

    dominators: dict[int, frozenset] = {}
    for v in range(T.n):
        closed = {v, *base.neighbors(v)}
        dominators[v] = frozenset(LinkNode(f.id) for f in E if closed & path_nodes[f.id])
        if not dominators[v]:
            raise Infeasible(f"node {v} is dominated by no candidate path")

    g = nx.Graph()
    g.add_nodes_from(LinkNode(f.id) for f in E)
    for a in E:
        for b in E:
            if a.id < b.id and path_edges[a.id] & path_edges[b.id]:
                g.add_edge(LinkNode(a.id), LinkNode(b.id))
    links_only = nx.freeze(nx.Graph(g))

    g.add_nodes_from(TreeNode(v) for v in range(T.n))
    for v, links in dominators.items():
        g.add_edges_from((TreeNode(v), x) for x in sorted_nodes(links))

    groups = GroupSteinerInstance(links_only, tuple(dominators[v] for v in range(T.n)))
    return SscdsInstance(nx.freeze(g), groups, dominators, T, E)


def _two_connected_dominating(G: Graph, T: Tree, F: EdgeSet) -> bool:
    h = span_subgraph(lift_solution(T, F).pairs())
    return is_k_connected(h, Mode.NODE) and dominates(G, h.nodes)


def _prune_links(F: EdgeSet, feasible: Callable[[EdgeSet], bool]) -> EdgeSet:
    """Inclusion-minimal feasible subset, dropping links from the highest id down."""
    for f in sorted(F, key=lambda x: -x.id):
        smaller = EdgeSet(tuple(g for g in F if g.id != f.id))
        if len(smaller) and feasible(smaller):
            F = smaller
    return F


def solve_2cds(
    G: Graph,
    sampler: SamplerConfig,
    *,
    with_oracle: bool = False,
    caps: Optional[OracleCaps] = None,
) -> SolutionReport:
    started = time.perf_counter()
    if G.n < 3:
        raise BadParams("a 2-connected dominating subgraph needs at least 3 nodes")
    if not nx.is_connected(G.nx):
        raise NotConnected("2CDS needs a connected graph")

    best = None
    per_sample = []
    for emb in embedding_samples(G, sampler):
        T = emb.tree
        E = complement_links(G, T)
        sample = {"index": emb.index, "sigma_max": emb.sigma_max, "feasible": False, "objective": None}
        per_sample.append(sample)
        try:
            inst = build_sscds(T, E, G)
        except Infeasible as e:
            logger.info("sample %d: %s", emb.index, e)
            continue

        smallest = min(inst.groups.groups, key=lambda group: (len(group), sorted(x.index for x in group)))
        for root in sorted_nodes(smallest):
            try:
                chosen = group_steiner_greedy(inst.groups, root)
            except Infeasible:
                continue
            F = E.subset(x.index for x in chosen)
            if not _two_connected_dominating(G, T, F):
                logger.error("2cds: sample %d root %s rejected by the direct verifier", emb.index, root.label)
                continue
            F = _prune_links(F, lambda S: _two_connected_dominating(G, T, S))
            lifted = lift_solution(T, F)
            key = (lifted.m, emb.index)
            if sample["objective"] is None or lifted.m < sample["objective"]:
                sample.update(feasible=True, objective=lifted.m)
            if best is None or key < best[0]:
                best = (key, T, F, lifted, emb.sigma_max)

    if best is None:
        logger.info("2cds: no verified solution over %d samples", sampler.samples)
        return SolutionReport(
            problem=Problem.CDS,
            feasible=False,
            seed=sampler.seed,
            config=sampler.as_dict(),
            per_sample=tuple(per_sample),
            diagnostics={"reason": "no sampled tree yields a verified solution"},
            wall_ms=_elapsed(started),
        )

    (_, index), T, F, lifted, sigma = best
    nodes, edges = _shape(lifted)
    report = SolutionReport(
        problem=Problem.CDS,
        feasible=True,
        links=tuple(F.pairs()),
        nodes=nodes,
        edges=edges,
        objective=Fraction(lifted.m),
        cost=F.cost(),
        lifted_cost=lifted.total_cost(),
        sigma_max=sigma,
        seed=sampler.seed,
        config=sampler.as_dict(),
        per_sample=tuple(per_sample),
        diagnostics={"sample": index, "nodes": len(nodes), **_lift_accounting(lifted, F.cost(), sigma)},
        wall_ms=_elapsed(started),
    )
    logger.info("2cds: %d nodes, %d edges (sample %d)", len(nodes), lifted.m, index)
    if with_oracle:
        report = report.with_exact(exact_oracle(Problem.CDS, G, caps).objective)
    return report


# ---------------------------------------------------------------------------
# k-subgraph, quota and budget
# ---------------------------------------------------------------------------

def _roots(G: Graph, root: Optional[int], root_cap: Optional[int], seed: int) -> list[int]:
    if root is not None:
        G.check_node(root)
        return [root]
    cap = config.ROOT_CAP if root_cap is None else root_cap
    if G.n <= cap:
        return list(range(G.n))
    return sorted(derive_rng(seed, "roots", G.n).sample(range(G.n), cap))


def _root_edges(T: Tree, root: Optional[int]) -> frozenset:
    """Tree edges at a required root; T_F reaches the root iff F covers one of them."""
    if root is None:
        return frozenset()
    return frozenset(TreeEdge(e.id) for e in T.edges if root in (e.u, e.v))


def _edge_profits(G: Graph, T: Tree, root: int) -> dict:
    """Each node's profit moves to the tree edge towards `root`."""
    return {TreeEdge(e.id): G.profit(child) for child, e in T.parents(root).items()}


def _subtree_links(inst: QuotaSubtreeInstance, exact_cap: Optional[int]) -> Optional[list[int]]:
    try:
        solution = quota_subtree(inst, exact_cap)
    except Infeasible:
        return None
    ids = [x.index for x in solution.nodes if isinstance(x, LinkNode)]
    return ids or None


def _empty_family_report(problem: Problem, sampler: SamplerConfig, started: float, **diagnostics) -> SolutionReport:
    return SolutionReport(
        problem=problem,
        feasible=True,
        profit=Fraction(0),
        seed=sampler.seed,
        config=sampler.as_dict(),
        diagnostics=diagnostics,
        wall_ms=_elapsed(started),
    )


def solve_quota_family(
    G: Graph,
    target: Any,
    mode: Union[FamilyMode, str],
    sampler: SamplerConfig,
    *,
    root: Optional[int] = None,
    exact_cap: Optional[int] = None,
    root_cap: Optional[int] = None,
    with_oracle: bool = False,
    caps: Optional[OracleCaps] = None,
) -> SolutionReport:
    """
    k_subgraph: cheapest 2-connected subgraph on at least k = target nodes.
    quota:      cheapest 2-connected subgraph of node profit at least target.
    budget:     most profitable 2-connected subgraph of cost at most target.

    Per sampled tree the short-cut (E,E_T)-incidence graph with w(f) = c(f)
    feeds quota_subtree; profits of the rooted variants move to parent edges.
    """
    started = time.perf_counter()
    mode = FamilyMode(mode)
    problem = mode.problem
    target = to_fraction(target)
    if G.n == 0 or not nx.is_connected(G.nx):
        raise NotConnected(f"{problem.value} needs a connected graph")
    if mode is FamilyMode.BUDGET and target < 0:
        raise BadParams(f"budget must be nonnegative, got {target}")
    if mode is not FamilyMode.BUDGET and target <= 0:
        return _empty_family_report(problem, sampler, started, reason="nonpositive target")
    if mode is FamilyMode.K_SUBGRAPH and target > G.n:
        raise Infeasible(f"k={target} exceeds the node count {G.n}")

    roots = _roots(G, root, root_cap, sampler.seed)
    best = None
    per_sample = []
    violation: Optional[Fraction] = None

    for emb in embedding_samples(G, sampler):
        T = emb.tree
        E = complement_links(G, T)
        sample = {"index": emb.index, "sigma_max": emb.sigma_max, "feasible": False, "objective": None}
        per_sample.append(sample)
        if not len(E):
            continue
        H = build_incidence(T, E, IncidenceKind.SHORTCUT_FET)
        weights = _link_weights(H, lambda f: f.cost)
        anchors = _root_edges(T, root)

        attempts: list[QuotaSubtreeInstance] = []
        if mode is FamilyMode.K_SUBGRAPH:
            # a nonempty 2-connected subgraph has at least 3 nodes
            edges_needed = max(target, 3) - 1
            attempts.append(QuotaSubtreeInstance(
                H.graph, H.terminals, weights, edges_needed, QuotaMode.COUNT,
                require_nonterminal=True, anchors=anchors,
            ))
        else:
            for s in roots:
                profits = _edge_profits(G, T, s)
                if mode is FamilyMode.QUOTA:
                    targets = [max(target - G.profit(s), Fraction(0)), target]
                    sub_mode = QuotaMode.QUOTA
                else:
                    targets = [target, target / (emb.sigma_max + 1)]
                    sub_mode = QuotaMode.BUDGET
                for sub_target in dict.fromkeys(targets):
                    attempts.append(QuotaSubtreeInstance(
                        H.graph, H.terminals, weights, sub_target, sub_mode, profits,
                        require_nonterminal=True, anchors=anchors,
                    ))

        seen: set[frozenset] = set()
        for inst in attempts:
            ids = _subtree_links(inst, exact_cap)
            if ids is None or frozenset(ids) in seen:
                continue
            seen.add(frozenset(ids))
            F = E.subset(ids)
            lifted = lift_solution(T, F)
            h = span_subgraph(lifted.pairs())
            if not is_k_connected(h, Mode.NODE):
                logger.error("%s: sample %d rejected by the direct verifier", problem.value, emb.index)
                continue
            if root is not None and root not in h:
                logger.debug("%s: sample %d candidate misses root %d", problem.value, emb.index, root)
                continue
            cost = lifted.total_cost()
            profit = sum((G.profit(v) for v in h.nodes), Fraction(0))
            if mode is FamilyMode.K_SUBGRAPH:
                ok = h.number_of_nodes() >= target
            elif mode is FamilyMode.QUOTA:
                ok = profit >= target
            else:
                ok = cost <= target
                if target > 0 and cost > target:
                    violation = max(violation or Fraction(0), cost / target)
            if not ok:
                logger.debug("%s: sample %d candidate misses the target", problem.value, emb.index)
                continue

            objective = profit if mode is FamilyMode.BUDGET else cost
            key = (-profit, cost) if mode is FamilyMode.BUDGET else (cost, Fraction(0))
            if sample["objective"] is None or (key < sample["key"]):
                sample.update(feasible=True, objective=objective, key=key)
            if best is None or key < best[0]:
                best = (key, emb, T, F, lifted, objective, profit)

    for sample in per_sample:
        sample.pop("key", None)
    diagnostics: dict[str, Any] = {"roots": len(roots) if mode is not FamilyMode.K_SUBGRAPH else None}
    if mode is FamilyMode.BUDGET:
        diagnostics["budget_violation"] = violation

    if best is None:
        if mode is FamilyMode.BUDGET:
            report = _empty_family_report(problem, sampler, started, **diagnostics)
            report = replace(report, per_sample=tuple(per_sample))
        else:
            logger.info("%s: no verified solution over %d samples", problem.value, sampler.samples)
            return SolutionReport(
                problem=problem,
                feasible=False,
                seed=sampler.seed,
                config=sampler.as_dict(),
                per_sample=tuple(per_sample),
                diagnostics=diagnostics,
                wall_ms=_elapsed(started),
            )
    else:
        _, emb, T, F, lifted, objective, profit = best
        nodes, edges = _shape(lifted)
        diagnostics.update(sample=emb.index, **_lift_accounting(lifted, F.cost(), emb.sigma_max))
        report = SolutionReport(
            problem=problem,
            feasible=True,
            links=tuple(F.pairs()),
            nodes=nodes,
            edges=edges,
            objective=objective,
            cost=F.cost(),
            lifted_cost=lifted.total_cost(),
            profit=profit,
            sigma_max=emb.sigma_max,
            seed=sampler.seed,
            config=sampler.as_dict(),
            per_sample=tuple(per_sample),
            diagnostics=diagnostics,
            wall_ms=_elapsed(started),
        )
        logger.info("%s: objective=%s over %d nodes (sample %d)", problem.value, objective, len(nodes), emb.index)

    if with_oracle:
        exact = exact_oracle(problem, QuotaProblem(G, mode, target, root), caps)
        report = report.with_exact(exact.objective)
    return report


# ---------------------------------------------------------------------------
# Exact oracle and direct verification
# ---------------------------------------------------------------------------

def exact_oracle(
    problem: Union[Problem, str],
    instance: Any,
    caps: Optional[OracleCaps] = None,
) -> SolutionReport:
    """
    Optimum by enumeration. `instance` is an AugmentationInstance (bta, taec),
    a Graph (2cds), a QuotaProblem (ksub, quota, budget) or a
    CrossingInstance (crossaug).
    """
    problem = Problem(problem)
    caps = caps or OracleCaps()

    if problem in (Problem.BTA, Problem.TAEC):
        T, E = instance.tree, instance.links
        if T.n < 3:
            raise BadParams(f"{problem.value} needs a tree with at least 3 nodes")
        unit = problem is Problem.BTA
        if unit:
            E = EdgeSet(tuple(replace(f, cost=Fraction(1)) for f in E), E.filtered)
        mode = Mode.NODE if unit else Mode.EDGE
        F = EdgeSet(min_augmentation(T, E, mode, unit=unit, max_nodes=caps.aug_nodes, max_links=caps.aug_links))
        lifted = lift_solution(T, F)
        nodes, edges = _shape(lifted)
        return SolutionReport(
            problem=problem, feasible=True, links=tuple(F.pairs()), nodes=nodes, edges=edges,
            objective=F.cost(), cost=F.cost(), lifted_cost=lifted.total_cost(),
            exact_opt=F.cost(), ratio=Fraction(1), diagnostics={"oracle": True},
        )

    if problem is Problem.CDS:
        G = instance
        nodes, edges = min_2cds(G, caps.cds_nodes)
        cost = sum((G.edge_between(u, v).cost for u, v in edges), Fraction(0))
        return SolutionReport(
            problem=problem, feasible=True, nodes=tuple(nodes), edges=tuple(sorted(edges)),
            objective=Fraction(len(edges)), lifted_cost=cost,
            exact_opt=Fraction(len(edges)), ratio=Fraction(1), diagnostics={"oracle": True},
        )

    if problem in (Problem.KSUB, Problem.QUOTA, Problem.BUDGET):
        G, mode, target = instance.graph, instance.mode, instance.target
        value, pairs = best_subgraph(G, mode.value, target, root=instance.root, max_edges=caps.quota_edges)
        nodes = tuple(sorted({x for pair in pairs for x in pair}))
        cost = sum((G.edge_between(u, v).cost for u, v in pairs), Fraction(0))
        profit = sum((G.profit(v) for v in nodes), Fraction(0))
        return SolutionReport(
            problem=problem, feasible=True, nodes=nodes, edges=tuple(sorted(pairs)),
            objective=value, lifted_cost=cost, profit=profit,
            exact_opt=value, ratio=Fraction(1), diagnostics={"oracle": True},
        )

    J = exact_min_cover(instance.family, instance.candidates, cap=caps.cover_links)
    return SolutionReport(
        problem=problem, feasible=True, links=tuple(J.pairs()),
        objective=Fraction(len(J)), cost=Fraction(len(J)),
        exact_opt=Fraction(len(J)), ratio=Fraction(1), diagnostics={"oracle": True},
    )


def _pick(E: EdgeSet, pairs: Iterable[Pair]) -> Optional[EdgeSet]:
    by_pair = {f.pair: f for f in E}
    picked = []
    for u, v in pairs:
        f = by_pair.get(canonical(u, v))
        if f is None:
            return None
        picked.append(f)
    return EdgeSet(tuple(picked))


def verify_solution(problem: Union[Problem, str], instance: Any, report: SolutionReport) -> bool:
    """Re-check a report against its instance with the direct verifiers only."""
    problem = Problem(problem)
    if not report.feasible:
        return False

    if problem in (Problem.BTA, Problem.TAEC):
        F = _pick(instance.links, report.links)
        if F is None:
            return False
        mode = Mode.NODE if problem is Problem.BTA else Mode.EDGE
        return is_k_connected(union_graph(instance.tree, F), mode)

    if problem is Problem.CROSSAUG:
        J = _pick(instance.candidates, report.links)
        return J is not None and covers(J.pairs(), instance.family)[0]

    G = instance if problem is Problem.CDS else instance.graph
    if any(not G.has_edge(u, v) for u, v in report.edges):
        return False
    if not report.edges:
        if problem is Problem.BUDGET:
            return True
        return problem is not Problem.CDS and instance.target <= 0
    h = span_subgraph(report.edges)
    if not is_k_connected(h, Mode.NODE):
        return False
    if problem is not Problem.CDS and instance.root is not None and instance.root not in h:
        return False
    if problem is Problem.CDS:
        return dominates(G, h.nodes)

    cost = sum((G.edge_between(u, v).cost for u, v in report.edges), Fraction(0))
    profit = sum((G.profit(v) for v in h.nodes), Fraction(0))
    if problem is Problem.KSUB:
        return h.number_of_nodes() >= instance.target
    if problem is Problem.QUOTA:
        return profit >= instance.target
    return cost <= instance.target
