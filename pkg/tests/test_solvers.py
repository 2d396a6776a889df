import math
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given, reject, settings

from embedding import SamplerConfig
from errors import BadParams, EmptySolution, Infeasible
from graph_core import EdgeSet, Graph, Mode, Tree, dominates, is_k_connected, span_subgraph, union_graph
from incidence import LinkNode, TreeNode
from oracles import min_2cds
from reports import Problem
from solvers import (
    AugmentationInstance,
    FamilyMode,
    QuotaProblem,
    build_sscds,
    exact_oracle,
    lift_solution,
    solve_2cds,
    solve_block_tree_aug,
    solve_quota_family,
    solve_tree_aug_ec,
    verify_solution,
)
from tests.strategies import PROPERTY_SETTINGS, trees_with_links

SAMPLER = SamplerConfig(samples=3, seed=1)


@pytest.fixture
def star_links(star) -> EdgeSet:
    return EdgeSet.build([(1, 2), (1, 3), (2, 3)], tree=star)


# ---------------------------------------------------------------------------
# Tree augmentation
# ---------------------------------------------------------------------------

def test_star_needs_two_links(star, star_links):
    report = solve_block_tree_aug(star, star_links, with_oracle=True)
    assert report.feasible
    assert len(report.links) == 2
    assert report.objective == 2
    assert report.exact_opt == 2 and report.ratio == 1
    assert report.diagnostics["leaf_lower_bound"] == 2
    assert report.diagnostics["structure_ok"]
    assert verify_solution(Problem.BTA, AugmentationInstance(star, star_links), report)


def test_bta_ignores_link_costs(path4):
    E = EdgeSet.build([(0, 3), (0, 2)], tree=path4, costs=[9, 1])
    report = solve_block_tree_aug(path4, E)
    assert report.links == ((0, 3),)
    assert report.objective == 1


def test_taec_picks_two_cheap_links(path4):
    E = EdgeSet.build([(0, 2), (1, 3), (0, 3)], tree=path4, costs=[1, 1, 3])
    report = solve_tree_aug_ec(path4, E, exact_cap=10)
    assert report.links == ((0, 2), (1, 3))
    assert report.cost == 2
    assert report.lifted_cost == 5
    assert report.diagnostics["nwst_method"] == "exact"
    assert report.ratio <= 2 * math.log(max(report.diagnostics["terminals"], 2))
    assert report.diagnostics["lift_bound_holds"]


def test_taec_oracle_agrees(path4):
    E = EdgeSet.build([(0, 2), (1, 3), (0, 3)], tree=path4, costs=[1, 1, 3])
    exact = exact_oracle("taec", AugmentationInstance(path4, E))
    assert exact.objective == 2


def test_augmentation_infeasible(star):
    with pytest.raises(Infeasible):
        solve_block_tree_aug(star, EdgeSet.build([(1, 2)], tree=star))


def test_augmentation_needs_three_nodes():
    T = Tree.from_pairs(2, [(0, 1)])
    with pytest.raises(BadParams):
        solve_block_tree_aug(T, EdgeSet())


def test_lift_solution(path4):
    E = EdgeSet.build([(0, 2)], tree=path4)
    assert lift_solution(path4, E).pairs() == [(0, 1), (1, 2), (0, 2)]
    with pytest.raises(EmptySolution):
        lift_solution(path4, EdgeSet())


def test_verify_rejects_tampered_report(star, star_links):
    report = solve_block_tree_aug(star, star_links)
    tampered = replace(report, links=report.links[:1])
    assert not verify_solution("bta", AugmentationInstance(star, star_links), tampered)
    unknown = replace(report, links=((0, 1),))
    assert not verify_solution("bta", AugmentationInstance(star, star_links), unknown)


@settings(PROPERTY_SETTINGS, max_examples=60)
@given(trees_with_links(max_n=8))
def test_bta_solutions_are_verified_and_bounded(instance):
    T, E = instance
    assume(is_k_connected(union_graph(T, E), Mode.NODE))
    report = solve_block_tree_aug(T, E, with_oracle=True)
    assert report.feasible
    assert verify_solution(Problem.BTA, AugmentationInstance(T, E), report)
    assert report.ratio >= 1
    assert report.exact_opt >= report.diagnostics["leaf_lower_bound"]
    assert report.diagnostics["lift_bound_holds"]


# ---------------------------------------------------------------------------
# 2-connected dominating subgraph
# ---------------------------------------------------------------------------

def test_2cds_on_cycle_takes_the_whole_cycle(c5):
    report = solve_2cds(c5, SAMPLER, with_oracle=True)
    assert report.feasible
    assert report.objective == 5
    assert report.ratio == 1
    assert len(report.per_sample) == 3
    assert verify_solution("2cds", c5, report)


def test_2cds_on_k4(k4):
    report = solve_2cds(k4, SAMPLER)
    assert report.feasible
    assert verify_solution(Problem.CDS, k4, report)
    assert exact_oracle("2cds", k4).objective == 3


def test_2cds_needs_three_nodes():
    with pytest.raises(BadParams):
        solve_2cds(Tree.from_pairs(2, [(0, 1)]).graph, SAMPLER)


def test_2cds_with_a_pendant_matches_the_oracle():
    G = Graph.build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)])
    report = solve_2cds(G, SAMPLER, with_oracle=True)
    assert report.feasible
    assert report.nodes == (0, 1, 2, 3, 4)
    assert report.objective == len(min_2cds(G)[1]) == 5
    assert report.ratio == 1
    assert verify_solution(Problem.CDS, G, report)


def test_sscds_of_a_single_spanning_link(path3):
    inst = build_sscds(path3, EdgeSet.build([(0, 2)], tree=path3))
    assert inst.groups.groups == (frozenset({LinkNode(0)}),) * 3
    assert {frozenset(e) for e in inst.graph.edges} == {frozenset({TreeNode(v), LinkNode(0)}) for v in range(3)}


def test_sscds_links_with_edge_disjoint_paths():
    T = Tree.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    E = EdgeSet.build([(0, 2), (2, 4)], tree=T)
    inst = build_sscds(T, E)
    assert not inst.groups.graph.has_edge(LinkNode(0), LinkNode(1))
    # the link 2-4 puts node 4 next to T_02
    assert inst.dominators[4] == {LinkNode(0), LinkNode(1)}
    assert build_sscds(T, E, T.graph).dominators[4] == {LinkNode(1)}


def test_sscds_undominated_node():
    T = Tree.from_pairs(7, [(i, i + 1) for i in range(6)])
    with pytest.raises(Infeasible):
        build_sscds(T, EdgeSet.build([(0, 2)], tree=T))


@PROPERTY_SETTINGS
@given(trees_with_links(max_n=7, max_links=5))
def test_dominating_augmentation_matches_sscds_feasibility(instance):
    T, E = instance
    G = union_graph(T, E)
    try:
        inst = build_sscds(T, E, G)
    except Infeasible:
        reject()
    for size in range(1, len(E) + 1):
        for ids in combinations([f.id for f in E], size):
            h = span_subgraph(lift_solution(T, E.subset(ids)).pairs())
            direct = is_k_connected(h, Mode.NODE) and dominates(G, h.nodes)
            chosen = {LinkNode(i) for i in ids}
            grouped = nx.is_connected(inst.groups.graph.subgraph(chosen)) and all(g & chosen for g in inst.groups.groups)
            assert direct == grouped


# ---------------------------------------------------------------------------
# k-subgraph, quota and budget
# ---------------------------------------------------------------------------

def test_ksub_on_cycle(c5):
    report = solve_quota_family(c5, 5, FamilyMode.K_SUBGRAPH, SAMPLER, with_oracle=True)
    assert report.feasible
    assert report.objective == 5
    assert report.ratio == 1
    assert verify_solution("ksub", QuotaProblem(c5, "k_subgraph", 5), report)


def test_small_k_still_needs_a_cycle(c5):
    report = solve_quota_family(c5, 2, "k_subgraph", SAMPLER)
    assert len(report.nodes) == 5


def test_ksub_zero_target_is_empty(c5):
    report = solve_quota_family(c5, 0, "k_subgraph", SAMPLER)
    assert report.feasible and report.nodes == ()


def test_ksub_beyond_node_count(c5):
    with pytest.raises(Infeasible):
        solve_quota_family(c5, 6, "k_subgraph", SAMPLER)


def test_quota_on_cycle(c5):
    report = solve_quota_family(c5, 3, FamilyMode.QUOTA, SAMPLER)
    assert report.objective == 5
    assert report.profit == 5
    assert report.diagnostics["roots"] == 5


def test_budget_too_small_gives_empty_solution(c5):
    report = solve_quota_family(c5, 2, FamilyMode.BUDGET, SAMPLER, with_oracle=True)
    assert report.feasible
    assert report.profit == 0
    assert report.edges == ()
    assert report.exact_opt == 0
    assert verify_solution("budget", QuotaProblem(c5, "budget", 2), report)


def test_budget_covering_the_cycle(c5):
    report = solve_quota_family(c5, 5, FamilyMode.BUDGET, SAMPLER)
    assert report.profit == 5
    assert report.lifted_cost <= 5


def test_negative_budget(c5):
    with pytest.raises(BadParams):
        solve_quota_family(c5, -1, "budget", SAMPLER)


def test_quota_problem_coerces_fields(c5):
    problem = QuotaProblem(c5, "budget", "5/2")
    assert problem.mode is FamilyMode.BUDGET
    assert problem.target == Fraction(5, 2)
    assert problem.mode.problem is Problem.BUDGET


@pytest.fixture
def bridged_triangles() -> Graph:
    """A cheap triangle 0-1-2 and a dear triangle 3-4-5 joined by the bridge 2-3."""
    pairs = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
    return Graph.build(6, pairs, costs=[1, 1, 1, 5, 5, 5, 1])


def test_rooted_quota_contains_its_root(bridged_triangles):
    sampler = SamplerConfig(samples=8, seed=1)
    report = solve_quota_family(bridged_triangles, 3, FamilyMode.QUOTA, sampler, root=4, with_oracle=True)
    assert report.feasible
    assert report.nodes == (3, 4, 5)
    assert report.objective == 15
    assert report.exact_opt == 15 and report.ratio == 1
    assert verify_solution(Problem.QUOTA, QuotaProblem(bridged_triangles, "quota", 3, root=4), report)


def test_unrooted_quota_takes_the_cheap_triangle(bridged_triangles):
    report = solve_quota_family(bridged_triangles, 3, FamilyMode.QUOTA, SamplerConfig(samples=8, seed=1))
    assert report.nodes == (0, 1, 2)
    assert report.objective == 3


def test_verify_rejects_solution_without_root(bridged_triangles):
    report = solve_quota_family(bridged_triangles, 3, FamilyMode.QUOTA, SamplerConfig(samples=8, seed=1))
    assert verify_solution("quota", QuotaProblem(bridged_triangles, "quota", 3), report)
    assert not verify_solution("quota", QuotaProblem(bridged_triangles, "quota", 3, root=4), report)


def test_rooted_budget_oracle(bridged_triangles):
    assert exact_oracle("budget", QuotaProblem(bridged_triangles, "budget", 15, root=4)).objective == 3
    assert exact_oracle("budget", QuotaProblem(bridged_triangles, "budget", 14, root=4)).objective == 0
