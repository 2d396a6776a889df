import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import assume, given

from errors import BadParams, CapExceeded, Infeasible, InvalidNode
from incidence import IncidenceKind, build_incidence, terminals_connected
from steiner import (
    GroupSteinerInstance,
    NwstInstance,
    QuotaMode,
    QuotaSubtreeInstance,
    check_bga_properties,
    group_steiner_greedy,
    nwst_exact_small,
    nwst_greedy,
    quota_subtree,
)
from tests.strategies import PROPERTY_SETTINGS, trees_with_links


@pytest.fixture
def three_terminals() -> NwstInstance:
    """Terminals 0, 1, 2; hub 3 of weight 3 sees all of them; 4, 5, 6 are unit chains."""
    g = nx.Graph()
    g.add_edges_from([(3, 0), (3, 1), (3, 2)])
    g.add_edges_from([(0, 4), (4, 1), (1, 5), (5, 2), (0, 6), (6, 2)])
    weights = {3: Fraction(3), 4: Fraction(1), 5: Fraction(1), 6: Fraction(1)}
    return NwstInstance(g, frozenset({0, 1, 2}), weights)


def _chain() -> nx.Graph:
    g = nx.Graph()
    g.add_edges_from([(0, 1), (1, 2)])
    return g


# ---------------------------------------------------------------------------
# Node-weighted Steiner tree
# ---------------------------------------------------------------------------

def test_greedy_prefers_two_chains_over_heavy_hub(three_terminals):
    solution = nwst_greedy(three_terminals)
    assert solution.weight == 2
    assert 3 not in solution.nodes
    assert {0, 1, 2} <= solution.nodes
    assert nx.is_connected(three_terminals.graph.subgraph(solution.nodes))


def test_exact_matches_optimum(three_terminals):
    solution = nwst_exact_small(three_terminals)
    assert solution.weight == 2
    assert len(solution.edges) == len(solution.nodes) - 1


def test_exact_cap(three_terminals):
    with pytest.raises(CapExceeded):
        nwst_exact_small(three_terminals, cap=2)


def test_no_terminals_gives_empty_solution(three_terminals):
    inst = NwstInstance(three_terminals.graph, frozenset(), {v: Fraction(1) for v in range(7)})
    assert nwst_greedy(inst).empty
    assert nwst_exact_small(inst).empty


def test_terminals_in_different_components():
    g = nx.Graph()
    g.add_nodes_from([0, 1])
    inst = NwstInstance(g, frozenset({0, 1}), {})
    with pytest.raises(Infeasible):
        nwst_greedy(inst)


def test_weights_must_cover_exactly_the_nonterminals():
    with pytest.raises(BadParams):
        NwstInstance(_chain(), frozenset({0, 2}), {})
    with pytest.raises(BadParams):
        NwstInstance(_chain(), frozenset({0, 2}), {1: Fraction(-1)})


# ---------------------------------------------------------------------------
# Group Steiner tree
# ---------------------------------------------------------------------------

def test_group_steiner_reaches_every_group():
    g = nx.path_graph(4)
    chosen = group_steiner_greedy(GroupSteinerInstance(g, (frozenset({3}), frozenset({1, 2}))), 0)
    assert chosen == {0, 1, 2, 3}


def test_group_steiner_root_already_in_group():
    g = nx.path_graph(4)
    assert group_steiner_greedy(GroupSteinerInstance(g, (frozenset({0, 3}),)), 0) == {0}


def test_group_steiner_errors():
    g = nx.path_graph(3)
    g.add_node(9)
    with pytest.raises(InvalidNode):
        group_steiner_greedy(GroupSteinerInstance(g, (frozenset({1}),)), 7)
    with pytest.raises(Infeasible):
        group_steiner_greedy(GroupSteinerInstance(g, (frozenset({9}),)), 0)
    with pytest.raises(BadParams):
        GroupSteinerInstance(g, (frozenset(),))


# ---------------------------------------------------------------------------
# Quota subtrees
# ---------------------------------------------------------------------------

def _count_instance(target, mode=QuotaMode.COUNT) -> QuotaSubtreeInstance:
    return QuotaSubtreeInstance(_chain(), frozenset({0, 2}), {1: Fraction(1)}, target, mode)


@pytest.mark.parametrize("exact_cap", [None, 5])
def test_count_subtree_buys_the_middle_node(exact_cap):
    solution = quota_subtree(_count_instance(2), exact_cap=exact_cap)
    assert solution.weight == 1
    assert solution.profit == 2
    assert solution.nodes == {0, 1, 2}


def test_count_target_one_needs_no_weight():
    solution = quota_subtree(_count_instance(1))
    assert solution.weight == 0
    assert solution.profit == 1


def test_zero_target_is_empty():
    assert quota_subtree(_count_instance(0)).empty


def test_unreachable_target():
    with pytest.raises(Infeasible):
        quota_subtree(_count_instance(5))


def test_quota_uses_terminal_profits():
    inst = QuotaSubtreeInstance(
        _chain(), frozenset({0, 2}), {1: Fraction(1)}, 5, QuotaMode.QUOTA,
        profits={0: Fraction(2), 2: Fraction(3)},
    )
    solution = quota_subtree(inst, exact_cap=5)
    assert solution.profit == 5 and solution.weight == 1


@pytest.mark.parametrize("budget,profit,weight", [(0, 1, 0), (1, 2, 1)])
def test_budget_subtree(budget, profit, weight):
    solution = quota_subtree(_count_instance(budget, QuotaMode.BUDGET))
    assert solution.profit == profit
    assert solution.weight == weight


@pytest.mark.parametrize("exact_cap", [None, 5])
def test_anchored_subtree_reaches_an_anchor(exact_cap):
    g = nx.Graph([(0, 1), (2, 3)])
    weights = {1: Fraction(1), 3: Fraction(4)}
    free = QuotaSubtreeInstance(g, frozenset({0, 2}), weights, 1, QuotaMode.COUNT, require_nonterminal=True)
    assert quota_subtree(free, exact_cap=exact_cap).nodes == {0, 1}

    anchored = QuotaSubtreeInstance(
        g, frozenset({0, 2}), weights, 1, QuotaMode.COUNT, require_nonterminal=True, anchors={2},
    )
    solution = quota_subtree(anchored, exact_cap=exact_cap)
    assert solution.nodes == {2, 3}
    assert solution.weight == 4


def test_quota_instance_validation():
    with pytest.raises(BadParams):
        _count_instance(-1)
    with pytest.raises(BadParams):
        QuotaSubtreeInstance(_chain(), frozenset({0, 2}), {1: Fraction(1)}, 1, anchors={1})
    with pytest.raises(BadParams):
        _count_instance(1, mode="median")


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------

def test_bga_properties_fail_for_three_terminal_hub():
    assert not check_bga_properties(nx.star_graph(3), [1, 2, 3])


def test_bga_properties_fail_for_open_neighbourhood():
    assert not check_bga_properties(nx.star_graph(2), [0])
    assert check_bga_properties(nx.complete_graph(3), [0])


@PROPERTY_SETTINGS
@given(trees_with_links())
def test_reduced_incidence_graphs_have_bga_structure(instance):
    T, F = instance
    for kind in (IncidenceKind.REDUCED_FET, IncidenceKind.REDUCED_FV):
        H = build_incidence(T, F, kind)
        assert check_bga_properties(H.graph, H.terminals)


@PROPERTY_SETTINGS
@given(trees_with_links(max_n=8))
def test_greedy_stays_within_log_factor_of_exact(instance):
    T, E = instance
    H = build_incidence(T, E, IncidenceKind.REDUCED_FET)
    assume(terminals_connected(H))
    inst = NwstInstance(H.graph, H.terminals, {x: Fraction(1) for x in H.link_nodes})
    greedy = nwst_greedy(inst).weight
    exact = nwst_exact_small(inst, cap=20).weight
    assert exact <= greedy <= 2 * math.log(max(len(inst.terminals), 2)) * exact
