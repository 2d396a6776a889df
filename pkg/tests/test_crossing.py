from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crossing import (
    CoreNode,
    ExplicitOracle,
    SetFamily,
    build_separability_graph,
    check_cover_criterion,
    cores,
    covers,
    exact_min_cover,
    family_generators,
    separable,
    solve_crossing_aug,
    validate_family,
)
from errors import BadParams, CapExceeded, Infeasible, NotACactus, Unsupported
from graph_core import EdgeSet, GenKind, generate
from incidence import LinkNode
from solvers import AugmentationInstance, exact_oracle
from tests.strategies import PROPERTY_SETTINGS, symmetric_families


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def test_cycle_two_cuts(c4_cuts):
    assert len(c4_cuts) == 12
    assert cores(c4_cuts) == [{0}, {1}, {2}, {3}]
    flags = validate_family(c4_cuts)
    assert flags.crossing and flags.symmetric and flags.proper


def test_tree_cuts(path3):
    F = family_generators("tree_cuts", path3)
    assert sorted(F.as_sets()) == [(0,), (0, 1), (1, 2), (2,)]
    assert cores(F) == [{0}, {2}]


def test_min_edge_cuts_of_k4(k4):
    F = family_generators("min_edge_cuts", k4)
    assert len(F) == 8
    assert all(len(s) in (1, 3) for s in F.as_sets())


def test_explicit_family_flags():
    F = family_generators("explicit", (4, [[0], [1, 2, 3]]))
    assert F.crossing and F.symmetric and F.proper
    singletons = SetFamily.from_sets(4, [[0], [1], [2], [3]])
    assert not singletons.symmetric


def test_family_contains():
    F = SetFamily.from_sets(3, [[0], [1, 2]])
    assert [2, 1] in F
    assert [0, 1] not in F


def test_family_validation():
    with pytest.raises(BadParams):
        SetFamily.from_sets(3, [[0, 1, 2]])
    with pytest.raises(BadParams):
        SetFamily.from_sets(3, [[0], [0]])
    with pytest.raises(BadParams):
        SetFamily(0)


def test_generator_errors(k4):
    with pytest.raises(NotACactus):
        family_generators("cactus_two_cuts", k4)
    with pytest.raises(CapExceeded):
        family_generators("cactus_two_cuts", generate(GenKind.CYCLE, {"n": 13}))
    with pytest.raises(BadParams):
        family_generators("all_cuts", k4)


# ---------------------------------------------------------------------------
# Covering and separability
# ---------------------------------------------------------------------------

def test_covers(c4_cuts):
    assert covers([(0, 2), (1, 3)], c4_cuts) == (True, None)
    assert covers([(0, 2)], c4_cuts) == (False, (1,))


def test_separable(c4_cuts):
    assert not separable((0, 2), (1, 3), c4_cuts)
    assert separable((0, 1), (2, 3), c4_cuts)


def test_separable_through_oracle_matches_family(c4_cuts):
    oracle = ExplicitOracle(c4_cuts)
    for f, g in combinations(list(combinations(range(4), 2)), 2):
        assert separable(f, g, oracle) == separable(f, g, c4_cuts)
    assert oracle.queries > 0


def test_oracle_returns_uncovered_member(c4_cuts):
    oracle = ExplicitOracle(c4_cuts)
    assert oracle.uncovered([], 0, 1) == {0}
    assert oracle.uncovered([(0, 2), (1, 3)], 0, 1) is None


def test_separability_graph(c4_cuts):
    H = build_separability_graph(c4_cuts, [(0, 2), (1, 3)])
    expected = {
        (CoreNode(0), LinkNode(0)),
        (CoreNode(2), LinkNode(0)),
        (CoreNode(1), LinkNode(1)),
        (CoreNode(3), LinkNode(1)),
        (LinkNode(0), LinkNode(1)),
    }
    assert {frozenset(e) for e in H.graph.edges} == {frozenset(e) for e in expected}
    assert H.cores_connected()


def test_separability_graph_needs_symmetric_family():
    with pytest.raises(Unsupported):
        build_separability_graph(SetFamily.from_sets(3, [[0]]), [(0, 1)])


def test_cover_criterion_reports_witness(c4_cuts):
    check = check_cover_criterion(c4_cuts, [(0, 2)])
    assert check.agree
    assert not check.covers and not check.connected
    assert check.witness == (1,)


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------

def test_solve_crossing_aug(c4_cuts):
    report = solve_crossing_aug(c4_cuts, [(0, 2), (1, 3), (0, 1)], with_oracle=True)
    assert report.feasible
    assert report.objective == 2
    assert report.exact_opt == 2 and report.ratio == 1
    assert report.diagnostics["cores"] == 4


def test_solve_crossing_aug_with_oracle_family(c4_cuts):
    oracle = ExplicitOracle(c4_cuts)
    report = solve_crossing_aug(oracle, [(0, 2), (1, 3)], core_sets=[{0}, {1}, {2}, {3}])
    assert report.feasible
    assert report.links == ((0, 2), (1, 3))
    with pytest.raises(BadParams):
        solve_crossing_aug(oracle, [(0, 2), (1, 3)])


def test_crossing_aug_infeasible(c4_cuts):
    with pytest.raises(Infeasible):
        solve_crossing_aug(c4_cuts, [(0, 2)])
    with pytest.raises(Infeasible):
        exact_min_cover(c4_cuts, [(0, 2)])


def test_exact_min_cover_cap(c4_cuts):
    with pytest.raises(CapExceeded):
        exact_min_cover(c4_cuts, [(0, 2), (1, 3)], cap=1)


@PROPERTY_SETTINGS
@given(n=st.integers(3, 8), seed=st.integers(0, 10_000), data=st.data())
def test_cover_criterion_on_cactus_families(n, seed, data):
    G = generate(GenKind.RANDOM_CACTUS, {"n": n}, seed=seed)
    F = family_generators("cactus_two_cuts", G)
    J = data.draw(st.lists(st.sampled_from(list(combinations(range(n), 2))), unique=True, max_size=6))
    assert check_cover_criterion(F, J).agree


def test_tree_cuts_cover_matches_unit_tree_augmentation(path4):
    E = EdgeSet.build([(0, 2), (1, 3), (0, 3)], tree=path4)
    F = family_generators("tree_cuts", path4)
    assert len(exact_min_cover(F, E)) == exact_oracle("taec", AugmentationInstance(path4, E)).objective == 1
    assert solve_crossing_aug(F, EdgeSet.build([(0, 2), (1, 3)], n=4)).objective == 2


# ---------------------------------------------------------------------------
# Symmetric families without crossing
# ---------------------------------------------------------------------------

def test_core_paths_through_straddling_core():
    # {2,3} straddles the uncovered member {0,1,2}, so only a path through it joins the cores
    F = SetFamily.from_sets(6, [[0, 1, 2], [3, 4, 5], [0], [1, 2, 3, 4, 5], [5], [0, 1, 2, 3, 4], [2, 3], [0, 1, 4, 5]])
    assert F.symmetric and not F.crossing
    with pytest.raises(Unsupported):
        build_separability_graph(F, [(0, 2), (3, 5)])
    H = build_separability_graph(F, [(0, 2), (3, 5)], require_crossing=False)
    assert H.cores_connected()
    assert not H.cores_linked()
    assert covers([(0, 2), (3, 5)], F) == (False, (0, 1, 2))


@PROPERTY_SETTINGS
@given(symmetric_families(), st.data())
def test_linked_cores_imply_cover_on_symmetric_families(F, data):
    J = data.draw(st.lists(st.sampled_from(list(combinations(range(F.n), 2))), unique=True, max_size=6))
    H = build_separability_graph(F, J, require_crossing=False)
    if H.cores_linked():
        assert covers(J, F)[0]


@PROPERTY_SETTINGS
@given(symmetric_families(), st.data())
def test_separable_is_symmetric(F, data):
    f, g = data.draw(st.lists(st.sampled_from(list(combinations(range(F.n), 2))), unique=True, min_size=2, max_size=2))
    oracle = ExplicitOracle(F)
    assert separable(f, g, F) == separable(g, f, F)
    assert separable(f, g, oracle) == separable(g, f, oracle) == separable(f, g, F)


@PROPERTY_SETTINGS
@given(n=st.integers(3, 8), seed=st.integers(0, 10_000), data=st.data())
def test_core_connectivity_is_monotone_in_links(n, seed, data):
    F = family_generators("cactus_two_cuts", generate(GenKind.RANDOM_CACTUS, {"n": n}, seed=seed))
    pool = list(combinations(range(n), 2))
    J = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=6))
    extra = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=3))
    more = J + [p for p in extra if p not in J]
    fewer, larger = build_separability_graph(F, J), build_separability_graph(F, more)
    if fewer.cores_connected():
        assert larger.cores_connected()
    if fewer.cores_linked():
        assert larger.cores_linked()
