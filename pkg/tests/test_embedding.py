from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedding import (
    SamplerConfig,
    SamplerMethod,
    best_embedding,
    embedding_samples,
    measure_stretch,
    sample_spanning_tree,
)
from errors import BadParams, NotConnected, NotSpanning
from graph_core import GenKind, Graph, Tree, generate
from tests.strategies import PROPERTY_SETTINGS


@pytest.mark.parametrize("method", list(SamplerMethod))
def test_samplers_return_spanning_trees(method):
    G = generate(GenKind.GRID, {"rows": 3, "cols": 3})
    T = sample_spanning_tree(G, SamplerConfig(method, seed=4))
    assert T.n == G.n
    assert all(G.has_edge(e.u, e.v) for e in T.edges)


@pytest.mark.parametrize("method", list(SamplerMethod))
def test_samplers_are_deterministic(method):
    G = generate(GenKind.COMPLETE, {"n": 6})
    config = SamplerConfig(method, seed=11)
    assert sample_spanning_tree(G, config, 3) == sample_spanning_tree(G, config, 3)


def test_sampler_needs_connected_graph():
    with pytest.raises(NotConnected):
        sample_spanning_tree(Graph.build(3, [(0, 1)]), SamplerConfig())


def test_sampler_config_validation():
    with pytest.raises(BadParams):
        SamplerConfig(samples=0)
    with pytest.raises(BadParams):
        SamplerConfig(method="spectral")
    assert SamplerConfig("bfs_random_root").method is SamplerMethod.BFS_RANDOM_ROOT


def test_cycle_stretch(c5):
    emb = best_embedding(c5, SamplerConfig(samples=3, seed=2))
    assert emb.sigma_max == 4
    assert sorted(emb.per_edge_stretch) == [1, 1, 1, 1, 4]
    assert emb.sigma_avg == Fraction(8, 5)


def test_tree_has_unit_stretch(path4):
    emb = measure_stretch(path4.graph, path4)
    assert emb.sigma_max == 1
    assert emb.per_edge_stretch == (1, 1, 1)


def test_weighted_stretch_can_drop_below_one():
    G = Graph.build(3, [(0, 1), (1, 2), (0, 2)], costs=[1, 1, 4])
    T = Tree.from_pairs(3, [(0, 1), (1, 2)], costs=[1, 1])
    emb = measure_stretch(G, T)
    assert emb.per_edge_stretch[2] == Fraction(1, 2)
    assert emb.sigma_max == 1


def test_zero_cost_edge():
    G = Graph.build(3, [(0, 1), (1, 2), (0, 2)], costs=[0, 0, 0])
    T = Tree.from_pairs(3, [(0, 1), (1, 2)])
    assert measure_stretch(G, T).sigma_max == 1

    G = Graph.build(3, [(0, 1), (1, 2), (0, 2)], costs=[1, 1, 0])
    with pytest.raises(BadParams):
        measure_stretch(G, T)


def test_stretch_needs_spanning_tree(c4):
    with pytest.raises(NotSpanning):
        measure_stretch(c4, Tree.from_pairs(4, [(0, 1), (1, 2), (1, 3)]))


def test_best_embedding_is_minimum_over_samples():
    G = generate(GenKind.GNP, {"n": 8, "p": 0.6, "max_cost": 5}, seed=1)
    if not nx.is_connected(G.nx):
        pytest.skip("generated graph happens to be disconnected")
    config = SamplerConfig(SamplerMethod.PERTURBED_MST, samples=5, seed=3)
    sigmas = [e.sigma_max for e in embedding_samples(G, config)]
    best = best_embedding(G, config)
    assert best.sigma_max == min(sigmas)
    assert best.index == sigmas.index(min(sigmas))


@PROPERTY_SETTINGS
@given(n=st.integers(3, 9), seed=st.integers(0, 1000), k=st.integers(1, 6))
def test_more_samples_never_worsen_sigma(n, seed, k):
    G = generate(GenKind.COMPLETE, {"n": n, "max_cost": 4}, seed=seed)
    fewer = best_embedding(G, SamplerConfig(samples=k, seed=seed))
    more = best_embedding(G, SamplerConfig(samples=k + 1, seed=seed))
    assert more.sigma_max <= fewer.sigma_max
