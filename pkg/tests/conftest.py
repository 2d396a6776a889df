import pytest

import config
from crossing import family_generators
from graph_core import GenKind, Graph, Tree, generate


@pytest.fixture(autouse=True)
def _quiet_artifacts(monkeypatch, tmp_path):
    # reports stay byte-stable and dumps stay inside the test's tmp dir
    monkeypatch.setattr(config, "RECORD_TIMINGS", False)
    monkeypatch.setattr(config, "DUMP_DIR", str(tmp_path / "dumps"))
    monkeypatch.setattr(config, "BICONN_THREADS", 2)


@pytest.fixture
def path3() -> Tree:
    return Tree.from_pairs(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4() -> Tree:
    return Tree.from_pairs(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star() -> Tree:
    """Center 0, leaves 1, 2, 3."""
    return Tree.from_pairs(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def triangle() -> Graph:
    return Graph.build(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def c4() -> Graph:
    return generate(GenKind.CYCLE, {"n": 4})


@pytest.fixture
def c5() -> Graph:
    return generate(GenKind.CYCLE, {"n": 5})


@pytest.fixture
def k4() -> Graph:
    return generate(GenKind.COMPLETE, {"n": 4})


@pytest.fixture
def bowtie() -> Graph:
    """Two triangles sharing node 2."""
    return Graph.build(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@pytest.fixture
def c4_cuts(c4):
    return family_generators("cactus_two_cuts", c4)
