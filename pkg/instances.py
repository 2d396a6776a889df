"""
Instance and report files (JSON).

Every instance document carries `format_version` and `kind`; the payload
keys depend on the kind:

  graph   n, edges [{u, v, cost?}], profits?
  bta     n, tree_edges [{u, v, cost?}], candidate_edges [{u, v, cost?}]
  family  groundset_n, members [[ids]], candidate_edges?
  quota   graph payload + mode (k_subgraph | quota | budget), k | Q | B, root?

Problems are reported as SchemaError with the JSON pointer of the offending
value. Reports are written with sorted keys, two-space indent and every
rational as a "p/q" string, so equal runs give equal bytes.
"""

import json
import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import config
from crossing import CrossingInstance, SetFamily
from errors import BiconnError, NotATree, SchemaError, VersionMismatch
from graph_core import EdgeSet, Graph, Tree
from reports import Problem, SolutionReport
from solvers import AugmentationInstance, FamilyMode, QuotaProblem
from utils import canonical_json, digest, frac_str, to_fraction

logger = logging.getLogger(__name__)

KINDS = ("graph", "bta", "family", "quota")

# target key per quota mode
TARGET_KEYS = {"k_subgraph": "k", "quota": "Q", "budget": "B"}


@dataclass(frozen=True, eq=False)
class InstanceFile:
    kind: str
    payload: Any
    seed: Optional[int]
    document: dict

    @property
    def digest(self) -> str:
        return digest(self.document)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _int(doc: dict, key: str, pointer: str, minimum: Optional[int] = None) -> int:
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{pointer}/{key}", "must be an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(f"{pointer}/{key}", f"must be >= {minimum}")
    return value


def _number(value: Any, pointer: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise SchemaError(pointer, "must be a number or a 'p/q' string")
    try:
        number = to_fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(pointer, f"cannot read {value!r} as a rational")
    if number < 0:
        raise SchemaError(pointer, "must be nonnegative")
    return number


def _edges(doc: dict, key: str, n: int, *, required: bool = True) -> tuple[list, list]:
    pointer = f"/{key}"
    items = doc.get(key)
    if items is None and not required:
        return [], []
    if not isinstance(items, list):
        raise SchemaError(pointer, "must be an array of edges")
    pairs, costs = [], []
    seen: dict[tuple, int] = {}
    for i, item in enumerate(items):
        at = f"{pointer}/{i}"
        if not isinstance(item, dict):
            raise SchemaError(at, "edge must be an object {u, v, cost?}")
        u = _int(item, "u", at, 0)
        v = _int(item, "v", at, 0)
        if u == v:
            raise SchemaError(at, f"self-loop on node {u}")
        if u >= n or v >= n:
            raise SchemaError(at, f"endpoint outside 0..{n - 1}")
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise SchemaError(at, f"parallel to the edge at {pointer}/{seen[pair]}")
        seen[pair] = i
        pairs.append(pair)
        costs.append(_number(item.get("cost", 1), f"{at}/cost"))
    return pairs, costs


def _graph(doc: dict) -> Graph:
    n = _int(doc, "n", "", 0)
    pairs, costs = _edges(doc, "edges", n)
    profits = doc.get("profits")
    if profits is not None:
        if not isinstance(profits, list) or len(profits) != n:
            raise SchemaError("/profits", f"must list one profit per node ({n})")
        profits = [_number(p, f"/profits/{i}") for i, p in enumerate(profits)]
    return Graph.build(n, pairs, costs, profits)


def _bta(doc: dict) -> AugmentationInstance:
    n = _int(doc, "n", "", 1)
    pairs, costs = _edges(doc, "tree_edges", n)
    try:
        tree = Tree.from_pairs(n, pairs, costs)
    except NotATree as e:
        raise SchemaError("/tree_edges", str(e))
    link_pairs, link_costs = _edges(doc, "candidate_edges", n)
    return AugmentationInstance(tree, EdgeSet.build(link_pairs, tree=tree, costs=link_costs))


def _family(doc: dict) -> CrossingInstance:
    n = _int(doc, "groundset_n", "", 1)
    members = doc.get("members")
    if not isinstance(members, list):
        raise SchemaError("/members", "must be an array of node arrays")
    sets, seen = [], {}
    for i, member in enumerate(members):
        at = f"/members/{i}"
        if not isinstance(member, list) or not member:
            raise SchemaError(at, "member must be a nonempty node array")
        for j, v in enumerate(member):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise SchemaError(f"{at}/{j}", f"node must be an integer in 0..{n - 1}")
        key = frozenset(member)
        if len(key) != len(member):
            raise SchemaError(at, "member lists a node twice")
        if len(key) == n:
            raise SchemaError(at, "member equals the groundset (proper subsets only)")
        if key in seen:
            raise SchemaError(at, f"duplicates the member at /members/{seen[key]}")
        seen[key] = i
        sets.append(sorted(key))
    pairs, costs = _edges(doc, "candidate_edges", n, required=False)
    return CrossingInstance(SetFamily.from_sets(n, sets), EdgeSet.build(pairs, n=n, costs=costs))


def _quota(doc: dict) -> QuotaProblem:
    graph = _graph(doc)
    mode = doc.get("mode")
    if mode not in TARGET_KEYS:
        raise SchemaError("/mode", f"must be one of {sorted(TARGET_KEYS)}")
    key = TARGET_KEYS[mode]
    if key not in doc:
        raise SchemaError(f"/{key}", f"{mode} instances need {key}")
    target = _int(doc, key, "") if mode == "k_subgraph" else _number(doc[key], f"/{key}")
    root = doc.get("root")
    if root is not None:
        root = _int(doc, "root", "", 0)
        if root >= graph.n:
            raise SchemaError("/root", f"root outside 0..{graph.n - 1}")
    return QuotaProblem(graph, FamilyMode(mode), to_fraction(target), root)


_PARSERS = {"graph": _graph, "bta": _bta, "family": _family, "quota": _quota}


def parse_document(doc: Any) -> InstanceFile:
    if not isinstance(doc, dict):
        raise SchemaError("", "instance must be a JSON object")
    version = doc.get("format_version")
    if version != config.FORMAT_VERSION:
        raise VersionMismatch(version, config.FORMAT_VERSION)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError("/kind", f"must be one of {list(KINDS)}")
    seed = doc.get("seed")
    if seed is not None:
        seed = _int(doc, "seed", "")
    try:
        payload = _PARSERS[kind](doc)
    except SchemaError:
        raise
    except BiconnError as e:
        raise SchemaError("", str(e))
    return InstanceFile(kind, payload, seed, doc)


def parse_instance(source: Union[str, Path, bytes]) -> InstanceFile:
    """Read an InstanceFile from a path or from raw JSON bytes."""
    raw = source if isinstance(source, bytes) else Path(source).read_bytes()
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise SchemaError("", f"not valid JSON: {e}")
    return parse_document(doc)


# ---------------------------------------------------------------------------
# Writing instances
# ---------------------------------------------------------------------------

def _num(value: Fraction) -> Union[int, str]:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else frac_str(value)


def _edge_docs(items) -> list[dict]:
    return [{"u": x.u, "v": x.v, "cost": _num(x.cost)} for x in items]


def _header(kind: str, seed: Optional[int]) -> dict:
    doc = {"format_version": config.FORMAT_VERSION, "kind": kind}
    if seed is not None:
        doc["seed"] = seed
    return doc


def graph_document(G: Graph, seed: Optional[int] = None, kind: str = "graph") -> dict:
    doc = {**_header(kind, seed), "n": G.n, "edges": _edge_docs(G.edges)}
    if G.profits is not None:
        doc["profits"] = [_num(p) for p in G.profits]
    return doc


def bta_document(T: Tree, E: EdgeSet, seed: Optional[int] = None) -> dict:
    return {
        **_header("bta", seed),
        "n": T.n,
        "tree_edges": _edge_docs(T.edges),
        "candidate_edges": _edge_docs(E),
    }


def family_document(F: SetFamily, E: Optional[EdgeSet] = None, seed: Optional[int] = None) -> dict:
    doc = {**_header("family", seed), "groundset_n": F.n, "members": [list(m) for m in F.as_sets()]}
    if E is not None:
        doc["candidate_edges"] = _edge_docs(E)
    return doc


def quota_document(problem: QuotaProblem, seed: Optional[int] = None) -> dict:
    doc = graph_document(problem.graph, seed, kind="quota")
    doc["mode"] = problem.mode.value
    doc[TARGET_KEYS[problem.mode.value]] = _num(problem.target)
    if problem.root is not None:
        doc["root"] = problem.root
    return doc


def write_document(path: Union[str, Path], doc: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(doc), encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def report_document(report: SolutionReport, input_digest: str) -> dict:
    doc = {
        "format_version": config.FORMAT_VERSION,
        "problem": report.problem.value,
        "input_digest": input_digest,
        "seed": report.seed,
        "config": jsonable(report.config),
        "feasible": report.feasible,
        "solution": {
            "links": jsonable(report.links),
            "edges": jsonable(report.edges),
            "nodes": list(report.nodes),
        },
        "objective": frac_str(report.objective),
        "cost": frac_str(report.cost),
        "lifted_cost": frac_str(report.lifted_cost),
        "profit": frac_str(report.profit),
        "sigma_max": frac_str(report.sigma_max),
        "reference_bound_tag": report.reference_bound_tag,
        "per_sample": jsonable(report.per_sample),
        "diagnostics": jsonable(report.diagnostics),
        "timings_ms": None if report.wall_ms is None else {"total": report.wall_ms},
    }
    if report.exact_opt is not None:
        doc["exact_opt"] = frac_str(report.exact_opt)
        doc["ratio"] = frac_str(report.ratio)
    return doc


def _fraction(value: Optional[str]) -> Optional[Fraction]:
    return None if value is None else Fraction(value)


def report_from_document(doc: dict) -> SolutionReport:
    try:
        solution = doc["solution"]
        report = SolutionReport(
            problem=Problem(doc["problem"]),
            feasible=bool(doc["feasible"]),
            links=tuple(tuple(p) for p in solution["links"]),
            nodes=tuple(solution["nodes"]),
            edges=tuple(tuple(p) for p in solution["edges"]),
            objective=Fraction(doc["objective"]),
            cost=Fraction(doc["cost"]),
            lifted_cost=Fraction(doc["lifted_cost"]),
            profit=_fraction(doc.get("profit")),
            sigma_max=_fraction(doc.get("sigma_max")),
            seed=doc.get("seed", 0),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("", f"malformed report: {e}")
    if doc.get("exact_opt") is not None:
        report = replace(report, exact_opt=Fraction(doc["exact_opt"]), ratio=_fraction(doc.get("ratio")))
    return report


def write_report(path: Union[str, Path], report: SolutionReport, input_digest: str) -> Path:
    return write_document(path, report_document(report, input_digest))


def read_report(path: Union[str, Path]) -> tuple[SolutionReport, dict]:
    try:
        doc = json.loads(Path(path).read_bytes())
    except json.JSONDecodeError as e:
        raise SchemaError("", f"not valid JSON: {e}")
    return report_from_document(doc), doc
