import hashlib
import json
import random
from fractions import Fraction
from typing import Any, Hashable, Iterable, Optional, Union

import networkx as nx

Number = Union[int, Fraction, str]


def derive_rng(seed: int, *labels: Any) -> random.Random:
    """Independent PRNG stream for (seed, labels); stable across processes."""
    material = json.dumps([seed, *labels], sort_keys=True, default=str)
    digest = hashlib.sha256(material.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def node_key(node: Hashable) -> tuple:
    """Total order over plain ints and the tagged node classes."""
    rank = getattr(node, "rank", None)
    if rank is None:
        return (-1, node)
    return (rank, node.index)


def sorted_nodes(nodes: Iterable[Hashable]) -> list:
    return sorted(nodes, key=node_key)


def to_fraction(value: Number) -> Fraction:
    if isinstance(value, float):
        # floats only reach here from user JSON; keep their exact decimal text
        return Fraction(repr(value))
    return Fraction(value)


def frac_str(value: Optional[Fraction]) -> Optional[str]:
    """Render a rational as "p" or "p/q" (None passes through)."""
    if value is None:
        return None
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(payload: Any) -> str:
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(raw.encode()).hexdigest()


def dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def node_label(node: Hashable) -> str:
    label = getattr(node, "label", None)
    return label if label is not None else str(node)


def render_dot(graph: nx.Graph, terminals: Iterable[Hashable] = (), name: str = "G") -> str:
    """
    DOT text for an undirected graph.

    Terminals are drawn as boxes, everything else as ellipses. Nodes and
    edges are emitted in node_key order so equal graphs give equal bytes.
    """
    terminal_set = set(terminals)
    lines = [f'graph "{dot_escape(name)}" {{']
    for node in sorted_nodes(graph.nodes):
        shape = "box" if node in terminal_set else "ellipse"
        lines.append(f'  "{dot_escape(node_label(node))}" [shape={shape}];')

    edges = []
    for u, v in graph.edges:
        a, b = sorted((u, v), key=node_key)
        edges.append((node_key(a), node_key(b), a, b))
    for _, _, a, b in sorted(edges, key=lambda item: (item[0], item[1])):
        lines.append(f'  "{dot_escape(node_label(a))}" -- "{dot_escape(node_label(b))}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
