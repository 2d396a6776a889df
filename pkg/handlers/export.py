"""
export-dot — Graphviz view of an instance.

  graph / quota files   the graph itself
  bta files             --view FV | FET | shortcut_FV | shortcut_FET |
                        reduced_FV | reduced_FET incidence graph, or the
                        union T ∪ E with --view union
  family files          separability graph of the candidate edges

Terminals are boxes, everything else ellipses.
"""

import argparse
import logging
from pathlib import Path
from typing import Optional, Union

from crossing import SeparabilityGraph, build_separability_graph
from errors import BadParams
from graph_core import Graph, union_graph
from incidence import IncidenceGraph, IncidenceKind, build_incidence
from instances import parse_instance
from middleware import ExitCode, emit, guarded
from utils import render_dot

logger = logging.getLogger(__name__)

Exportable = Union[Graph, IncidenceGraph, SeparabilityGraph]


def export_dot(obj: Exportable, path: Optional[Union[str, Path]] = None, name: str = "G") -> bytes:
    if isinstance(obj, Graph):
        text = render_dot(obj.nx, name=name)
    else:
        text = render_dot(obj.graph, obj.terminals, name=name)
    data = text.encode("utf-8")
    if path is not None:
        Path(path).write_bytes(data)
    return data


def _view(inst, view: str) -> Exportable:
    payload = inst.payload
    if inst.kind == "graph":
        return payload
    if inst.kind == "quota":
        return payload.graph
    if inst.kind == "family":
        return build_separability_graph(payload.family, payload.candidates)
    if view == "union":
        return union_graph(payload.tree, payload.links)
    try:
        kind = IncidenceKind(view)
    except ValueError:
        raise BadParams(f"unknown view {view!r} for a bta instance")
    return build_incidence(payload.tree, payload.links, kind)


@guarded
async def cmd_export(args: argparse.Namespace) -> int:
    inst = parse_instance(args.input)
    obj = _view(inst, args.view)
    data = export_dot(obj, name=Path(args.input).stem)
    emit(data.decode("utf-8"), args.output)
    logger.info("exported %s view of %s", args.view if inst.kind == "bta" else inst.kind, args.input)
    return ExitCode.OK


def register(subparsers) -> None:
    p = subparsers.add_parser("export-dot", help="write a DOT view of an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--view", default=IncidenceKind.REDUCED_FET.value,
                   choices=[k.value for k in IncidenceKind] + ["union"])
    p.add_argument("--output", help="DOT file; stdout when omitted")
    p.set_defaults(handler=cmd_export)
