"""Hasse-diagram export of the refinement and dominance orders."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .partitions import (
    DEFAULT_LIMIT,
    Partition,
    dominance_cover_pairs,
    enumerate_partitions,
    partition_index,
    refinement_covers,
)

ORDER_KINDS = ("refinement", "dominance")
FORMATS = ("dot", "json")


@dataclass(frozen=True)
class HasseGraph:
    nodes: tuple[Partition, ...]
    edges: tuple[tuple[int, int], ...]
    order_kind: str


def hasse_graph(n: int, order_kind: str, limit: int = DEFAULT_LIMIT) -> HasseGraph:
    if order_kind not in ORDER_KINDS:
        raise ValueError(f"unknown order {order_kind!r}; expected one of {ORDER_KINDS}")
    nodes = tuple(enumerate_partitions(n, limit))
    idx = partition_index(n)
    pairs = refinement_covers(n, limit) if order_kind == "refinement" else dominance_cover_pairs(n, limit)
    edges = tuple((idx[a], idx[b]) for a, b in pairs)
    return HasseGraph(nodes, edges, order_kind)


def _node_record(p: Partition) -> dict:
    return {"parts": list(p.parts), "h": p.height, "w": p.width, "r": p.rank, "s2": p.s2}


def export_hasse(n: int, order_kind: str, fmt: str = "json", limit: int = DEFAULT_LIMIT) -> str:
    """Render the covering graph as a DOT or JSON document.

    Edges point from the finer (dominated) partition to the coarser
    (dominating) one.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
    g = hasse_graph(n, order_kind, limit)
    if fmt == "json":
        doc = {
            "n": n,
            "order": order_kind,
            "nodes": [_node_record(p) for p in g.nodes],
            "edges": [list(e) for e in g.edges],
        }
        return json.dumps(doc, indent=1) + "\n"

    lines = [f"digraph {order_kind}_{n} {{", "  rankdir=BT;"]
    for i, p in enumerate(g.nodes):
        lines.append(
            f'  n{i} [label="{p.label}", h={p.height}, w={p.width}, r={p.rank}, s2={p.s2}];'
        )
    style = "" if order_kind == "refinement" else " [style=dashed]"
    for a, b in g.edges:
        lines.append(f"  n{a} -> n{b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_hasse_json(text: str) -> HasseGraph:
    doc = json.loads(text)
    nodes = tuple(Partition(rec["parts"]) for rec in doc["nodes"])
    edges = tuple((int(a), int(b)) for a, b in doc["edges"])
    return HasseGraph(nodes, edges, doc["order"])
