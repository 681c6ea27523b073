"""Deterministic layered diagram layout and the self-contained map document.

Ranks come from the longest cover path below the top, so every edge strictly
increases rank. Horizontal positions are settled by ten fixed barycenter
sweeps (down, then up, alternating) over the rank sequence, initialized by
lectic concept order; positions within a rank are then spread evenly over
(0, 1). The exported JSON document carries everything the UI needs: nodes with
reduced labels, edges, metrics, and the factorization summary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .factors import factor_support, greedy_factorize
from .lattice import order_dimension, width_depth
from .navigation import AnnotatedLattice

__all__ = [
    "LayoutedMap",
    "MapFactor",
    "MapMeta",
    "MapNode",
    "MapDocumentError",
    "export_map",
    "import_map",
    "layered_layout",
]

BARYCENTER_SWEEPS = 10


class MapDocumentError(ValueError):
    """Malformed map document."""


@dataclass(frozen=True)
class MapNode:
    id: int
    intent: tuple[str, ...]
    extent: tuple[str, ...]
    own_attributes: tuple[str, ...]
    own_objects: tuple[str, ...]
    rank: int
    x: float


@dataclass(frozen=True)
class MapFactor:
    sequence: tuple[tuple[str, ...], ...]
    covered: int
    total: int


@dataclass(frozen=True)
class MapMeta:
    journal: str
    level: int
    conventions: tuple[str, ...]
    metrics: dict[str, object]


@dataclass(frozen=True)
class LayoutedMap:
    meta: MapMeta
    nodes: tuple[MapNode, ...]
    edges: tuple[tuple[int, int], ...]
    factors: tuple[MapFactor, ...]


def _ranks(lattice) -> list[int]:
    n = len(lattice.concepts)
    rank = [0] * n
    order = sorted(range(n), key=lambda i: -lattice._extent_masks[i].bit_count())
    lowers = {i: [l for u, l in lattice.covers if u == i] for i in range(n)}
    for upper in order:
        for lower in lowers[upper]:
            rank[lower] = max(rank[lower], rank[upper] + 1)
    return rank


def _positions(lattice, rank: list[int]) -> list[float]:
    n = len(lattice.concepts)
    max_rank = max(rank) if n else 0
    layers: list[list[int]] = [[] for _ in range(max_rank + 1)]
    for cid in range(n):  # lectic id order initializes each layer
        layers[rank[cid]].append(cid)

    uppers: dict[int, list[int]] = {i: [] for i in range(n)}
    lowers: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, l in lattice.covers:
        uppers[l].append(u)
        lowers[u].append(l)

    x = [0.0] * n

    def respace(layer: list[int]) -> None:
        for pos, cid in enumerate(layer):
            x[cid] = (pos + 1) / (len(layer) + 1)

    for layer in layers:
        respace(layer)
    for sweep in range(BARYCENTER_SWEEPS):
        downwards = sweep % 2 == 0
        sequence = range(1, max_rank + 1) if downwards else range(max_rank - 1, -1, -1)
        for r in sequence:
            layer = layers[r]
            neighbors = uppers if downwards else lowers

            def barycenter(cid: int) -> float:
                around = neighbors[cid]
                if not around:
                    return x[cid]
                return sum(x[o] for o in around) / len(around)

            layer.sort(key=barycenter)  # stable: ties keep the current order
            respace(layer)
    return x


def layered_layout(
    annotated: AnnotatedLattice,
    journal: str = "",
    level: int = 0,
    conventions: tuple[str, ...] = (),
    dimension_budget: int = 500_000,
    max_factors: int | None = None,
) -> LayoutedMap:
    """Lay out an annotated lattice and bundle metrics plus factors."""
    lattice = annotated.lattice
    context = lattice.context
    rank = _ranks(lattice)
    x = _positions(lattice, rank)

    nodes = []
    attr_order = {m: j for j, m in enumerate(context.attributes)}
    obj_order = {g: i for i, g in enumerate(context.objects)}
    for concept in lattice.concepts:
        own_attributes = tuple(
            m for m in context.attributes if lattice.mu[m] == concept.id
        )
        own_objects = tuple(
            g for g in context.objects if lattice.gamma[g] == concept.id
        )
        nodes.append(
            MapNode(
                concept.id,
                tuple(sorted(concept.intent, key=attr_order.__getitem__)),
                tuple(sorted(concept.extent, key=obj_order.__getitem__)),
                own_attributes,
                own_objects,
                rank[concept.id],
                x[concept.id],
            )
        )

    width, depth = width_depth(lattice)
    dimension = order_dimension(lattice, budget=dimension_budget)
    has_area = bool(context.objects) and bool(context.attributes)
    metrics: dict[str, object] = {
        "objects": len(context.objects),
        "attributes": len(context.attributes),
        "incidence": context.incidence_count,
        "density": context.density() if has_area else 0.0,
        "concepts": len(lattice.concepts),
        "width": width,
        "depth": depth,
        "dimension": dimension.value if dimension.exact else str(dimension),
    }

    factorization = greedy_factorize(context)
    factors = []
    for factor in factorization.factors[: max_factors if max_factors is not None else None]:
        support = factor_support(factor, context)
        factors.append(MapFactor(factor.sequence, support.covered, support.total))

    meta = MapMeta(journal, level, tuple(conventions), metrics)
    return LayoutedMap(meta, tuple(nodes), lattice.covers, tuple(factors))


def export_map(layouted: LayoutedMap) -> str:
    """Serialize to the map-document JSON schema (stable key order)."""
    doc = {
        "meta": {
            "journal": layouted.meta.journal,
            "level": layouted.meta.level,
            "conventions": list(layouted.meta.conventions),
            "metrics": {
                key: layouted.meta.metrics[key]
                for key in (
                    "objects",
                    "attributes",
                    "incidence",
                    "density",
                    "concepts",
                    "width",
                    "depth",
                    "dimension",
                )
            },
        },
        "nodes": [
            {
                "id": node.id,
                "intent": list(node.intent),
                "extent": list(node.extent),
                "ownAttributes": list(node.own_attributes),
                "ownObjects": list(node.own_objects),
                "rank": node.rank,
                "x": node.x,
            }
            for node in layouted.nodes
        ],
        "edges": [{"upper": u, "lower": l} for u, l in layouted.edges],
        "factors": [
            {
                "sequence": [list(block) for block in factor.sequence],
                "support": {"covered": factor.covered, "total": factor.total},
            }
            for factor in layouted.factors
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def import_map(text: str) -> LayoutedMap:
    """Parse a map document back into a LayoutedMap (inverse of export)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapDocumentError(f"not valid JSON: {exc}") from exc
    try:
        meta = MapMeta(
            doc["meta"]["journal"],
            doc["meta"]["level"],
            tuple(doc["meta"]["conventions"]),
            dict(doc["meta"]["metrics"]),
        )
        nodes = tuple(
            MapNode(
                node["id"],
                tuple(node["intent"]),
                tuple(node["extent"]),
                tuple(node["ownAttributes"]),
                tuple(node["ownObjects"]),
                node["rank"],
                node["x"],
            )
            for node in doc["nodes"]
        )
        edges = tuple((edge["upper"], edge["lower"]) for edge in doc["edges"])
        factors = tuple(
            MapFactor(
                tuple(tuple(block) for block in factor["sequence"]),
                factor["support"]["covered"],
                factor["support"]["total"],
            )
            for factor in doc["factors"]
        )
    except (KeyError, TypeError) as exc:
        raise MapDocumentError(f"missing or malformed field: {exc}") from exc
    return LayoutedMap(meta, nodes, edges, factors)
