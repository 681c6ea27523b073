"""Read-only HTTP service over an immutable in-memory snapshot.

The snapshot is built once at startup for all three scale levels of one
corpus; every endpoint is a pure function of (snapshot, request), so repeated
identical requests return byte-identical bodies. Navigation state lives in
the client.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from .corpus import AnnotationCorpus
from .lattice import ConceptLattice
from .mapdoc import LayoutedMap, export_map, layered_layout
from .navigation import AnnotatedLattice, MoveResult, MOVE_KINDS
from .scaling import apply_scale

__all__ = ["LevelSnapshot", "ServiceSnapshot", "build_snapshot", "create_app"]


@dataclass(frozen=True)
class LevelSnapshot:
    level: int
    annotated: AnnotatedLattice
    layouted: LayoutedMap
    map_text: str


@dataclass(frozen=True)
class ServiceSnapshot:
    journal: str
    conventions: tuple[str, ...]
    default_level: int
    levels: dict[int, LevelSnapshot]


def build_snapshot(
    corpus: AnnotationCorpus,
    conventions: tuple[str, ...],
    default_level: int = 1,
    max_factors: int | None = None,
) -> ServiceSnapshot:
    levels = {}
    for level in (1, 2, 3):
        context = apply_scale(corpus, conventions, level)
        annotated = AnnotatedLattice.from_lattice(ConceptLattice.from_context(context))
        layouted = layered_layout(
            annotated,
            journal=corpus.journal_id,
            level=level,
            conventions=conventions,
            max_factors=max_factors,
        )
        levels[level] = LevelSnapshot(level, annotated, layouted, export_map(layouted))
    return ServiceSnapshot(corpus.journal_id, conventions, default_level, levels)


def _json_bytes(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=_json_bytes(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, message: str) -> Response:
    return _json_response({"error": message}, status_code)


def _node_payload(snapshot: LevelSnapshot, concept_id: int) -> dict:
    node = snapshot.layouted.nodes[concept_id]
    return {
        "id": node.id,
        "intent": list(node.intent),
        "extent": list(node.extent),
        "ownAttributes": list(node.own_attributes),
        "ownObjects": list(node.own_objects),
        "rank": node.rank,
        "x": node.x,
    }


def _move_payload(kind: str, result: MoveResult) -> dict:
    return {
        "move": kind,
        "entries": [
            {
                "article": entry.article_id,
                "concept": entry.concept_id,
                "rationale": entry.rationale,
            }
            for entry in result.entries
        ],
        "notice": result.notice,
    }


def create_app(snapshot: ServiceSnapshot, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="cartograph", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError) -> Response:
        return _error(400, "malformed request")

    def pick_level(level: str | None) -> LevelSnapshot | None:
        if level is None:
            return snapshot.levels[snapshot.default_level]
        if level not in {"1", "2", "3"}:
            return None
        return snapshot.levels[int(level)]

    def parse_concept(snap: LevelSnapshot, raw: str) -> int | None:
        try:
            concept_id = int(raw)
        except ValueError:
            return None
        if not 0 <= concept_id < len(snap.layouted.nodes):
            return None
        return concept_id

    @app.get("/api/map")
    def get_map(level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        return Response(content=snap.map_text, media_type="application/json")

    @app.get("/api/metrics")
    def get_metrics(level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        return _json_response(snap.layouted.meta.metrics)

    @app.get("/api/factors")
    def get_factors(level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        payload = [
            {
                "sequence": [list(block) for block in factor.sequence],
                "support": {"covered": factor.covered, "total": factor.total},
            }
            for factor in snap.layouted.factors
        ]
        return _json_response(payload)

    @app.get("/api/concepts/{concept_id}")
    def get_concept(concept_id: str, level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        parsed = parse_concept(snap, concept_id)
        if parsed is None:
            return _error(404, f"unknown concept {concept_id!r}")
        return _json_response(_node_payload(snap, parsed))

    @app.get("/api/articles/{article_id}")
    def get_article(article_id: str, level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        annotated = snap.annotated
        if article_id not in annotated.lattice.gamma:
            return _error(404, f"unknown article {article_id!r}")
        info = annotated.articles[article_id]
        return _json_response(
            {
                "id": info.article_id,
                "title": info.title,
                "url": info.url,
                "concept": annotated.locate_article(article_id),
            }
        )

    @app.get("/api/navigate/{concept_id}")
    def navigate(concept_id: str, move: str | None = None, level: str | None = None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        if move not in MOVE_KINDS:
            return _error(400, f"move must be one of {', '.join(MOVE_KINDS)}")
        parsed = parse_concept(snap, concept_id)
        if parsed is None:
            return _error(404, f"unknown concept {concept_id!r}")
        return _json_response(_move_payload(move, snap.annotated.move(parsed, move)))

    def lattice_pair(kind: str, a: str | None, b: str | None, level: str | None) -> Response:
        snap = pick_level(level)
        if snap is None:
            return _error(400, "level must be 1, 2 or 3")
        if a is None or b is None:
            return _error(400, "query parameters a and b are required")
        left = parse_concept(snap, a)
        right = parse_concept(snap, b)
        if left is None or right is None:
            return _error(404, "unknown concept id")
        lattice = snap.annotated.lattice
        result = lattice.meet(left, right) if kind == "meet" else lattice.join(left, right)
        return _json_response(_node_payload(snap, result))

    @app.get("/api/meet")
    def get_meet(a: str | None = None, b: str | None = None, level: str | None = None) -> Response:
        return lattice_pair("meet", a, b, level)

    @app.get("/api/join")
    def get_join(a: str | None = None, b: str | None = None, level: str | None = None) -> Response:
        return lattice_pair("join", a, b, level)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
