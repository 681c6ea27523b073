from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cartograph.context import FormalContext
from cartograph.corpus import ArticleAnnotation, AnnotationCorpus
from cartograph.fixtures import build_fixture_corpus

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def j1_corpus() -> AnnotationCorpus:
    return build_fixture_corpus("j1")


@pytest.fixture(scope="session")
def j2_corpus() -> AnnotationCorpus:
    return build_fixture_corpus("j2")


def make_context(rows: dict[str, str], attributes: str) -> FormalContext:
    """Tiny-context helper: rows maps object label to a string of attribute
    characters, attributes fixes the column order."""
    attrs = tuple(attributes)
    return FormalContext.from_pairs(
        tuple(rows),
        attrs,
        [(g, m) for g, row in rows.items() for m in row],
    )


def random_context(rng: random.Random, n_objects: int, n_attributes: int, density: float = 0.5) -> FormalContext:
    objects = tuple(f"g{i}" for i in range(n_objects))
    attributes = tuple(f"m{j}" for j in range(n_attributes))
    rows = tuple(
        sum(1 << j for j in range(n_attributes) if rng.random() < density)
        for _ in range(n_objects)
    )
    return FormalContext(objects, attributes, rows)


def random_corpus(rng: random.Random, journal: str, n_articles: int) -> AnnotationCorpus:
    from cartograph.corpus import CONVENTIONS, MARKERS

    annotations = []
    for i in range(n_articles):
        any_marked = False
        for convention in CONVENTIONS:
            markers = frozenset(m for m in MARKERS if rng.random() < 0.35)
            if markers:
                any_marked = True
                annotations.append(
                    ArticleAnnotation(f"{journal}a{i + 1:02d}", journal, convention, markers)
                )
        if not any_marked:
            annotations.append(
                ArticleAnnotation(f"{journal}a{i + 1:02d}", journal, "market", frozenset({"R"}))
            )
    return AnnotationCorpus(journal, tuple(annotations))
