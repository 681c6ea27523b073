"""Bundled demo corpora: two journals covering the e-mobility controversy.

The original article data is not redistributable, so the corpora shipped in
``fixtures/`` are deterministic reconstructions from the journals' published
per-convention occurrence counts, pinned further by each journal's level-1
implication base and the positivity-bias implications. Regenerate with
``cartograph fixtures --out fixtures``.
"""

from __future__ import annotations

from .corpus import (
    AnnotationCorpus,
    ConventionTargets,
    FixtureConstraint,
    MarginalSpec,
    reconstruct_fixture,
    write_annotations,
)
from .implications import Implication, ImplicationSet, enumerate_closed
from .scaling import attribute_name

__all__ = [
    "JOURNALS",
    "build_fixture_corpus",
    "fixture_csv",
    "journal_base",
    "journal_spec",
]

JOURNALS = ("j1", "j2")

# Per-convention occurrence counts for the two journals:
# (referenced, positive, justification, topic, critical, internal, external).
_COUNTS = {
    "j1": {
        "market": ConventionTargets(9, 9, 9, 1, 2, 2, 1),
        "green": ConventionTargets(7, 7, 7, 4, 2, 2, 1),
        "state": ConventionTargets(8, 8, 8, 3, 2, 1, 1),
        "industry": ConventionTargets(12, 11, 11, 2, 3, 3, 3),
    },
    "j2": {
        "market": ConventionTargets(13, 13, 13, 8, 9, 8, 8),
        "green": ConventionTargets(12, 12, 7, 7, 9, 8, 8),
        "state": ConventionTargets(12, 10, 9, 1, 9, 8, 8),
        "industry": ConventionTargets(13, 13, 12, 9, 7, 7, 7),
    },
}

_ARTICLE_COUNTS = {"j1": 12, "j2": 14}

_L1_UNIVERSE = tuple(attribute_name(c) for c in ("market", "green", "state", "industry"))

_BASES = {
    "j1": (
        Implication.of((), ["Industry"]),
        Implication.of(["State", "Industry"], ["Market"]),
        Implication.of(["Market", "Green", "Industry"], ["State"]),
    ),
    "j2": (
        Implication.of(["Green"], ["Market", "State"]),
        Implication.of(["State"], ["Market", "Green"]),
    ),
}

# Positivity bias: critique of a convention only ever appears alongside a
# positive reference -- except where a journal's counts rule it out (industry
# in j1; state in j2, whose referenced count exceeds its positive count).
_BIAS = {
    "j1": (("market", True), ("green", True), ("state", True), ("industry", False)),
    "j2": (("market", True), ("green", True), ("industry", True)),
}


def journal_base(journal: str) -> ImplicationSet:
    """The level-1 canonical base the fixture corpus is pinned to."""
    if journal not in JOURNALS:
        raise ValueError(f"unknown journal {journal!r}")
    return ImplicationSet(_BASES[journal], _L1_UNIVERSE)


def _exact_base_constraints(base: ImplicationSet) -> list[FixtureConstraint]:
    """Constraints forcing the level-1 canonical base to equal ``base``:
    the base implications must hold, and every set they close must actually
    appear as an intent (encoded as must-fail implications)."""
    out = [FixtureConstraint(imp, True) for imp in base.implications]
    universe = set(base.universe)
    for closed in enumerate_closed(base):
        for attribute in sorted(universe - closed):
            out.append(FixtureConstraint(Implication(frozenset(closed), frozenset({attribute})), False))
    return out


def _bias_constraints(journal: str) -> list[FixtureConstraint]:
    out = []
    for convention, must_hold in _BIAS[journal]:
        imp = Implication.of(
            [attribute_name(convention, " -")], [attribute_name(convention, " +")]
        )
        out.append(FixtureConstraint(imp, must_hold))
    return out


def journal_spec(journal: str) -> MarginalSpec:
    if journal not in JOURNALS:
        raise ValueError(f"unknown journal {journal!r}")
    constraints = tuple(
        _exact_base_constraints(journal_base(journal)) + _bias_constraints(journal)
    )
    return MarginalSpec(journal, _ARTICLE_COUNTS[journal], dict(_COUNTS[journal]), constraints)


def build_fixture_corpus(journal: str) -> AnnotationCorpus:
    return reconstruct_fixture(journal_spec(journal))


def fixture_csv(journal: str) -> str:
    return write_annotations(build_fixture_corpus(journal))
