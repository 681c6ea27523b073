"""Annotation corpora: the raw per-article convention markers.

A corpus stores, per article and convention, the non-empty set of markers
{R, T, I, E} assigned by the annotators; an absent entry means the convention
is not referenced at all. Corpora arrive as long-format CSV (one marker per
row) and can also be reconstructed from published per-convention counts plus
implication-style constraints, which is how the bundled fixtures are built.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .implications import Implication

__all__ = [
    "ArticleAnnotation",
    "AnnotationCorpus",
    "AnnotationsFormatError",
    "ConventionTargets",
    "CorpusError",
    "FixtureConstraint",
    "InfeasibleSpecError",
    "MarginalSpec",
    "MARKERS",
    "CONVENTIONS",
    "merge_corpora",
    "normalize_convention",
    "parse_annotations",
    "reconstruct_fixture",
    "write_annotations",
]

MARKERS = ("R", "T", "I", "E")
CONVENTIONS = ("market", "green", "state", "industry")
CSV_HEADER = "article_id,journal_id,convention,reference"


class CorpusError(ValueError):
    """Invalid corpus data."""


class AnnotationsFormatError(CorpusError):
    """Malformed annotation CSV."""


class InfeasibleSpecError(CorpusError):
    """No corpus can satisfy the requested marginals and constraints."""


def normalize_convention(convention: str) -> str:
    c = convention.strip().lower()
    if c in CONVENTIONS:
        return c
    for full in CONVENTIONS:
        if c == full[0]:
            return full
    raise CorpusError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class ArticleAnnotation:
    """Markers assigned to one article for one convention."""

    article_id: str
    journal_id: str
    convention: str
    markers: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "convention", normalize_convention(self.convention))
        if not self.markers:
            raise CorpusError(
                f"annotation ({self.article_id}, {self.convention}) has no markers"
            )
        unknown = self.markers - set(MARKERS)
        if unknown:
            raise CorpusError(f"unknown markers {sorted(unknown)}")


@dataclass(frozen=True)
class AnnotationCorpus:
    """All annotations of one (or one merged) journal.

    Articles keep their first-appearance order; annotations are normalized to
    article-major order with conventions in canonical order, so corpora that
    contain the same facts compare equal.
    """

    journal_id: str
    annotations: tuple[ArticleAnnotation, ...]
    articles: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        order: list[str] = []
        journal_of: dict[str, str] = {}
        merged: dict[tuple[str, str], frozenset[str]] = {}
        for ann in self.annotations:
            if ann.article_id not in journal_of:
                order.append(ann.article_id)
                journal_of[ann.article_id] = ann.journal_id
            elif journal_of[ann.article_id] != ann.journal_id:
                raise CorpusError(
                    f"article {ann.article_id!r} is listed under two journals"
                )
            key = (ann.article_id, ann.convention)
            merged[key] = merged.get(key, frozenset()) | ann.markers
        normalized = tuple(
            ArticleAnnotation(a, journal_of[a], c, merged[(a, c)])
            for a in order
            for c in CONVENTIONS
            if (a, c) in merged
        )
        object.__setattr__(self, "annotations", normalized)
        object.__setattr__(self, "articles", tuple(order))

    def markers(self, article_id: str, convention: str) -> frozenset[str]:
        convention = normalize_convention(convention)
        for ann in self.annotations:
            if ann.article_id == article_id and ann.convention == convention:
                return ann.markers
        return frozenset()

    def journal_of(self, article_id: str) -> str:
        for ann in self.annotations:
            if ann.article_id == article_id:
                return ann.journal_id
        raise CorpusError(f"unknown article {article_id!r}")


def merge_corpora(corpora: Sequence[AnnotationCorpus], journal_id: str | None = None) -> AnnotationCorpus:
    """Concatenate corpora; article ids must not repeat across inputs."""
    seen: set[str] = set()
    for corpus in corpora:
        overlap = seen & set(corpus.articles)
        if overlap:
            raise CorpusError(f"duplicate article ids across corpora: {sorted(overlap)}")
        seen |= set(corpus.articles)
    annotations = tuple(a for corpus in corpora for a in corpus.annotations)
    if journal_id is None:
        journal_id = "+".join(c.journal_id for c in corpora)
    return AnnotationCorpus(journal_id, annotations)


# -- CSV ingestion -----------------------------------------------------------


def parse_annotations(text: str) -> AnnotationCorpus:
    """Parse long-format annotation CSV (one marker per row).

    Rows for the same (article, convention) pair merge their markers. The
    resulting corpus keeps articles in first-appearance order.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise AnnotationsFormatError("line 1: empty file, expected header") from None
    if [h.strip() for h in header] != CSV_HEADER.split(","):
        raise AnnotationsFormatError(
            f"line 1: header must be exactly {CSV_HEADER!r}"
        )
    annotations = []
    journals = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 4:
            raise AnnotationsFormatError(f"line {lineno}: expected 4 fields, got {len(row)}")
        article_id, journal_id, convention, reference = (f.strip() for f in row)
        if not article_id:
            raise AnnotationsFormatError(f"line {lineno}: empty article_id")
        try:
            convention = normalize_convention(convention)
        except CorpusError:
            raise AnnotationsFormatError(
                f"line {lineno}: unknown convention {convention!r}"
            ) from None
        if reference not in MARKERS:
            raise AnnotationsFormatError(
                f"line {lineno}: unknown reference {reference!r}, expected one of R, T, I, E"
            )
        annotations.append(
            ArticleAnnotation(article_id, journal_id, convention, frozenset({reference}))
        )
        if journal_id not in journals:
            journals.append(journal_id)
    if not annotations:
        raise AnnotationsFormatError("line 2: no annotation rows")
    return AnnotationCorpus("+".join(journals), tuple(annotations))


def write_annotations(corpus: AnnotationCorpus) -> str:
    """Long-format CSV, canonical row order (article, convention, marker)."""
    lines = [CSV_HEADER]
    for ann in corpus.annotations:
        for marker in MARKERS:
            if marker in ann.markers:
                lines.append(f"{ann.article_id},{ann.journal_id},{ann.convention},{marker}")
    return "\n".join(lines) + "\n"


# -- fixture reconstruction ---------------------------------------------------


@dataclass(frozen=True)
class ConventionTargets:
    """Target object counts for the seven derived attributes of one convention."""

    referenced: int  # bare convention
    positive: int  # " +"
    justification: int  # " + R"
    topic: int  # " + T"
    critical: int  # " -"
    internal: int  # " - I"
    external: int  # " - E"


@dataclass(frozen=True)
class FixtureConstraint:
    """An implication over scaled attribute names that must hold (or fail)."""

    implication: Implication
    must_hold: bool


@dataclass(frozen=True)
class MarginalSpec:
    journal_id: str
    article_count: int
    targets: dict[str, ConventionTargets]
    constraints: tuple[FixtureConstraint, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "targets",
            {normalize_convention(c): t for c, t in self.targets.items()},
        )

    def validate(self) -> None:
        if self.article_count < 0:
            raise InfeasibleSpecError("article_count must be non-negative")
        for c, t in self.targets.items():
            checks = [
                (t.justification <= t.positive, f"{c}: count(+R) {t.justification} > count(+) {t.positive}"),
                (t.topic <= t.positive, f"{c}: count(+T) {t.topic} > count(+) {t.positive}"),
                (t.positive <= t.referenced, f"{c}: count(+) {t.positive} > count(C) {t.referenced}"),
                (t.internal <= t.critical, f"{c}: count(-I) {t.internal} > count(-) {t.critical}"),
                (t.external <= t.critical, f"{c}: count(-E) {t.external} > count(-) {t.critical}"),
                (t.critical <= t.referenced, f"{c}: count(-) {t.critical} > count(C) {t.referenced}"),
                (t.positive <= t.justification + t.topic, f"{c}: count(+) {t.positive} exceeds count(+R) + count(+T)"),
                (t.critical <= t.internal + t.external, f"{c}: count(-) {t.critical} exceeds count(-I) + count(-E)"),
                (t.referenced <= t.positive + t.critical, f"{c}: count(C) {t.referenced} exceeds count(+) + count(-)"),
            ]
            for value in (t.referenced, t.positive, t.justification, t.topic, t.critical, t.internal, t.external):
                if value < 0:
                    raise InfeasibleSpecError(f"{c}: negative count {value}")
                if value > self.article_count:
                    raise InfeasibleSpecError(
                        f"{c}: count {value} exceeds article_count {self.article_count}"
                    )
            for ok, message in checks:
                if not ok:
                    raise InfeasibleSpecError(message)


# Search breadth when constraints couple several conventions: how many
# per-convention marker assignments to consider, and how many combinations
# to assemble and check per level-1 solution.
STAGE2_VARIANTS = 32
STAGE2_COMBINATIONS = 4096


def reconstruct_fixture(spec: MarginalSpec) -> AnnotationCorpus:
    """Build a corpus whose scaled context reproduces ``spec`` exactly.

    Two-stage deterministic search. Stage 1 fixes which conventions each
    article references (the level-1 rows) by an integer search over row-type
    multiplicities, preferring solutions that realize as many distinct row
    types as possible and, among those, the lexicographically smallest
    multiplicity vector in canonical row-type order. Stage 2 backtracks over
    per-article marker assignments in canonical order (articles ascending,
    conventions in canonical order, markers in order R, T, I, E); the first
    assignment satisfying all constraints wins. Constraints coupling several
    conventions widen the stage-2 search up to a fixed budget.
    """
    from itertools import islice, product

    from .scaling import attribute_name, scaled_attributes  # cycle guard

    spec.validate()
    conventions = tuple(spec.targets)
    l1_names = {attribute_name(c, ""): i for i, c in enumerate(conventions)}
    all_names = set(scaled_attributes(conventions, 3))

    l1_cons: list[FixtureConstraint] = []
    conv_cons: dict[str, list[FixtureConstraint]] = {c: [] for c in conventions}
    late_cons: list[FixtureConstraint] = []
    for con in spec.constraints:
        attrs = con.implication.premise | con.implication.conclusion
        unknown = attrs - all_names
        if unknown:
            raise InfeasibleSpecError(f"constraint uses unknown attributes {sorted(unknown)}")
        if attrs <= set(l1_names):
            l1_cons.append(con)
            continue
        per = {c for c in conventions if attrs <= set(_convention_names(c))}
        if len(per) == 1:
            conv_cons[per.pop()].append(con)
        else:
            late_cons.append(con)

    variants = STAGE2_VARIANTS if late_cons else 1
    for type_counts in _stage1_solutions(spec, conventions, l1_names, l1_cons):
        rows = _expand_rows(type_counts)
        article_ids = [f"{spec.journal_id}a{k + 1:02d}" for k in range(spec.article_count)]
        annotated_of = [
            [k for k, row in enumerate(rows) if row >> ci & 1]
            for ci in range(len(conventions))
        ]
        per_convention = [
            list(
                islice(
                    _stage2_sequences(
                        spec.targets[convention],
                        len(annotated_of[ci]),
                        spec.article_count,
                        conv_cons[convention],
                    ),
                    variants,
                )
            )
            for ci, convention in enumerate(conventions)
        ]
        if any(not options for options in per_convention):
            continue
        for combo in islice(product(*per_convention), STAGE2_COMBINATIONS):
            markers_of: dict[tuple[int, int], frozenset[str]] = {}
            for ci, patterns in enumerate(combo):
                for k, markers in zip(annotated_of[ci], patterns):
                    markers_of[(k, ci)] = markers
            annotations = tuple(
                ArticleAnnotation(
                    article_ids[k], spec.journal_id, conventions[ci], markers_of[(k, ci)]
                )
                for k in range(spec.article_count)
                for ci in range(len(conventions))
                if (k, ci) in markers_of
            )
            corpus = AnnotationCorpus(spec.journal_id, annotations)
            if late_cons and not _late_constraints_ok(corpus, conventions, late_cons):
                continue
            return corpus
    raise InfeasibleSpecError(
        "no corpus satisfies the marginals together with the extra constraints "
        "within the search budget"
    )


def _convention_names(convention: str) -> tuple[str, ...]:
    from .scaling import SCALE_KINDS, attribute_name

    return tuple(attribute_name(convention, suffix) for suffix, _ in SCALE_KINDS)


def _late_constraints_ok(
    corpus: AnnotationCorpus,
    conventions: tuple[str, ...],
    constraints: list[FixtureConstraint],
) -> bool:
    from .implications import holds
    from .scaling import apply_scale

    context = apply_scale(corpus, conventions, 3)
    return all(holds(c.implication, context) == c.must_hold for c in constraints)


def _expand_rows(type_counts: list[tuple[int, int]]) -> list[int]:
    rows: list[int] = []
    for type_mask, count in type_counts:
        rows.extend([type_mask] * count)
    return rows


def _stage1_solutions(
    spec: MarginalSpec,
    conventions: tuple[str, ...],
    l1_names: dict[str, int],
    constraints: list[FixtureConstraint],
) -> Iterator[list[tuple[int, int]]]:
    """Yield row-type multiplicity solutions in preference order."""
    n = len(conventions)
    counts = [spec.targets[c].referenced for c in conventions]
    if spec.article_count == 0:
        if all(v == 0 for v in counts):
            yield []
        return

    def name_mask(names: Iterable[str]) -> int:
        return sum(1 << l1_names[m] for m in names)

    hold = [
        (name_mask(c.implication.premise), name_mask(c.implication.conclusion))
        for c in constraints
        if c.must_hold
    ]
    fail = [
        (name_mask(c.implication.premise), name_mask(c.implication.conclusion))
        for c in constraints
        if not c.must_hold
    ]

    types = [
        mask
        for mask in sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), _bit_tuple(m)))
        if all(not (p & mask == p) or (q & mask == q) for p, q in hold)
    ]
    # A must-fail implication with an empty premise is witnessed by any
    # article that lacks part of the conclusion, never by annotations alone.
    for d in range(min(len(types), spec.article_count), 0, -1):
        yield from _stage1_dfs(types, counts, spec.article_count, d, fail)


def _bit_tuple(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _stage1_dfs(
    types: list[int],
    counts: list[int],
    budget: int,
    distinct_goal: int,
    fail: list[tuple[int, int]],
) -> Iterator[list[tuple[int, int]]]:
    n_conv = len(counts)
    chosen: list[tuple[int, int]] = []

    def witness_ok(solution: list[tuple[int, int]]) -> bool:
        for p, q in fail:
            if not any(
                count > 0 and p & mask == p and q & mask != q for mask, count in solution
            ):
                return False
        return True

    def rec(idx: int, budget: int, counts: tuple[int, ...], distinct: int) -> Iterator[list[tuple[int, int]]]:
        if idx == len(types):
            if budget == 0 and all(v == 0 for v in counts) and distinct == distinct_goal:
                solution = list(chosen)
                if witness_ok(solution):
                    yield solution
            return
        remaining_types = len(types) - idx
        if distinct + remaining_types < distinct_goal:
            return
        mask = types[idx]
        later = 0
        for t in types[idx:]:
            later |= t
        for ci in range(n_conv):
            if counts[ci] > 0 and not later >> ci & 1:
                return
        cap = budget
        for ci in range(n_conv):
            if mask >> ci & 1:
                cap = min(cap, counts[ci])
        for mult in range(0, cap + 1):
            new_distinct = distinct + (1 if mult else 0)
            if new_distinct > distinct_goal:
                break
            new_counts = tuple(
                v - mult if mask >> ci & 1 else v for ci, v in enumerate(counts)
            )
            chosen.append((mask, mult))
            yield from rec(idx + 1, budget - mult, new_counts, new_distinct)
            chosen.pop()

    for solution in rec(0, budget, tuple(counts), 0):
        yield [(mask, count) for mask, count in solution if count]


def _stage2_sequences(
    targets: ConventionTargets,
    n_annotated: int,
    article_count: int,
    constraints: list[FixtureConstraint],
) -> Iterator[list[frozenset[str]]]:
    """Yield marker assignments for one convention's annotated articles.

    Assignments come out in canonical order: articles ascending, candidate
    patterns in (size, R-T-I-E) order, so the first yield is the assignment
    the documented backtracking finds first.
    """
    from .scaling import SCALE_KINDS, attribute_parts

    if n_annotated != targets.referenced:
        return
    if n_annotated == 0:
        if not any(
            (targets.positive, targets.justification, targets.topic,
             targets.critical, targets.internal, targets.external)
        ) and _stage2_constraints_vacuous(constraints, article_count):
            yield []
        return

    patterns = [
        frozenset(MARKERS[i] for i in _bit_tuple(mask))
        for mask in sorted(range(1, 16), key=lambda m: (m.bit_count(), _bit_tuple(m)))
    ]
    triggers = dict(SCALE_KINDS)

    def fires(pattern: frozenset[str], attr: str) -> bool:
        _, suffix = attribute_parts(attr)
        return bool(pattern & triggers[suffix])

    def satisfies_hold(pattern: frozenset[str], con: FixtureConstraint) -> bool:
        if not all(fires(pattern, a) for a in con.implication.premise):
            return True
        return all(fires(pattern, a) for a in con.implication.conclusion)

    hold_cons = [c for c in constraints if c.must_hold]
    fail_cons = [c for c in constraints if not c.must_hold]
    for c in hold_cons:
        # An empty premise demands the conclusion everywhere, which articles
        # without this convention can never satisfy.
        if not c.implication.premise and n_annotated < article_count:
            return
    allowed = [p for p in patterns if all(satisfies_hold(p, c) for c in hold_cons)]

    def witnesses(pattern: frozenset[str], con: FixtureConstraint) -> bool:
        if not all(fires(pattern, a) for a in con.implication.premise):
            return False
        return not all(fires(pattern, a) for a in con.implication.conclusion)

    pre_witnessed = tuple(
        not c.implication.premise and n_annotated < article_count for c in fail_cons
    )

    counters = ("R", "T", "I", "E", "+", "-")
    initial = {
        "R": targets.justification,
        "T": targets.topic,
        "I": targets.internal,
        "E": targets.external,
        "+": targets.positive,
        "-": targets.critical,
    }

    def contributes(pattern: frozenset[str]) -> dict[str, int]:
        out = {key: 0 for key in counters}
        for marker in pattern:
            out[marker] = 1
        out["+"] = 1 if pattern & {"R", "T"} else 0
        out["-"] = 1 if pattern & {"I", "E"} else 0
        return out

    contrib = {p: contributes(p) for p in allowed}
    witness_sets = [
        frozenset(p for p in allowed if witnesses(p, c)) for c in fail_cons
    ]
    assignment: list[frozenset[str]] = []

    def rec(position: int, remaining: dict[str, int], witnessed: tuple[bool, ...]) -> Iterator[list[frozenset[str]]]:
        slots = n_annotated - position
        if slots == 0:
            if all(v == 0 for v in remaining.values()) and all(witnessed):
                yield list(assignment)
            return
        for key in counters:
            if remaining[key] > slots:
                return
        if sum(1 for w in witnessed if not w) > slots:
            return
        for pattern in allowed:
            c = contrib[pattern]
            if any(remaining[key] - c[key] < 0 for key in counters):
                continue
            new_remaining = {key: remaining[key] - c[key] for key in counters}
            new_witnessed = tuple(
                w or pattern in witness_sets[i] for i, w in enumerate(witnessed)
            )
            assignment.append(pattern)
            yield from rec(position + 1, new_remaining, new_witnessed)
            assignment.pop()

    yield from rec(0, dict(initial), pre_witnessed)


def _stage2_constraints_vacuous(constraints: list[FixtureConstraint], article_count: int) -> bool:
    for c in constraints:
        if c.must_hold:
            if not c.implication.premise and article_count > 0:
                return False
        else:
            if c.implication.premise or article_count == 0:
                return False
    return True
