"""Article-to-article navigation moves over an annotated concept lattice.

Moves answer "what should I read next": specialize and generalize walk cover
edges, contrast jumps to incomparable concepts, complement looks for articles
taking the opposite (positive/negative) stance on a shared convention, and
compromise/commonality use meet and join. Ranking within a move is a design
decision of this artifact, not part of the move semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import ConceptLattice
from .scaling import ScaleError, convention_of, polar_attribute

__all__ = [
    "AnnotatedLattice",
    "ArticleInfo",
    "MOVE_KINDS",
    "MoveEntry",
    "MoveResult",
    "NavigationError",
]

MOVE_KINDS = ("specialize", "generalize", "contrast", "complement")
LEVEL_NOTICE = "complement moves need level >= 2 attributes"


class NavigationError(ValueError):
    """Unknown article, concept, or move kind."""


@dataclass(frozen=True)
class ArticleInfo:
    article_id: str
    title: str
    url: str | None = None


@dataclass(frozen=True)
class MoveEntry:
    article_id: str
    concept_id: int
    rationale: str


@dataclass(frozen=True)
class MoveResult:
    entries: tuple[MoveEntry, ...]
    notice: str | None = None


@dataclass(frozen=True)
class AnnotatedLattice:
    """A concept lattice whose objects are articles with optional metadata.

    ``concept_articles`` is the inverse of the object-concept map: per concept,
    the articles annotated exactly there, in corpus order.
    """

    lattice: ConceptLattice
    articles: dict[str, ArticleInfo]
    concept_articles: dict[int, tuple[str, ...]] = field(init=False)

    def __post_init__(self) -> None:
        known = set(self.lattice.context.objects)
        stray = set(self.articles) - known
        if stray:
            raise NavigationError(f"metadata for unknown articles: {sorted(stray)}")
        info = dict(self.articles)
        for g in self.lattice.context.objects:
            info.setdefault(g, ArticleInfo(g, g))
        by_concept: dict[int, list[str]] = {}
        for g in self.lattice.context.objects:
            by_concept.setdefault(self.lattice.gamma[g], []).append(g)
        object.__setattr__(self, "articles", info)
        object.__setattr__(
            self, "concept_articles", {c: tuple(v) for c, v in by_concept.items()}
        )

    @classmethod
    def from_lattice(
        cls, lattice: ConceptLattice, metadata: dict[str, ArticleInfo] | None = None
    ) -> "AnnotatedLattice":
        return cls(lattice, metadata or {})

    # -- queries ---------------------------------------------------------------

    def locate_article(self, article_id: str) -> int:
        if article_id not in self.lattice.gamma:
            raise NavigationError(f"unknown article {article_id!r}")
        return self.lattice.gamma[article_id]

    def articles_at(self, concept_id: int) -> tuple[str, ...]:
        self.lattice.check_id(concept_id)
        return self.concept_articles.get(concept_id, ())

    def move(self, from_id: int, kind: str) -> MoveResult:
        self.lattice.check_id(from_id)
        if kind == "specialize":
            return self._neighbor_move(from_id, self.lattice.upper_neighbors(from_id), kind)
        if kind == "generalize":
            return self._neighbor_move(from_id, self.lattice.lower_neighbors(from_id), kind)
        if kind == "contrast":
            return self._contrast(from_id)
        if kind == "complement":
            return self._complement(from_id)
        raise NavigationError(f"unknown move kind {kind!r}")

    def _neighbor_move(self, from_id: int, neighbors: tuple[int, ...], kind: str) -> MoveResult:
        entries = [
            MoveEntry(article, concept, kind)
            for concept in neighbors
            for article in self.articles_at(concept)
        ]
        return MoveResult(tuple(entries))

    def _contrast(self, from_id: int) -> MoveResult:
        lattice = self.lattice
        from_intent = lattice.concepts[from_id].intent
        candidates = []
        for concept_id, articles in self.concept_articles.items():
            if not articles:
                continue
            if lattice.leq(concept_id, from_id) or lattice.leq(from_id, concept_id):
                continue
            overlap = len(lattice.concepts[concept_id].intent & from_intent)
            extent_size = len(lattice.concepts[concept_id].extent)
            candidates.append((overlap, -extent_size, concept_id))
        entries = [
            MoveEntry(article, concept_id, "contrast")
            for _, _, concept_id in sorted(candidates)
            for article in self.articles_at(concept_id)
        ]
        return MoveResult(tuple(entries))

    def _complement(self, from_id: int) -> MoveResult:
        lattice = self.lattice
        polar = {}
        for attribute in lattice.context.attributes:
            try:
                polar[attribute] = polar_attribute(attribute)
            except ScaleError:
                polar[attribute] = None
        if not any(polar.values()):
            return MoveResult((), notice=LEVEL_NOTICE)
        from_intent = lattice.concepts[from_id].intent
        from_conventions = {convention_of(a) for a in from_intent}
        wanted = {polar[a] for a in from_intent if polar[a]}
        candidates = []
        for concept_id, articles in self.concept_articles.items():
            if not articles or concept_id == from_id:
                continue
            intent = lattice.concepts[concept_id].intent
            matches = len(wanted & intent)
            if not matches:
                continue
            if not from_conventions & {convention_of(a) for a in intent}:
                continue
            candidates.append((-matches, concept_id))
        entries = [
            MoveEntry(article, concept_id, "complement")
            for _, concept_id in sorted(candidates)
            for article in self.articles_at(concept_id)
        ]
        return MoveResult(tuple(entries))

    def compromise(self, a: int, b: int) -> MoveResult:
        meet = self.lattice.meet(a, b)
        return self._at_or_beyond(meet, downwards=True, rationale="compromise")

    def commonality(self, a: int, b: int) -> MoveResult:
        join = self.lattice.join(a, b)
        return self._at_or_beyond(join, downwards=False, rationale="commonality")

    def _at_or_beyond(self, anchor: int, downwards: bool, rationale: str) -> MoveResult:
        articles = self.articles_at(anchor)
        if articles:
            entries = tuple(MoveEntry(g, anchor, rationale) for g in articles)
            return MoveResult(entries)
        lattice = self.lattice
        if downwards:
            related = [
                c for c in self.concept_articles
                if c != anchor and lattice.leq(c, anchor)
            ]
            nearest = [
                c for c in related
                if not any(o != c and lattice.leq(c, o) for o in related)
            ]
        else:
            related = [
                c for c in self.concept_articles
                if c != anchor and lattice.leq(anchor, c)
            ]
            nearest = [
                c for c in related
                if not any(o != c and lattice.leq(o, c) for o in related)
            ]
        if not nearest:
            side = "below" if downwards else "above"
            return MoveResult((), notice=f"no annotated concepts at or {side} the anchor")
        entries = tuple(
            MoveEntry(article, concept, rationale)
            for concept in sorted(nearest)
            for article in self.articles_at(concept)
        )
        return MoveResult(entries)
