from __future__ import annotations

import random

import pytest

from cartograph.lattice import ConceptLattice
from cartograph.navigation import (
    AnnotatedLattice,
    ArticleInfo,
    LEVEL_NOTICE,
    NavigationError,
)
from cartograph.scaling import apply_scale, convention_of, polar_attribute

from conftest import random_corpus


@pytest.fixture(scope="module")
def j1_l1_nav(j1_corpus):
    return AnnotatedLattice.from_lattice(
        ConceptLattice.from_context(apply_scale(j1_corpus, level=1))
    )


@pytest.fixture(scope="module")
def j1_l2_nav(j1_corpus):
    return AnnotatedLattice.from_lattice(
        ConceptLattice.from_context(apply_scale(j1_corpus, level=2))
    )


def concept_by_intent(nav, intent) -> int:
    for concept in nav.lattice.concepts:
        if concept.intent == frozenset(intent):
            return concept.id
    raise AssertionError(f"no concept with intent {intent}")


def test_locate_industry_only_article_at_top(j1_l1_nav):
    industry_only = [
        g
        for g in j1_l1_nav.lattice.context.objects
        if j1_l1_nav.lattice.context.derive("objects", {g}) == {"Industry"}
    ]
    assert len(industry_only) == 1
    assert j1_l1_nav.locate_article(industry_only[0]) == j1_l1_nav.lattice.top_id


def test_locate_full_row_article_at_bottom(j1_l1_nav):
    context = j1_l1_nav.lattice.context
    full = [g for g in context.objects if len(context.derive("objects", {g})) == 4]
    assert len(full) == 5
    for g in full:
        assert j1_l1_nav.locate_article(g) == j1_l1_nav.lattice.bottom_id


def test_locate_unknown_article(j1_l1_nav):
    with pytest.raises(NavigationError):
        j1_l1_nav.locate_article("zzz")


def test_specialize_at_top_is_empty(j1_l1_nav):
    result = j1_l1_nav.move(j1_l1_nav.lattice.top_id, "specialize")
    assert result.entries == ()


def test_generalize_from_market_industry(j1_l1_nav):
    source = concept_by_intent(j1_l1_nav, {"Market", "Industry"})
    result = j1_l1_nav.move(source, "generalize")
    target = concept_by_intent(j1_l1_nav, {"Market", "State", "Industry"})
    assert len(result.entries) == 3
    assert {e.concept_id for e in result.entries} == {target}
    assert {e.rationale for e in result.entries} == {"generalize"}


def test_specialize_generalize_duality(j1_l1_nav):
    lattice = j1_l1_nav.lattice
    for concept in lattice.concepts:
        for entry in j1_l1_nav.move(concept.id, "specialize").entries:
            assert concept.id in lattice.lower_neighbors(entry.concept_id)
        for entry in j1_l1_nav.move(concept.id, "generalize").entries:
            assert concept.id in lattice.upper_neighbors(entry.concept_id)


def test_contrast_results_are_incomparable(j1_l1_nav):
    lattice = j1_l1_nav.lattice
    for concept in lattice.concepts:
        for entry in j1_l1_nav.move(concept.id, "contrast").entries:
            assert not lattice.leq(entry.concept_id, concept.id)
            assert not lattice.leq(concept.id, entry.concept_id)


def test_contrast_ranked_by_intent_overlap(j1_l1_nav):
    source = concept_by_intent(j1_l1_nav, {"Market", "State", "Industry"})
    result = j1_l1_nav.move(source, "contrast")
    # only the Green-Industry concept is incomparable with Market-State-Industry
    target = concept_by_intent(j1_l1_nav, {"Green", "Industry"})
    assert {e.concept_id for e in result.entries} == {target}


def test_complement_needs_level_two(j1_l1_nav):
    source = concept_by_intent(j1_l1_nav, {"Market", "Industry"})
    result = j1_l1_nav.move(source, "complement")
    assert result.entries == ()
    assert result.notice == LEVEL_NOTICE


def test_complement_properties_on_l2(j1_l2_nav):
    lattice = j1_l2_nav.lattice
    for concept in lattice.concepts:
        intent = concept.intent
        wanted = {polar_attribute(a) for a in intent if polar_attribute(a)}
        result = j1_l2_nav.move(concept.id, "complement")
        assert result.notice is None
        for entry in result.entries:
            other = lattice.concepts[entry.concept_id].intent
            assert wanted & other, "no polarity flip"
            assert {convention_of(a) for a in other} & {convention_of(a) for a in intent}


def test_unknown_move_kind(j1_l1_nav):
    with pytest.raises(NavigationError):
        j1_l1_nav.move(0, "teleport")


def test_unknown_concept_id(j1_l1_nav):
    from cartograph.lattice import LatticeError

    with pytest.raises(LatticeError):
        j1_l1_nav.move(77, "specialize")


def test_compromise_of_market_and_green_articles(j1_l1_nav):
    a = concept_by_intent(j1_l1_nav, {"Market", "Industry"})
    b = concept_by_intent(j1_l1_nav, {"Green", "Industry"})
    result = j1_l1_nav.compromise(a, b)
    bottom = concept_by_intent(j1_l1_nav, {"Market", "Green", "State", "Industry"})
    assert len(result.entries) == 5
    assert {e.concept_id for e in result.entries} == {bottom}
    assert {e.rationale for e in result.entries} == {"compromise"}


def test_commonality_of_market_and_green_articles(j1_l1_nav):
    a = concept_by_intent(j1_l1_nav, {"Market", "Industry"})
    b = concept_by_intent(j1_l1_nav, {"Green", "Industry"})
    result = j1_l1_nav.commonality(a, b)
    assert len(result.entries) == 1
    assert result.entries[0].concept_id == j1_l1_nav.lattice.top_id


def test_compromise_is_idempotent(j1_l1_nav):
    for concept_id, articles in j1_l1_nav.concept_articles.items():
        result = j1_l1_nav.compromise(concept_id, concept_id)
        assert tuple(e.article_id for e in result.entries) == articles


def test_compromise_intents_contain_both_sources():
    rng = random.Random(97)
    for i in range(10):
        corpus = random_corpus(rng, f"r{i}", rng.randint(2, 6))
        nav = AnnotatedLattice.from_lattice(
            ConceptLattice.from_context(apply_scale(corpus, level=2))
        )
        lattice = nav.lattice
        ids = [c.id for c in lattice.concepts]
        for _ in range(5):
            a, b = rng.choice(ids), rng.choice(ids)
            combined = lattice.concepts[a].intent | lattice.concepts[b].intent
            for entry in nav.compromise(a, b).entries:
                article_intent = lattice.context.derive("objects", {entry.article_id})
                assert combined <= article_intent


def test_compromise_falls_back_to_nearest_annotated_descendants():
    # nobody sits exactly at the meet of the two source concepts, so the move
    # falls back to the maximal annotated concepts strictly below it
    from cartograph.corpus import AnnotationCorpus, ArticleAnnotation

    def annotate(article, conventions):
        return [
            ArticleAnnotation(article, "t", convention, frozenset("R"))
            for convention in conventions
        ]

    corpus = AnnotationCorpus(
        "t",
        tuple(
            annotate("a1", ["market"])
            + annotate("a2", ["green"])
            + annotate("a3", ["market", "green", "state"])
            + annotate("a4", ["market", "green", "industry"])
        ),
    )
    nav = AnnotatedLattice.from_lattice(
        ConceptLattice.from_context(apply_scale(corpus, level=1))
    )
    a = nav.locate_article("a1")
    b = nav.locate_article("a2")
    meet = nav.lattice.meet(a, b)
    assert nav.lattice.concepts[meet].intent == {"Market", "Green"}
    assert nav.articles_at(meet) == ()
    result = nav.compromise(a, b)
    assert sorted(e.article_id for e in result.entries) == ["a3", "a4"]
    assert result.notice is None


def test_article_metadata_defaults_and_override(j1_corpus):
    lattice = ConceptLattice.from_context(apply_scale(j1_corpus, level=1))
    nav = AnnotatedLattice(lattice, {"j1a01": ArticleInfo("j1a01", "Opening piece")})
    assert nav.articles["j1a01"].title == "Opening piece"
    assert nav.articles["j1a02"].title == "j1a02"
    with pytest.raises(NavigationError):
        AnnotatedLattice(lattice, {"ghost": ArticleInfo("ghost", "?")})
