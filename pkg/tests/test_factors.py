from __future__ import annotations

import random

import pytest

from cartograph.context import ContextError
from cartograph.factors import (
    cross_support,
    factor_support,
    ferrers_check,
    greedy_factorize,
)
from cartograph.scaling import apply_scale

from conftest import make_context, random_context


def test_j1_l1_factorization(j1_corpus):
    context = apply_scale(j1_corpus, level=1)
    factorization = greedy_factorize(context)
    assert len(factorization.factors) == 2
    first, second = factorization.factors
    assert first.sequence == (("Industry",), ("Market",), ("State",), ("Green",))
    assert len(first.covered) == 34
    # the second factor picks up the two remaining Green pairs
    remaining = {pair for pair in context.pairs()} - first.covered
    assert remaining == {(g, "Green") for g, _ in remaining}
    assert len(remaining) == 2
    assert remaining <= second.covered


def test_full_incidence_single_factor():
    context = make_context({"a": "xy", "b": "xy"}, "xy")
    factorization = greedy_factorize(context)
    assert len(factorization.factors) == 1
    assert factorization.factors[0].covered == frozenset(context.pairs())


def test_empty_incidence_no_factors():
    context = make_context({"a": "", "b": ""}, "xy")
    assert greedy_factorize(context).factors == ()


def test_factor_support_j1_first_factor(j1_corpus):
    context = apply_scale(j1_corpus, level=1)
    first = greedy_factorize(context).factors[0]
    report = factor_support(first, context)
    assert (report.covered, report.total) == (34, 36)
    assert report.ratio == pytest.approx(34 / 36)
    assert str(report) == "34/36 (94.44%)"


def test_factor_support_unmatched_first_attribute(j1_corpus):
    from cartograph.factors import OrdinalFactor

    context = apply_scale(j1_corpus, level=1)
    ghost = OrdinalFactor((0,), (("Green",), ("Industry",)), frozenset())
    # Green alone never covers anything for rows without Green
    report = factor_support(ghost, context.restrict_attributes({"Green", "Industry"}))
    assert report.covered == 7 * 2  # the 7 Green rows take both blocks
    no_green = make_context({"a": "y"}, "gy")
    single = OrdinalFactor((0,), (("g",),), frozenset())
    assert factor_support(single, no_green).covered == 0


def test_single_attribute_factor_industry(j1_corpus):
    from cartograph.factors import OrdinalFactor

    context = apply_scale(j1_corpus, level=1)
    factor = OrdinalFactor((0,), (("Industry",),), frozenset())
    report = factor_support(factor, context)
    assert (report.covered, report.total) == (12, 36)


def test_cross_support_equals_own_support_on_same_context(j1_corpus):
    context = apply_scale(j1_corpus, level=1)
    for factor in greedy_factorize(context).factors:
        assert cross_support(factor, context) == factor_support(factor, context)


def test_cross_support_j1_factor_in_j2(j1_corpus, j2_corpus):
    first = greedy_factorize(apply_scale(j1_corpus, level=1)).factors[0]
    report = cross_support(first, apply_scale(j2_corpus, level=1))
    assert (report.covered, report.total) == (47, 50)
    assert report.ratio == pytest.approx(0.94)


def test_empty_factor_covers_nothing(j1_corpus):
    from cartograph.factors import OrdinalFactor

    context = apply_scale(j1_corpus, level=1)
    empty = OrdinalFactor((0,), (), frozenset())
    assert cross_support(empty, context).covered == 0


def test_cross_support_missing_attributes(j1_corpus):
    first = greedy_factorize(apply_scale(j1_corpus, level=1)).factors[0]
    target = make_context({"a": "x"}, "x")
    with pytest.raises(ContextError):
        cross_support(first, target)


def test_ferrers_check_examples():
    assert ferrers_check([])
    assert not ferrers_check([("g1", "m2"), ("g2", "m1")])
    assert ferrers_check([("g1", "m1"), ("g2", "m1"), ("g2", "m2")])


def test_factorization_complete_and_ferrers_on_random_contexts():
    rng = random.Random(83)
    for _ in range(100):
        context = random_context(
            rng, rng.randint(1, 10), rng.randint(1, 10), density=rng.uniform(0.1, 0.9)
        )
        factorization = greedy_factorize(context)
        assert factorization.covered_union() == frozenset(context.pairs())
        for factor in factorization.factors:
            assert ferrers_check(factor.covered)
            assert factor.covered <= frozenset(context.pairs())


def test_crossing_pairs_never_share_a_factor():
    rng = random.Random(89)
    for _ in range(20):
        context = random_context(rng, rng.randint(2, 6), rng.randint(2, 6))
        pairs = set(context.pairs())
        for factor in greedy_factorize(context).factors:
            for g, m in factor.covered:
                for h, n in factor.covered:
                    if g != h and m != n and (g, n) not in pairs:
                        assert (h, m) in pairs


def test_tie_class_prefix_support_non_increasing(j1_corpus, j2_corpus):
    # objects supporting the sequence prefix through each tie class can only
    # dwindle as the chain descends
    for corpus in (j1_corpus, j2_corpus):
        for level in (1, 2, 3):
            context = apply_scale(corpus, level=level)
            for factor in greedy_factorize(context).factors:
                prefix = 0
                supports = []
                for block in factor.sequence:
                    prefix |= context.attribute_mask(block)
                    supports.append(
                        sum(1 for row in context.rows if row & prefix == prefix)
                    )
                assert supports == sorted(supports, reverse=True)
                assert all(s > 0 for s in supports[:1])


def test_chains_descend_from_top(j1_corpus):
    context = apply_scale(j1_corpus, level=1)
    from cartograph.lattice import ConceptLattice

    lattice = ConceptLattice.from_context(context)
    for factor in greedy_factorize(context).factors:
        assert factor.chain[0] == lattice.top_id
        for upper, lower in zip(factor.chain, factor.chain[1:]):
            assert lattice.leq(lower, upper) and lower != upper
