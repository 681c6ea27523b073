from __future__ import annotations

import random
from itertools import combinations

import pytest

from cartograph.context import ContextError
from cartograph.implications import (
    Implication,
    ImplicationError,
    ImplicationSet,
    canonical_base,
    closure,
    enumerate_closed,
    holds,
    shared_intents,
)
from cartograph.scaling import apply_scale

from conftest import make_context, random_context
from oracles import brute_closure, brute_holds, brute_intents, brute_pseudo_intents, powerset

L1 = ("Market", "Green", "State", "Industry")


def j1_base() -> ImplicationSet:
    return ImplicationSet(
        (
            Implication.of((), ["Industry"]),
            Implication.of(["State", "Industry"], ["Market"]),
            Implication.of(["Market", "Green", "Industry"], ["State"]),
        ),
        L1,
    )


def j2_base() -> ImplicationSet:
    return ImplicationSet(
        (
            Implication.of(["Green"], ["Market", "State"]),
            Implication.of(["State"], ["Market", "Green"]),
        ),
        L1,
    )


def normalized(base: ImplicationSet) -> set[tuple[frozenset[str], frozenset[str]]]:
    return {(imp.premise, imp.conclusion) for imp in base.implications}


def test_implication_normalizes_conclusion():
    imp = Implication.of(["a", "b"], ["b", "c"])
    assert imp.conclusion == {"c"}


def test_closure_of_empty_set_under_j1_base():
    assert closure((), j1_base()) == {"Industry"}


def test_closure_of_state_under_j1_base():
    assert closure({"State"}, j1_base()) == {"State", "Industry", "Market"}


def test_closure_under_empty_set_is_identity():
    empty = ImplicationSet((), L1)
    assert closure({"Market", "Green"}, empty) == {"Market", "Green"}


def test_closure_rejects_unknown_attribute():
    with pytest.raises(ImplicationError):
        closure({"Quantum"}, j1_base())


def test_holds_examples(j1_corpus, j2_corpus):
    j2_l2 = apply_scale(j2_corpus, level=2)
    assert holds(Implication.of(["Market -"], ["Market +"]), j2_l2)
    j1_l1 = apply_scale(j1_corpus, level=1)
    assert holds(Implication.of((), ["Industry"]), j1_l1)
    tiny = make_context({"g": "m"}, "mn")
    assert not holds(Implication.of(["m"], ["n"]), tiny)


def test_holds_unknown_attribute(j1_corpus):
    with pytest.raises(ContextError):
        holds(Implication.of(["Nope"], ["Industry"]), apply_scale(j1_corpus, level=1))


def test_canonical_base_j1_l1(j1_corpus):
    base = canonical_base(apply_scale(j1_corpus, level=1))
    assert normalized(base) == normalized(j1_base())


def test_canonical_base_j2_l1(j2_corpus):
    base = canonical_base(apply_scale(j2_corpus, level=1))
    assert normalized(base) == normalized(j2_base())


def test_canonical_base_full_incidence():
    context = make_context({"a": "xy", "b": "xy"}, "xy")
    base = canonical_base(context)
    assert normalized(base) == {(frozenset(), frozenset({"x", "y"}))}


def test_base_premises_match_brute_force_pseudo_intents():
    rng = random.Random(29)
    for _ in range(30):
        context = random_context(rng, rng.randint(1, 6), rng.randint(1, 4))
        base = canonical_base(context)
        assert {imp.premise for imp in base.implications} == set(
            brute_pseudo_intents(context)
        )
        for imp in base.implications:
            assert imp.conclusion == brute_closure(context, imp.premise) - imp.premise


def test_base_soundness_random():
    rng = random.Random(31)
    for _ in range(25):
        context = random_context(rng, rng.randint(1, 6), rng.randint(1, 6))
        for imp in canonical_base(context).implications:
            assert brute_holds(context, imp.premise, imp.conclusion)


def test_base_completeness_random():
    # complete iff the base closure equals the context closure on every subset
    rng = random.Random(37)
    for _ in range(15):
        context = random_context(rng, rng.randint(1, 6), rng.randint(1, 6))
        base = canonical_base(context)
        for subset in powerset(context.attributes):
            assert base.closure(subset) == brute_closure(context, subset)


def test_base_minimality_small():
    # no strictly smaller sound and complete set exists (<= 4 attributes)
    rng = random.Random(43)
    for _ in range(8):
        context = random_context(rng, rng.randint(1, 5), rng.randint(1, 4))
        base = canonical_base(context)
        size = len(base.implications)
        if size == 0:
            continue
        universe = context.attributes
        valid = [
            (p, brute_closure(context, p))
            for p in powerset(universe)
            if brute_closure(context, p) != p
        ]
        for combo in combinations(valid, size - 1):
            candidate = ImplicationSet(
                tuple(Implication(p, c) for p, c in combo), universe
            )
            complete = all(
                candidate.closure(subset) == brute_closure(context, subset)
                for subset in powerset(universe)
            )
            assert not complete, "found a smaller complete base"


def test_enumerate_closed_j1_base():
    closed = enumerate_closed(j1_base())
    assert len(closed) == 5
    assert set(closed) == {
        frozenset({"Industry"}),
        frozenset({"Market", "Industry"}),
        frozenset({"Green", "Industry"}),
        frozenset({"Market", "State", "Industry"}),
        frozenset(L1),
    }


def test_enumerate_closed_j2_base():
    closed = enumerate_closed(j2_base())
    assert len(closed) == 6
    assert set(closed) == {
        frozenset(),
        frozenset({"Market"}),
        frozenset({"Industry"}),
        frozenset({"Market", "Industry"}),
        frozenset({"Market", "Green", "State"}),
        frozenset(L1),
    }


def test_enumerate_closed_empty_base():
    assert len(enumerate_closed(ImplicationSet((), L1))) == 16


def test_enumerate_closed_universe_too_large():
    universe = tuple(f"m{i}" for i in range(26))
    with pytest.raises(ImplicationError, match="restrict"):
        enumerate_closed(ImplicationSet((), universe))


def test_closed_count_matches_concept_count():
    from cartograph.lattice import enumerate_concepts

    rng = random.Random(53)
    for _ in range(20):
        context = random_context(rng, rng.randint(1, 7), rng.randint(1, 6))
        base = canonical_base(context)
        assert len(enumerate_closed(base)) == len(enumerate_concepts(context))


def test_shared_intents_fixtures(j1_corpus, j2_corpus):
    shared = shared_intents(
        apply_scale(j1_corpus, level=1), apply_scale(j2_corpus, level=1)
    )
    assert shared == {
        frozenset({"Industry"}),
        frozenset({"Market", "Industry"}),
        frozenset(L1),
    }


def test_shared_intents_with_self(j1_corpus):
    context = apply_scale(j1_corpus, level=1)
    assert shared_intents(context, context) == brute_intents(context)


def test_shared_intents_trivial_pair():
    full = make_context({"a": "xy", "b": "xy"}, "xy")
    empty = make_context({"a": "", "b": ""}, "xy")
    assert shared_intents(full, empty) == {frozenset({"x", "y"})}


def test_shared_intents_requires_same_universe(j1_corpus):
    l1 = apply_scale(j1_corpus, level=1)
    l2 = apply_scale(j1_corpus, level=2)
    with pytest.raises(ContextError):
        shared_intents(l1, l2)
