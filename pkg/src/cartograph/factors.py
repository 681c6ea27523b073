"""Greedy ordinal factorization into attribute chains (Ferrers relations).

Each factor is a descending chain of concepts starting at the top; its covered
incidence pairs form a staircase. Factors are built greedily: descend to the
lower neighbour whose intent increment covers the most not-yet-covered pairs,
tie-break by larger extent and then lexicographically smaller intent, and stop
when no descent adds anything new. The loop repeats until the union of the
factor staircases is the whole incidence relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .context import ContextError, FormalContext, _iter_bits
from .lattice import ConceptLattice

__all__ = [
    "Factorization",
    "OrdinalFactor",
    "SupportReport",
    "cross_support",
    "factor_support",
    "ferrers_check",
    "greedy_factorize",
]


@dataclass(frozen=True)
class OrdinalFactor:
    """One ordinal factor: a concept chain and its attribute tie classes.

    ``sequence`` groups attributes by first appearance along the chain; each
    tie class is one chain step's intent increment. ``covered`` is the full
    staircase of the chain (object, attribute pairs).
    """

    chain: tuple[int, ...]
    sequence: tuple[tuple[str, ...], ...]
    covered: frozenset[tuple[str, str]]

    @property
    def attributes(self) -> tuple[str, ...]:
        return tuple(a for block in self.sequence for a in block)


@dataclass(frozen=True)
class Factorization:
    context: FormalContext
    factors: tuple[OrdinalFactor, ...]

    def covered_union(self) -> frozenset[tuple[str, str]]:
        out: set[tuple[str, str]] = set()
        for factor in self.factors:
            out |= factor.covered
        return frozenset(out)


@dataclass(frozen=True)
class SupportReport:
    covered: int
    total: int

    @property
    def ratio(self) -> float:
        return self.covered / self.total if self.total else 0.0

    def __str__(self) -> str:
        return f"{self.covered}/{self.total} ({self.ratio * 100:.2f}%)"


def greedy_factorize(context: FormalContext) -> Factorization:
    """Complete greedy ordinal factorization of the incidence relation."""
    if context.incidence_count == 0:
        return Factorization(context, ())
    lattice = ConceptLattice.from_context(context)
    n_objects = len(context.objects)
    uncovered = list(context.rows)
    remaining = context.incidence_count
    intent_of = lattice._intent_masks
    extent_of = lattice._extent_masks
    attr_order = {m: j for j, m in enumerate(context.attributes)}

    factors: list[OrdinalFactor] = []
    while remaining:
        chain = _greedy_chain(lattice, uncovered)
        covered_rows = _chain_rows(chain, intent_of, extent_of, n_objects)
        gained = sum(
            (covered_rows[i] & uncovered[i]).bit_count() for i in range(n_objects)
        )
        if gained == 0:
            chain = _fallback_chain(lattice, uncovered)
            covered_rows = _chain_rows(chain, intent_of, extent_of, n_objects)
            gained = sum(
                (covered_rows[i] & uncovered[i]).bit_count() for i in range(n_objects)
            )
        for i in range(n_objects):
            uncovered[i] &= ~covered_rows[i]
        remaining -= gained
        factors.append(_make_factor(context, chain, intent_of, covered_rows, attr_order))
    return Factorization(context, tuple(factors))


def _greedy_chain(lattice: ConceptLattice, uncovered: list[int]) -> list[int]:
    intent_of = lattice._intent_masks
    extent_of = lattice._extent_masks
    chain = [lattice.top_id]
    current = lattice.top_id
    while True:
        best = None
        for neighbor in lattice.lower_neighbors(current):
            increment = intent_of[neighbor] & ~intent_of[current]
            gain = sum(
                (uncovered[i] & increment).bit_count()
                for i in _iter_bits(extent_of[neighbor])
            )
            key = (
                -gain,
                -extent_of[neighbor].bit_count(),
                _lex_intent(intent_of[neighbor]),
            )
            if gain > 0 and (best is None or key < best[0]):
                best = (key, neighbor)
        if best is None:
            return chain
        current = best[1]
        chain.append(current)


def _lex_intent(mask: int) -> tuple[int, ...]:
    return tuple(_iter_bits(mask))


def _fallback_chain(lattice: ConceptLattice, uncovered: list[int]) -> list[int]:
    """A maximal chain through the object concept of the first uncovered pair.

    The pure greedy descent can stall once earlier factors cover every
    neighbour increment of the top; this keeps the factorization complete.
    """
    target = None
    for i, mask in enumerate(uncovered):
        if mask:
            target = lattice.gamma[lattice.context.objects[i]]
            break
    assert target is not None
    chain = [lattice.top_id]
    current = lattice.top_id
    while current != target:
        step = next(
            neighbor
            for neighbor in lattice.lower_neighbors(current)
            if lattice.leq(target, neighbor)
        )
        chain.append(step)
        current = step
    return chain


def _chain_rows(
    chain: Sequence[int],
    intent_of: Sequence[int],
    extent_of: Sequence[int],
    n_objects: int,
) -> list[int]:
    """Per object, the attribute mask the chain's staircase covers."""
    rows = [0] * n_objects
    for concept in chain:
        intent = intent_of[concept]
        for i in _iter_bits(extent_of[concept]):
            rows[i] |= intent
    return rows


def _make_factor(
    context: FormalContext,
    chain: Sequence[int],
    intent_of: Sequence[int],
    covered_rows: Sequence[int],
    attr_order: dict[str, int],
) -> OrdinalFactor:
    sequence: list[tuple[str, ...]] = []
    previous = 0
    for concept in chain:
        increment = intent_of[concept] & ~previous
        if increment:
            sequence.append(
                tuple(sorted(context.attribute_labels(increment), key=attr_order.__getitem__))
            )
        previous |= intent_of[concept]
    covered = frozenset(
        (context.objects[i], attr)
        for i in range(len(context.objects))
        for attr in context.attribute_labels(covered_rows[i])
    )
    return OrdinalFactor(tuple(chain), tuple(sequence), covered)


def _prefix_support(factor: OrdinalFactor, context: FormalContext) -> SupportReport:
    blocks = [context.attribute_mask(block) for block in factor.sequence]
    covered = 0
    for row in context.rows:
        for block in blocks:
            if row & block == block:
                covered += block.bit_count()
            else:
                break
    return SupportReport(covered, context.incidence_count)


def factor_support(factor: OrdinalFactor, context: FormalContext) -> SupportReport:
    """Pairs readable from the factor in ``context``: per object, the longest
    fully-contained prefix of the attribute sequence (tie classes are blocks).
    """
    return _prefix_support(factor, context)


def cross_support(factor: OrdinalFactor, other: FormalContext) -> SupportReport:
    """The same prefix rule evaluated against another context's rows."""
    missing = set(factor.attributes) - set(other.attributes)
    if missing:
        raise ContextError(f"attributes missing from the target context: {sorted(missing)}")
    return _prefix_support(factor, other)


def ferrers_check(pairs: Iterable[tuple[str, str]]) -> bool:
    """True iff the per-object attribute sets are totally ordered by inclusion."""
    by_object: dict[str, set[str]] = {}
    for g, m in pairs:
        by_object.setdefault(g, set()).add(m)
    distinct = sorted({frozenset(v) for v in by_object.values()}, key=len)
    return all(a <= b for a, b in zip(distinct, distinct[1:]))
