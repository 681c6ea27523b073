"""Attribute implications: closures, validity, and the canonical base.

Implications are stored normalized (conclusion minus premise). The canonical
base is computed with Next Closure over the implication-closure operator, so
its premises come out in lectic order of the pseudo-intents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .context import ContextError, FormalContext

__all__ = [
    "Implication",
    "ImplicationError",
    "ImplicationSet",
    "canonical_base",
    "closure",
    "enumerate_closed",
    "holds",
    "shared_intents",
]

MAX_ENUMERATION_UNIVERSE = 25


class ImplicationError(ValueError):
    """Attribute outside the universe, or an oversized enumeration request."""


@dataclass(frozen=True)
class Implication:
    premise: frozenset[str]
    conclusion: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion) - self.premise)

    @classmethod
    def of(cls, premise: Iterable[str], conclusion: Iterable[str]) -> "Implication":
        return cls(frozenset(premise), frozenset(conclusion))


@dataclass(frozen=True)
class ImplicationSet:
    """An ordered list of implications over one attribute universe."""

    implications: tuple[Implication, ...]
    universe: tuple[str, ...]

    def __post_init__(self) -> None:
        known = set(self.universe)
        for imp in self.implications:
            stray = (imp.premise | imp.conclusion) - known
            if stray:
                raise ImplicationError(f"attributes outside the universe: {sorted(stray)}")

    def _masks(self) -> list[tuple[int, int]]:
        index = {m: j for j, m in enumerate(self.universe)}
        out = []
        for imp in self.implications:
            p = sum(1 << index[m] for m in imp.premise)
            c = sum(1 << index[m] for m in imp.conclusion)
            out.append((p, c))
        return out

    def closure_mask(self, mask: int, masks: Sequence[tuple[int, int]] | None = None) -> int:
        if masks is None:
            masks = self._masks()
        changed = True
        while changed:
            changed = False
            for p, c in masks:
                if mask & p == p and mask | c != mask:
                    mask |= c
                    changed = True
        return mask

    def closure(self, attributes: Iterable[str]) -> frozenset[str]:
        """Smallest superset of ``attributes`` respecting every implication."""
        index = {m: j for j, m in enumerate(self.universe)}
        mask = 0
        for m in attributes:
            if m not in index:
                raise ImplicationError(f"attribute {m!r} outside the universe")
            mask |= 1 << index[m]
        closed = self.closure_mask(mask)
        return frozenset(m for j, m in enumerate(self.universe) if closed >> j & 1)

    def format_lines(self) -> list[str]:
        """One implication per line, ``a, b -> c, d``, canonical attribute order."""
        order = {m: j for j, m in enumerate(self.universe)}

        def fmt(attrs: frozenset[str]) -> str:
            return ", ".join(sorted(attrs, key=order.__getitem__))

        return [f"{fmt(imp.premise)} -> {fmt(imp.conclusion)}".lstrip() for imp in self.implications]


def closure(attributes: Iterable[str], implication_set: ImplicationSet) -> frozenset[str]:
    return implication_set.closure(attributes)


def holds(implication: Implication, context: FormalContext) -> bool:
    """True iff every object with the full premise also has the full conclusion."""
    premise_extent = context.extent_mask(context.attribute_mask(implication.premise))
    conclusion_extent = context.extent_mask(context.attribute_mask(implication.conclusion))
    return premise_extent & ~conclusion_extent == 0


def _iter_lectic_closures(n_bits: int, close) -> Iterator[int]:
    """All fixed points of a closure operator on bitmasks, in lectic order."""
    full = (1 << n_bits) - 1
    current = close(0)
    yield current
    while current != full:
        found = False
        for i in reversed(range(n_bits)):
            bit = 1 << i
            if current & bit:
                current &= ~bit
            else:
                candidate = close(current | bit)
                if not (candidate & ~current) & (bit - 1):
                    current = candidate
                    found = True
                    break
        if not found:
            return
        yield current


def canonical_base(context: FormalContext) -> ImplicationSet:
    """The Duquenne-Guigues base: premises are the pseudo-intents, lectic order.

    Sound and complete for the context, and of minimum cardinality among all
    sound and complete implication sets.
    """
    m = len(context.attributes)
    full = (1 << m) - 1
    base_masks: list[tuple[int, int]] = []

    def lclose(mask: int) -> int:
        changed = True
        while changed:
            changed = False
            for p, c in base_masks:
                if mask & p == p and mask | c != mask:
                    mask |= c
                    changed = True
        return mask

    implications: list[Implication] = []
    current = lclose(0)
    while True:
        closed = context.close_attrs(current)
        if closed != current:
            base_masks.append((current, closed & ~current))
            implications.append(
                Implication(
                    context.attribute_labels(current), context.attribute_labels(closed)
                )
            )
        if current == full:
            break
        advanced = False
        for i in reversed(range(m)):
            bit = 1 << i
            if current & bit:
                current &= ~bit
            else:
                candidate = lclose(current | bit)
                if not (candidate & ~current) & (bit - 1):
                    current = candidate
                    advanced = True
                    break
        if not advanced:
            break
    return ImplicationSet(tuple(implications), context.attributes)


def enumerate_closed(implication_set: ImplicationSet) -> list[frozenset[str]]:
    """All subsets of the universe closed under the implications, lectic order."""
    universe = implication_set.universe
    if len(universe) > MAX_ENUMERATION_UNIVERSE:
        raise ImplicationError(
            f"universe of {len(universe)} attributes is too large to enumerate; "
            f"restrict to at most {MAX_ENUMERATION_UNIVERSE}"
        )
    masks = implication_set._masks()
    close = lambda mask: implication_set.closure_mask(mask, masks)  # noqa: E731
    out = []
    for mask in _iter_lectic_closures(len(universe), close):
        out.append(frozenset(m for j, m in enumerate(universe) if mask >> j & 1))
    return out


def intents(context: FormalContext) -> set[frozenset[str]]:
    """The intent family of a context (all closed attribute sets)."""
    return {
        context.attribute_labels(mask)
        for mask in _iter_lectic_closures(len(context.attributes), context.close_attrs)
    }


def shared_intents(a: FormalContext, b: FormalContext) -> set[frozenset[str]]:
    """Intents common to two contexts over the identical attribute universe."""
    if a.attributes != b.attributes:
        raise ContextError("attribute universes differ")
    return intents(a) & intents(b)
