"""Formal contexts: objects x attributes with a binary incidence relation.

The incidence is stored as one attribute bitmask per object, which keeps the
closure-heavy algorithms downstream (concept enumeration, implication bases)
on fast integer operations. All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "ContextError",
    "CxtFormatError",
    "FormalContext",
    "read_cxt",
    "write_cxt",
]


class ContextError(ValueError):
    """Invalid context construction or an unknown object/attribute label."""


class CxtFormatError(ValueError):
    """Malformed Burmeister CXT document."""


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FormalContext:
    """A formal context (G, M, I).

    ``rows[i]`` is the attribute bitmask of object ``i`` (bit j set iff the
    object has attribute j). The optional ``name`` survives CXT round trips
    but does not take part in equality.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise ContextError("object labels must be unique")
        if len(set(self.attributes)) != len(self.attributes):
            raise ContextError("attribute labels must be unique")
        if len(self.rows) != len(self.objects):
            raise ContextError(
                f"expected {len(self.objects)} incidence rows, got {len(self.rows)}"
            )
        full = (1 << len(self.attributes)) - 1
        for label, row in zip(self.objects, self.rows):
            if row & ~full:
                raise ContextError(f"row of {label!r} references unknown attributes")

    @classmethod
    def from_pairs(
        cls,
        objects: Iterable[str],
        attributes: Iterable[str],
        incidence: Iterable[tuple[str, str]],
        name: str = "",
    ) -> "FormalContext":
        objs = tuple(objects)
        attrs = tuple(attributes)
        obj_index = {g: i for i, g in enumerate(objs)}
        attr_index = {m: j for j, m in enumerate(attrs)}
        rows = [0] * len(objs)
        for g, m in incidence:
            if g not in obj_index:
                raise ContextError(f"unknown object label {g!r}")
            if m not in attr_index:
                raise ContextError(f"unknown attribute label {m!r}")
            rows[obj_index[g]] |= 1 << attr_index[m]
        return cls(objs, attrs, tuple(rows), name)

    # -- label/index plumbing ------------------------------------------------

    @property
    def object_index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.objects)}

    @property
    def attribute_index(self) -> dict[str, int]:
        return {m: j for j, m in enumerate(self.attributes)}

    def columns(self) -> tuple[int, ...]:
        """Object bitmask per attribute (transpose of ``rows``)."""
        cols = [0] * len(self.attributes)
        for i, row in enumerate(self.rows):
            for j in _iter_bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    def attribute_mask(self, labels: Iterable[str]) -> int:
        index = self.attribute_index
        mask = 0
        for m in labels:
            if m not in index:
                raise ContextError(f"unknown attribute label {m!r}")
            mask |= 1 << index[m]
        return mask

    def object_mask(self, labels: Iterable[str]) -> int:
        index = self.object_index
        mask = 0
        for g in labels:
            if g not in index:
                raise ContextError(f"unknown object label {g!r}")
            mask |= 1 << index[g]
        return mask

    def attribute_labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.attributes[j] for j in _iter_bits(mask))

    def object_labels(self, mask: int) -> frozenset[str]:
        return frozenset(self.objects[i] for i in _iter_bits(mask))

    # -- derivation operators ------------------------------------------------

    def extent_mask(self, attr_mask: int) -> int:
        """Objects incident with every attribute in ``attr_mask``."""
        out = 0
        for i, row in enumerate(self.rows):
            if row & attr_mask == attr_mask:
                out |= 1 << i
        return out

    def intent_mask(self, obj_mask: int) -> int:
        """Attributes shared by every object in ``obj_mask``."""
        out = (1 << len(self.attributes)) - 1
        for i in _iter_bits(obj_mask):
            out &= self.rows[i]
        return out

    def close_attrs(self, attr_mask: int) -> int:
        """Double prime B'' on an attribute bitmask."""
        return self.intent_mask(self.extent_mask(attr_mask))

    def close_objects(self, obj_mask: int) -> int:
        return self.extent_mask(self.intent_mask(obj_mask))

    def derive(self, side: str, subset: Iterable[str]) -> frozenset[str]:
        """Single prime: all labels on the other side incident with every
        member of ``subset``. The empty set derives to the full other side.
        """
        if side == "objects":
            return self.attribute_labels(self.intent_mask(self.object_mask(subset)))
        if side == "attributes":
            return self.object_labels(self.extent_mask(self.attribute_mask(subset)))
        raise ContextError(f"side must be 'objects' or 'attributes', got {side!r}")

    # -- metrics and views ---------------------------------------------------

    @property
    def incidence_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def density(self) -> float:
        if not self.objects or not self.attributes:
            raise ContextError("density is undefined for an empty object or attribute set")
        return self.incidence_count / (len(self.objects) * len(self.attributes))

    def restrict_attributes(self, keep: Iterable[str]) -> "FormalContext":
        """Same objects, attributes restricted to ``keep`` in original order."""
        keep_set = set(keep)
        index = self.attribute_index
        for m in keep_set:
            if m not in index:
                raise ContextError(f"unknown attribute label {m!r}")
        kept = tuple(m for m in self.attributes if m in keep_set)
        positions = [index[m] for m in kept]
        rows = tuple(
            sum(((row >> p) & 1) << j for j, p in enumerate(positions))
            for row in self.rows
        )
        return FormalContext(self.objects, kept, rows, self.name)

    def pairs(self) -> list[tuple[str, str]]:
        """All incidence pairs as (object, attribute), row-major order."""
        return [
            (g, self.attributes[j])
            for g, row in zip(self.objects, self.rows)
            for j in _iter_bits(row)
        ]


# -- Burmeister CXT ----------------------------------------------------------
#
# Line 1: "B"; line 2: context name (may be empty); line 3: |G|; line 4: |M|;
# line 5: empty; then |G| object names, |M| attribute names, |G| incidence
# rows over {'.', 'X'}. LF endings, UTF-8 names.


def write_cxt(context: FormalContext) -> str:
    lines = ["B", context.name, str(len(context.objects)), str(len(context.attributes)), ""]
    lines.extend(context.objects)
    lines.extend(context.attributes)
    width = len(context.attributes)
    for row in context.rows:
        lines.append("".join("X" if row >> j & 1 else "." for j in range(width)))
    return "\n".join(lines) + "\n"


def read_cxt(text: str) -> FormalContext:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "B":
        raise CxtFormatError("line 1 must be 'B'")
    if len(lines) < 5:
        raise CxtFormatError("truncated header: expected name, |G|, |M| and a blank line")
    name = lines[1]
    try:
        n_objects = int(lines[2])
        n_attributes = int(lines[3])
    except ValueError as exc:
        raise CxtFormatError("lines 3 and 4 must be the object and attribute counts") from exc
    if n_objects < 0 or n_attributes < 0:
        raise CxtFormatError("object and attribute counts must be non-negative")
    if lines[4] != "":
        raise CxtFormatError("line 5 must be empty")
    expected = 5 + n_objects + n_attributes + n_objects
    if len(lines) != expected:
        raise CxtFormatError(
            f"declared counts require {expected} lines, document has {len(lines)}"
        )
    objects = tuple(lines[5 : 5 + n_objects])
    attributes = tuple(lines[5 + n_objects : 5 + n_objects + n_attributes])
    rows = []
    row_start = 5 + n_objects + n_attributes
    for k in range(n_objects):
        line = lines[row_start + k]
        if len(line) != n_attributes:
            raise CxtFormatError(
                f"incidence row {k + 1} has length {len(line)}, expected {n_attributes}"
            )
        mask = 0
        for j, ch in enumerate(line):
            if ch == "X":
                mask |= 1 << j
            elif ch != ".":
                raise CxtFormatError(
                    f"incidence row {k + 1} contains {ch!r}; only '.' and 'X' are allowed"
                )
        rows.append(mask)
    try:
        return FormalContext(objects, attributes, tuple(rows), name)
    except ContextError as exc:
        raise CxtFormatError(str(exc)) from exc
