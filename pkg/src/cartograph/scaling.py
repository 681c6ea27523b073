"""The convention scale and its three resolution levels.

Every (article, convention) annotation is a non-empty subset of the four
markers R, T, I, E: positive reference as justification (R) or topic (T),
negative reference as internal (I) or external (E) critique. The scale turns
such a marker set into up to seven derived attributes per convention; an
attribute fires when the marker set meets its trigger set, so a lone T marker
yields the bare convention attribute plus its "+" and "+ T" variants.
"""

from __future__ import annotations

from .context import ContextError, FormalContext
from .corpus import CONVENTIONS, MARKERS, AnnotationCorpus, normalize_convention

__all__ = [
    "CONVENTIONS",
    "MARKERS",
    "SCALE_KINDS",
    "ScaleError",
    "apply_scale",
    "attribute_name",
    "attribute_parts",
    "convention_of",
    "is_coarser_view",
    "level_kinds",
    "marginals",
    "normalize_convention",
    "polar_attribute",
    "scaled_attributes",
]

DISPLAY = {"market": "Market", "green": "Green", "state": "State", "industry": "Industry"}

# Derived attribute kinds in canonical order, each with its name suffix and
# trigger marker set. The triggers encode the scale's cross pattern: the bare
# kind fires on any marker, "+" on a positive one, "-" on a negative one, and
# the four refined kinds on their single marker.
SCALE_KINDS: tuple[tuple[str, frozenset[str]], ...] = (
    ("", frozenset("RTIE")),
    (" +", frozenset("RT")),
    (" + R", frozenset("R")),
    (" + T", frozenset("T")),
    (" -", frozenset("IE")),
    (" - I", frozenset("I")),
    (" - E", frozenset("E")),
)

_TRIGGERS = dict(SCALE_KINDS)

_LEVEL_SUFFIXES = {
    1: ("",),
    2: ("", " +", " -"),
    3: tuple(suffix for suffix, _ in SCALE_KINDS),
}

# Polar counterpart of each kind suffix: "+" and "-" swap; the refined
# positive kinds point at "-" and the refined negative kinds at "+". The bare
# convention has no polar image.
_POLAR_SUFFIX = {" +": " -", " -": " +", " + R": " -", " + T": " -", " - I": " +", " - E": " +"}


class ScaleError(ValueError):
    """Unknown convention, level, or attribute name."""


def level_kinds(level: int) -> tuple[str, ...]:
    if level not in _LEVEL_SUFFIXES:
        raise ScaleError(f"level must be 1, 2 or 3, got {level!r}")
    return _LEVEL_SUFFIXES[level]


def attribute_name(convention: str, suffix: str = "") -> str:
    return DISPLAY[normalize_convention(convention)] + suffix


def scaled_attributes(conventions: tuple[str, ...], level: int) -> tuple[str, ...]:
    """Derived attribute labels: per convention (given order), the level's
    kinds in canonical kind order."""
    suffixes = level_kinds(level)
    return tuple(attribute_name(c, suffix) for c in conventions for suffix in suffixes)


def attribute_parts(label: str) -> tuple[str, str]:
    """Split a scaled attribute label into (convention, kind suffix)."""
    for convention, display in DISPLAY.items():
        if label == display:
            return convention, ""
        if label.startswith(display + " "):
            suffix = label[len(display):]
            if suffix in _TRIGGERS:
                return convention, suffix
    raise ScaleError(f"not a scaled attribute label: {label!r}")


def convention_of(label: str) -> str:
    return attribute_parts(label)[0]


def polar_attribute(label: str) -> str | None:
    """The positive/negative counterpart of a scaled attribute, if any."""
    convention, suffix = attribute_parts(label)
    polar = _POLAR_SUFFIX.get(suffix)
    if polar is None:
        return None
    return attribute_name(convention, polar)


def apply_scale(
    corpus: AnnotationCorpus,
    conventions: tuple[str, ...] = CONVENTIONS,
    level: int = 3,
) -> FormalContext:
    """Scale a corpus into a formal context.

    Objects are the corpus articles in order; attributes the scaled convention
    attributes; an article is incident with a derived attribute iff its marker
    set for that convention meets the attribute's trigger set. An empty corpus
    yields a context with zero objects.
    """
    if not conventions:
        raise ScaleError("at least one convention is required")
    normalized = tuple(normalize_convention(c) for c in conventions)
    if len(set(normalized)) != len(normalized):
        raise ScaleError("duplicate conventions in scale request")
    suffixes = level_kinds(level)
    attributes = scaled_attributes(normalized, level)
    rows = []
    for article in corpus.articles:
        mask = 0
        bit = 0
        for convention in normalized:
            markers = corpus.markers(article, convention)
            for suffix in suffixes:
                if markers & _TRIGGERS[suffix]:
                    mask |= 1 << bit
                bit += 1
        rows.append(mask)
    name = f"{corpus.journal_id} L{level}" if corpus.journal_id else f"L{level}"
    return FormalContext(tuple(corpus.articles), attributes, tuple(rows), name)


def marginals(context: FormalContext) -> dict[str, int]:
    """Per-attribute object counts, plus the total under key ``"|I|"``."""
    counts = {m: col.bit_count() for m, col in zip(context.attributes, context.columns())}
    counts["|I|"] = context.incidence_count
    return counts


def is_coarser_view(coarse: FormalContext, fine: FormalContext) -> bool:
    """True iff every extent of ``coarse`` is an extent of ``fine``.

    Checked by closing each extent of the coarse context in the fine one;
    both contexts must share the same object list.
    """
    if coarse.objects != fine.objects:
        raise ContextError("contexts do not share the same object list")
    from .lattice import enumerate_concepts  # lattice builds on context

    for concept in enumerate_concepts(coarse):
        mask = fine.object_mask(concept.extent)
        if fine.close_objects(mask) != mask:
            return False
    return True
