"""Concept lattices: enumeration, cover relation, and order metrics.

Concepts are enumerated with Next Closure, so ids follow the lectic order of
intents and are stable across runs. The cover relation is the transitive
reduction of extent containment. Width uses the chain-partition route (maximum
bipartite matching over the strict order); depth is the longest cover path
counted in vertices. Order dimension is exact: a totality check for 1, a
transitive orientation of the incomparability graph for 2, and backtracking
assignment of critical pairs to realizer slots from 3 upwards, under a step
budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .context import FormalContext, _iter_bits

__all__ = [
    "ConceptLattice",
    "DimensionResult",
    "FormalConcept",
    "LatticeError",
    "enumerate_concepts",
    "build_cover_relation",
    "order_dimension",
    "realizer_search",
    "width_depth",
]


class LatticeError(ValueError):
    """Invalid concept list or concept id."""


@dataclass(frozen=True)
class FormalConcept:
    """An (extent, intent) pair; the id is the lectic enumeration index."""

    id: int
    extent: frozenset[str]
    intent: frozenset[str]


def _iter_intent_masks(context: FormalContext) -> Iterator[int]:
    m = len(context.attributes)
    full = (1 << m) - 1
    current = context.close_attrs(0)
    yield current
    while current != full:
        for i in reversed(range(m)):
            bit = 1 << i
            if current & bit:
                current &= ~bit
            else:
                candidate = context.close_attrs(current | bit)
                if not (candidate & ~current) & (bit - 1):
                    current = candidate
                    break
        else:
            return
        yield current


def enumerate_concepts(context: FormalContext) -> list[FormalConcept]:
    """All formal concepts, each once, in lectic order of intents."""
    concepts = []
    for cid, intent_mask in enumerate(_iter_intent_masks(context)):
        extent_mask = context.extent_mask(intent_mask)
        concepts.append(
            FormalConcept(
                cid,
                context.object_labels(extent_mask),
                context.attribute_labels(intent_mask),
            )
        )
    return concepts


@dataclass(frozen=True)
class ConceptLattice:
    context: FormalContext
    concepts: tuple[FormalConcept, ...]
    covers: tuple[tuple[int, int], ...]  # (upper id, lower id)
    top_id: int
    bottom_id: int
    gamma: dict[str, int]  # object concept per article
    mu: dict[str, int]  # attribute concept per attribute
    _extent_masks: tuple[int, ...] = field(repr=False)
    _intent_masks: tuple[int, ...] = field(repr=False)

    # -- order primitives ----------------------------------------------------

    def check_id(self, concept_id: int) -> int:
        if not isinstance(concept_id, int) or not 0 <= concept_id < len(self.concepts):
            raise LatticeError(f"unknown concept id {concept_id!r}")
        return concept_id

    def leq(self, a: int, b: int) -> bool:
        """Concept ``a`` is below or equal to ``b`` (extent containment)."""
        ea, eb = self._extent_masks[self.check_id(a)], self._extent_masks[self.check_id(b)]
        return ea & ~eb == 0

    def upper_neighbors(self, concept_id: int) -> tuple[int, ...]:
        self.check_id(concept_id)
        return tuple(sorted(u for u, l in self.covers if l == concept_id))

    def lower_neighbors(self, concept_id: int) -> tuple[int, ...]:
        self.check_id(concept_id)
        return tuple(sorted(l for u, l in self.covers if u == concept_id))

    def meet(self, a: int, b: int) -> int:
        """The concept whose intent is the closure of intent(a) | intent(b)."""
        mask = self._intent_masks[self.check_id(a)] | self._intent_masks[self.check_id(b)]
        closed = self.context.close_attrs(mask)
        return self._intent_ids[closed]

    def join(self, a: int, b: int) -> int:
        """The concept whose extent is the closure of extent(a) | extent(b)."""
        mask = self._extent_masks[self.check_id(a)] | self._extent_masks[self.check_id(b)]
        closed = self.context.close_objects(mask)
        return self._extent_ids[closed]

    @property
    def _intent_ids(self) -> dict[int, int]:
        return {mask: i for i, mask in enumerate(self._intent_masks)}

    @property
    def _extent_ids(self) -> dict[int, int]:
        return {mask: i for i, mask in enumerate(self._extent_masks)}

    def strictly_below(self) -> list[int]:
        """Per concept, the bitmask of concepts strictly below it."""
        n = len(self.concepts)
        below = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and self._extent_masks[i] & ~self._extent_masks[j] == 0:
                    below[j] |= 1 << i
        return below

    @classmethod
    def from_context(cls, context: FormalContext) -> "ConceptLattice":
        return build_cover_relation(context, enumerate_concepts(context))


def build_cover_relation(
    context: FormalContext, concepts: Sequence[FormalConcept]
) -> ConceptLattice:
    """Wire a complete concept list into a lattice: transitive-reduction cover
    edges plus the object/attribute concept maps."""
    intent_masks = tuple(context.attribute_mask(c.intent) for c in concepts)
    if len(set(intent_masks)) != len(intent_masks):
        raise LatticeError("duplicate concepts")
    extent_masks = tuple(context.extent_mask(mask) for mask in intent_masks)
    for concept, mask in zip(concepts, extent_masks):
        if context.object_mask(concept.extent) != mask:
            raise LatticeError(
                f"concept {concept.id} is not closed: extent does not match intent'"
            )

    n = len(concepts)
    order = sorted(range(n), key=lambda i: -bin(extent_masks[i]).count("1"))
    covers: list[tuple[int, int]] = []
    for b in range(n):
        eb = extent_masks[b]
        accepted: list[int] = []
        for a in order:
            ea = extent_masks[a]
            if ea == eb or ea & ~eb:
                continue
            if any(ea & ~extent_masks[c] == 0 for c in accepted):
                continue
            accepted.append(a)
        covers.extend((b, a) for a in accepted)

    extent_ids = {mask: i for i, mask in enumerate(extent_masks)}
    full_objects = (1 << len(context.objects)) - 1
    top_id = extent_ids[full_objects]
    intent_ids = {mask: i for i, mask in enumerate(intent_masks)}
    bottom_id = intent_ids[context.close_attrs((1 << len(context.attributes)) - 1)]
    gamma = {
        g: extent_ids[context.close_objects(1 << i)]
        for i, g in enumerate(context.objects)
    }
    mu = {
        m: extent_ids[context.extent_mask(1 << j)]
        for j, m in enumerate(context.attributes)
    }
    return ConceptLattice(
        context,
        tuple(concepts),
        tuple(sorted(covers)),
        top_id,
        bottom_id,
        gamma,
        mu,
        extent_masks,
        intent_masks,
    )


# -- order metrics -------------------------------------------------------------


def width_depth(lattice: ConceptLattice) -> tuple[int, int]:
    """(width, depth): largest antichain and longest chain, in element counts.

    Width comes out of Dilworth's theorem: the minimum chain partition found
    by maximum bipartite matching over the strict order equals the maximum
    antichain. Depth is the longest path in the cover DAG plus one.
    """
    n = len(lattice.concepts)
    below = lattice.strictly_below()

    match_right: dict[int, int] = {}
    match_left: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in _iter_bits(below[u]):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    matched = 0
    for u in range(n):
        if augment(u, set()):
            matched += 1
    width = n - matched

    # longest path: process concepts from top downwards (larger extents first)
    order = sorted(range(n), key=lambda i: -bin(lattice._extent_masks[i]).count("1"))
    depth_of = [1] * n
    lowers = {i: [l for u, l in lattice.covers if u == i] for i in range(n)}
    for u in order:
        for l in lowers[u]:
            depth_of[l] = max(depth_of[l], depth_of[u] + 1)
    return width, max(depth_of) if n else 0


@dataclass(frozen=True)
class DimensionResult:
    """Order dimension, or a proven lower bound when the budget ran out."""

    value: int
    exact: bool = True

    def __str__(self) -> str:
        return str(self.value) if self.exact else f"unknown(≥{self.value})"


def order_dimension(lattice: ConceptLattice, budget: int = 500_000) -> DimensionResult:
    """Smallest k such that k linear extensions intersect to the concept order.

    k=1 is the totality check, k=2 transitive orientability of the
    incomparability graph, and k>=3 backtracking assignment of critical pairs
    to k realizer slots. ``budget`` caps backtracking steps; on exhaustion the
    result is the proven lower bound with ``exact=False``.
    """
    n = len(lattice.concepts)
    less = _less_matrix(lattice)

    incomparable = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if not less[i][j] and not less[j][i]
    ]
    if not incomparable:
        return DimensionResult(1)

    realizer = _conjugate_realizer(n, less, incomparable)
    if realizer is not None:
        return DimensionResult(2)

    pairs = _critical_pairs(n, less)
    steps = 0
    k = 3
    while k <= max(3, n):
        found, steps = _assign_critical_pairs(n, less, pairs, k, budget, steps)
        if found is None:
            return DimensionResult(k, exact=False)
        if found:
            return DimensionResult(k)
        k += 1
    return DimensionResult(k, exact=False)


def realizer_search(lattice: ConceptLattice, k: int, budget: int = 500_000) -> bool | None:
    """Can the order be realized by k linear extensions? Pure backtracking
    over critical pairs, independent of the orientability shortcut; None when
    the budget runs out."""
    less = _less_matrix(lattice)
    n = len(lattice.concepts)
    if all(less[i][j] or less[j][i] for i in range(n) for j in range(i + 1, n)):
        return k >= 1
    if k < 2:
        return False
    found, _ = _assign_critical_pairs(n, less, _critical_pairs(n, less), k, budget, 0)
    return found


def _less_matrix(lattice: ConceptLattice) -> list[list[bool]]:
    n = len(lattice.concepts)
    below = lattice.strictly_below()
    return [[bool(below[j] >> i & 1) for j in range(n)] for i in range(n)]


def _conjugate_realizer(
    n: int, less: list[list[bool]], incomparable: list[tuple[int, int]]
) -> tuple[list[int], list[int]] | None:
    """Try to orient the incomparability graph transitively; on success return
    the two linear extensions it induces (verified), else None."""
    adj = [0] * n
    for i, j in incomparable:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    oriented: set[tuple[int, int]] = set()

    def orient_from(a: int, b: int) -> bool:
        """Seed an unoriented edge a->b and propagate the forcing closure."""
        oriented.add((a, b))
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            # x->y forces x->c for edges xc with yc missing, and c->y for
            # edges cy with cx missing
            for c in _iter_bits(adj[x] & ~adj[y] & ~(1 << y)):
                if (c, x) in oriented:
                    return False
                if (x, c) not in oriented:
                    oriented.add((x, c))
                    queue.append((x, c))
            for c in _iter_bits(adj[y] & ~adj[x] & ~(1 << x)):
                if (y, c) in oriented:
                    return False
                if (c, y) not in oriented:
                    oriented.add((c, y))
                    queue.append((c, y))
        return True

    for i, j in incomparable:
        if (i, j) in oriented or (j, i) in oriented:
            continue
        if not orient_from(i, j):
            return None

    conjugate = [[False] * n for _ in range(n)]
    for (a, b) in oriented:
        conjugate[a][b] = True
    # verify: the orientation plus the order must give two linear extensions
    # whose intersection is the order
    first = _topo_linear(n, lambda a, b: less[a][b] or conjugate[a][b])
    second = _topo_linear(n, lambda a, b: less[a][b] or conjugate[b][a])
    if first is None or second is None:
        return None
    pos1 = {v: i for i, v in enumerate(first)}
    pos2 = {v: i for i, v in enumerate(second)}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            both = pos1[a] < pos1[b] and pos2[a] < pos2[b]
            if both != less[a][b]:
                return None
    return first, second


def _topo_linear(n: int, arc) -> list[int] | None:
    indeg = [0] * n
    for a in range(n):
        for b in range(n):
            if a != b and arc(a, b):
                indeg[b] += 1
    out: list[int] = []
    ready = sorted(v for v in range(n) if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        out.append(v)
        for w in range(n):
            if w != v and arc(v, w):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        ready.sort()
    return out if len(out) == n else None


def _critical_pairs(n: int, less: list[list[bool]]) -> list[tuple[int, int]]:
    """(x, y) incomparable with downset(x) <= downset(y), upset(y) <= upset(x)."""
    down = [set(j for j in range(n) if less[j][i]) for i in range(n)]
    up = [set(j for j in range(n) if less[i][j]) for i in range(n)]
    out = []
    for x in range(n):
        for y in range(n):
            if x == y or less[x][y] or less[y][x]:
                continue
            if down[x] <= down[y] and up[y] <= up[x]:
                out.append((x, y))
    return out


def _assign_critical_pairs(
    n: int,
    less: list[list[bool]],
    pairs: list[tuple[int, int]],
    k: int,
    budget: int,
    steps: int,
) -> tuple[bool | None, int]:
    """Backtracking: can the critical pairs be split into k reversible sets?

    Returns (True/False, steps) on a definite answer, (None, steps) when the
    step budget is exhausted.
    """
    base_reach = [0] * n
    for a in range(n):
        for b in range(n):
            if less[a][b]:
                base_reach[a] |= 1 << b

    def close(reach: list[int]) -> list[int]:
        changed = True
        while changed:
            changed = False
            for a in range(n):
                extra = reach[a]
                for b in _iter_bits(reach[a]):
                    extra |= reach[b]
                if extra != reach[a]:
                    reach[a] = extra
                    changed = True
        return reach

    base_reach = close(base_reach)
    slots = [list(base_reach) for _ in range(k)]

    def assign(idx: int, used: int, steps: int) -> tuple[bool | None, int]:
        if idx == len(pairs):
            return True, steps
        x, y = pairs[idx]
        limit = min(used + 1, k)
        for slot in range(limit):
            steps += 1
            if steps > budget:
                return None, steps
            reach = slots[slot]
            if reach[x] >> y & 1:
                continue  # reversing (x, y) here would close a cycle
            snapshot = list(reach)
            # add arc y -> x and re-close
            reach[y] |= 1 << x | reach[x]
            for v in range(n):
                if reach[v] >> y & 1:
                    reach[v] |= reach[y]
            result, steps = assign(idx + 1, max(used, slot + 1), steps)
            if result:
                return True, steps
            slots[slot] = snapshot
            if result is None:
                return None, steps
        return False, steps

    return assign(0, 0, steps)
