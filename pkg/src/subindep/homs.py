"""Endomorphism enumeration and extension of map pairs to a join.

The extension question is the heart of the package: given endomorphisms
alpha of A and beta of B, is there an endomorphism of <A u B> agreeing
with both?  Such a map is unique when it exists, because A and B
together generate the join, so we can build it by forced propagation
and report the exact element where the forcing first clashes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .groups import (
    DEFAULT_ENDO_BUDGET,
    BudgetExceeded,
    FiniteGroup,
    GroupMap,
    SubgroupPair,
    greedy_generators,
    identity_map,
    propagate_images,
    trivial_map,
)
from .perm import Permutation


@lru_cache(maxsize=None)
def _endomorphisms(g: FiniteGroup) -> tuple[GroupMap, ...]:
    gens = greedy_generators(g)
    gen_idx = [g.index_of(x) for x in gens]
    gen_orders = [x.order() for x in gens]
    # The image of an element must have order dividing the element's order.
    candidates = [
        [j for j, y in enumerate(g.elements) if o % y.order() == 0]
        for o in gen_orders
    ]
    tables = set()
    for combo in product(*candidates):
        table, conflict = propagate_images(g, g, gen_idx, combo)
        if conflict is None:
            tables.add(table)
    return tuple(GroupMap(g, g, t) for t in sorted(tables))


def enumerate_endomorphisms(g: FiniteGroup, endo_budget: int = DEFAULT_ENDO_BUDGET) -> list[GroupMap]:
    """All endomorphisms of g, deduplicated and sorted by their full image
    tables in canonical element order.

    Candidate generator images are pruned by order divisibility and each
    surviving choice is validated by propagation over the whole
    multiplication table, so every returned map is a genuine
    homomorphism and none is missed.
    """
    if g.order > endo_budget:
        raise BudgetExceeded("endo_budget", endo_budget, "enumerating endomorphisms")
    return list(_endomorphisms(g))


@dataclass(frozen=True)
class ExtensionConflict:
    """An element of the join forced to two distinct images."""

    element: Permutation
    image_a: Permutation
    image_b: Permutation


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of extending an endomorphism pair to the join: either the
    unique common extension or the first conflict encountered."""

    map: GroupMap | None
    conflict: ExtensionConflict | None

    @property
    def exists(self) -> bool:
        return self.map is not None


def _require_endomorphism(m: GroupMap, g: FiniteGroup, name: str) -> None:
    if m.domain != g or m.codomain != g:
        raise ValueError(f"{name} is not an endomorphism of the expected subgroup")


def extend(alpha: GroupMap, beta: GroupMap, pair: SubgroupPair) -> ExtensionResult:
    """Extend (alpha on A, beta on B) to the join, or fail with a witness.

    Propagates images from the identity out along right multiplication by
    the generators of A and B, each carrying its alpha- or beta-image.
    Every product edge is checked, not just a spanning tree, so a
    returned map is a verified homomorphism; agreement with alpha on all
    of A and with beta on all of B is then checked rather than assumed.
    """
    _require_endomorphism(alpha, pair.a, "alpha")
    _require_endomorphism(beta, pair.b, "beta")
    j = pair.join
    gen_idx = []
    image_idx = []
    for g in pair.a.generators:
        gen_idx.append(j.index_of(g))
        image_idx.append(j.index_of(alpha(g)))
    for g in pair.b.generators:
        gen_idx.append(j.index_of(g))
        image_idx.append(j.index_of(beta(g)))
    table, conflict = propagate_images(j, j, gen_idx, image_idx)
    if conflict is not None:
        y, c1, c2 = conflict
        return ExtensionResult(None, ExtensionConflict(j.elements[y], j.elements[c1], j.elements[c2]))
    for x in pair.a.elements:
        got = j.elements[table[j.index_of(x)]]
        want = alpha(x)
        if got != want:
            return ExtensionResult(None, ExtensionConflict(x, got, want))
    for x in pair.b.elements:
        got = j.elements[table[j.index_of(x)]]
        want = beta(x)
        if got != want:
            return ExtensionResult(None, ExtensionConflict(x, got, want))
    return ExtensionResult(GroupMap(j, j, table), None)


def is_compatible(alpha: GroupMap, beta: GroupMap, pair: SubgroupPair) -> bool:
    """True iff the pair (alpha, beta) has a common extension to the join."""
    return extend(alpha, beta, pair).exists


__all__ = [
    "ExtensionConflict",
    "ExtensionResult",
    "enumerate_endomorphisms",
    "extend",
    "identity_map",
    "is_compatible",
    "trivial_map",
]
