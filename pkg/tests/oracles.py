"""Independent oracles the production code is validated against.

Nothing here calls the package's propagation or enumeration machinery.
Endomorphisms are recovered by expressing every element as a word in a
minimal generating tuple (found by exhaustive combination search) and
filtering all |G|^k image assignments through a full multiplication
table check.  A literal |G|^|G| filter validates that oracle in turn on
groups small enough to afford it.
"""

from __future__ import annotations

from itertools import combinations, product

from subindep.groups import FiniteGroup
from subindep.perm import Permutation


def minimal_generating_tuples(group: FiniteGroup, max_size: int = 3):
    """All generating tuples of the smallest size, via plain search."""
    if group.order == 1:
        return [()]
    els = group.elements[1:]
    for k in range(1, max_size + 1):
        found = [c for c in combinations(els, k) if _generates(c, group)]
        if found:
            return found
    raise AssertionError(f"group of order {group.order} not {max_size}-generated")


def _generates(gens, group: FiniteGroup) -> bool:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == group.order


def element_words(group: FiniteGroup, gens) -> dict[Permutation, tuple[int, ...]]:
    """Express every element as a word (tuple of generator positions)."""
    words = {group.identity: ()}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for pos, g in enumerate(gens):
                y = x * g
                if y not in words:
                    words[y] = words[x] + (pos,)
                    nxt.append(y)
        frontier = nxt
    assert len(words) == group.order
    return words


_WORD_TABLE_CACHE: dict[tuple, list[tuple[int, ...]]] = {}


def endomorphism_tables_by_words(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All endomorphism tables of the group, with no pruning beyond the
    final full multiplication check.

    Every assignment of images to a minimal generating tuple is turned
    into a candidate map through the word expressions, then kept only if
    it preserves every product.  Sorted tables, ready to compare against
    the package's enumeration.
    """
    key = group.elements
    if key in _WORD_TABLE_CACHE:
        return _WORD_TABLE_CACHE[key]
    gens = minimal_generating_tuples(group)[0]
    words = element_words(group, gens)
    els = group.elements
    tables = set()
    for images in product(els, repeat=len(gens)):
        mapping = {}
        for x, word in words.items():
            y = group.identity
            for pos in word:
                y = y * images[pos]
            mapping[x] = y
        if all(mapping[x * y] == mapping[x] * mapping[y] for x in els for y in els):
            tables.add(tuple(group.index_of(mapping[x]) for x in els))
    result = sorted(tables)
    _WORD_TABLE_CACHE[key] = result
    return result


def endomorphism_tables_literal(group: FiniteGroup) -> list[tuple[int, ...]]:
    """The |G|^|G| filter, literally.  Only sane for |G| <= 6."""
    els = group.elements
    n = len(els)
    idx = {x: i for i, x in enumerate(els)}
    mul = [[idx[els[i] * els[j]] for j in range(n)] for i in range(n)]
    tables = []
    for assign in product(range(n), repeat=n):
        if all(assign[mul[i][j]] == mul[assign[i]][assign[j]]
               for i in range(n) for j in range(n)):
            tables.append(assign)
    return sorted(tables)


def compatible_by_global_search(alpha_table, beta_table, a: FiniteGroup,
                                b: FiniteGroup, join: FiniteGroup) -> int:
    """How many endomorphisms of the join restrict to the given maps.

    Compatibility means at least one; uniqueness of extensions means the
    count is never above one.  alpha_table/beta_table map elements of A
    and B (in their element order) to permutations.
    """
    alpha = dict(zip(a.elements, alpha_table))
    beta = dict(zip(b.elements, beta_table))
    count = 0
    for table in endomorphism_tables_by_words(join):
        gamma = {x: join.elements[table[i]] for i, x in enumerate(join.elements)}
        if all(gamma[x] == alpha[x] for x in a.elements) and \
                all(gamma[x] == beta[x] for x in b.elements):
            count += 1
    return count


def independent_by_global_search(a: FiniteGroup, b: FiniteGroup,
                                 join: FiniteGroup) -> bool:
    """Independence decided purely by restriction search over End(join)."""
    end_a = endomorphism_tables_by_words(a)
    end_b = endomorphism_tables_by_words(b)
    end_j = endomorphism_tables_by_words(join)
    restrictions = set()
    for table in end_j:
        gamma = {x: join.elements[table[i]] for i, x in enumerate(join.elements)}
        ra = tuple(join.index_of(gamma[x]) for x in a.elements)
        rb = tuple(join.index_of(gamma[x]) for x in b.elements)
        restrictions.add((ra, rb))
    for ta in end_a:
        ra = tuple(join.index_of(a.elements[i]) for i in ta)
        for tb in end_b:
            rb = tuple(join.index_of(b.elements[i]) for i in tb)
            if (ra, rb) not in restrictions:
                return False
    return True


def semigroup_closure(elements, degree: int) -> frozenset[Permutation]:
    """Products-only closure: positive words in the given elements plus
    the identity.  For permutations this equals the generated subgroup."""
    ident = Permutation.identity(degree)
    seen = {ident} | set(elements)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in elements:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def normal_subgroups_containing(sub_elements, group: FiniteGroup,
                                lattice) -> list[frozenset]:
    """All normal subgroups of the group (from a provided lattice) that
    contain the given element set; the smallest is the normal closure."""
    out = []
    target = set(sub_elements)
    for cand in lattice:
        cand_set = set(cand.elements)
        if not target <= cand_set:
            continue
        if all(x.conjugated_by(g) in cand_set
               for x in cand.elements for g in group.elements):
            out.append(frozenset(cand_set))
    return sorted(out, key=len)


def endomorphism_tables_pruned(group: FiniteGroup) -> list[tuple[int, ...]]:
    """The |G|^|G| function filter, realized by assigning an image to one
    table position at a time and abandoning a prefix as soon as any fully
    determined product constraint fails.  Unlike the word route this never
    looks at generators; it is a straight depth-first scan of the function
    space and agrees with the unpruned filter by construction."""
    n = group.order
    els = group.elements
    prod = [[group.index_of(els[i] * els[j]) for j in range(n)]
            for i in range(n)]
    tables: list[tuple[int, ...]] = []
    assign = [0] * n

    def consistent(k: int) -> bool:
        for i in range(k + 1):
            for j in range(k + 1):
                p = prod[i][j]
                if p <= k and assign[p] != prod[assign[i]][assign[j]]:
                    return False
        return True

    def descend(k: int) -> None:
        if k == n:
            tables.append(tuple(assign))
            return
        for img in range(n):
            assign[k] = img
            if consistent(k):
                descend(k + 1)

    descend(0)
    return sorted(tables)
