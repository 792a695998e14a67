"""Finite permutation groups as explicit, canonically sorted element sets.

Everything here is exhaustive and deterministic: groups are closures of
generator lists, element tuples are sorted lexicographically by image
array (so the identity sits at index 0), and membership uses binary
search on that order.  Budgets guard against accidentally materializing
a group that is too large; callers see BudgetExceeded and report an
inconclusive outcome instead of thrashing.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation, cycle_string

DEFAULT_MAX_GROUP_ORDER = 5040
DEFAULT_ENDO_BUDGET = 256
DEFAULT_ISO_BUDGET = 512


class BudgetExceeded(RuntimeError):
    """A size budget was hit; the computation was abandoned, not wrong."""

    def __init__(self, budget: str, limit: int, context: str):
        super().__init__(f"{budget} limit {limit} exceeded while {context}")
        self.budget = budget
        self.limit = limit
        self.context = context


class FiniteGroup:
    """A finite permutation group held as its full sorted element tuple.

    elements is sorted lexicographically by image arrays; generators is a
    (possibly empty) tuple of non-identity elements whose closure is the
    element set.  Instances are immutable in intent; the only mutable
    state is a lazy right-multiplication cache used by the homomorphism
    machinery.
    """

    __slots__ = ("degree", "elements", "generators", "_mul_cols", "_classes")

    def __init__(self, elements: tuple[Permutation, ...], generators: tuple[Permutation, ...], degree: int):
        self.degree = degree
        self.elements = elements
        self.generators = generators
        self._mul_cols: dict[int, tuple[int, ...]] = {}
        self._classes: "ConjClassPartition | None" = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def index_of(self, p: Permutation) -> int:
        i = bisect_left(self.elements, p)
        if i < len(self.elements) and self.elements[i] == p:
            return i
        raise KeyError(f"{p!r} is not an element")

    def __contains__(self, p: Permutation) -> bool:
        i = bisect_left(self.elements, p)
        return i < len(self.elements) and self.elements[i] == p

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        gens = ", ".join(cycle_string(g) for g in self.generators) or "e"
        return f"<group deg={self.degree} order={self.order} gens=[{gens}]>"

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and all(x in other for x in self.elements)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(g * h == h * g for g, h in itertools.combinations(gens, 2))

    def element_order_counts(self) -> Counter:
        return Counter(p.order() for p in self.elements)

    def _col(self, c: int) -> tuple[int, ...]:
        """Right multiplication by elements[c], as an index array."""
        col = self._mul_cols.get(c)
        if col is None:
            pc = self.elements[c]
            col = tuple(self.index_of(x * pc) for x in self.elements)
            self._mul_cols[c] = col
        return col


def _clean_generators(generators: Iterable[Permutation], degree: int) -> list[Permutation]:
    gens: list[Permutation] = []
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} does not match {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    return gens


def closure(generators: Iterable[Permutation], degree: int,
            max_order: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """The subgroup generated by the given permutations.

    Breadth-first closure under right multiplication by the generators;
    in a finite group this also yields all inverses.  Raises
    BudgetExceeded as soon as the element count would pass max_order.
    """
    gens = _clean_generators(generators, degree)
    e = Permutation.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    if len(seen) >= max_order:
                        raise BudgetExceeded("max_group_order", max_order, "closing a generator set")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return FiniteGroup(tuple(sorted(seen)), tuple(gens), degree)


def from_elements(elements: Iterable[Permutation], degree: int) -> FiniteGroup:
    """Wrap an already closed element set as a FiniteGroup.

    A small generating set is rebuilt by a single ascending pass: an
    element is kept as a generator exactly when the previous generators
    do not already produce it.  Raises ValueError if the set is not
    closed under the group operations.
    """
    els = tuple(sorted(set(elements)))
    if not els:
        raise ValueError("element set is empty")
    gens: list[Permutation] = []
    produced = {Permutation.identity(degree)}
    try:
        for x in els:
            if x not in produced:
                gens.append(x)
                produced = set(closure(gens, degree, max_order=len(els)).elements)
    except BudgetExceeded:
        raise ValueError("element set is not a group") from None
    group = FiniteGroup(els, tuple(gens), degree)
    if len(produced) != len(els) or group.identity != Permutation.identity(degree):
        raise ValueError("element set is not a group")
    return group


def symmetric_group(n: int, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return closure([], 1, max_order)
    swap = Permutation(tuple([1, 0] + list(range(2, n))))
    cyc = Permutation(tuple(list(range(1, n)) + [0]))
    return closure([swap, cyc], n, max_order)


def join(a: FiniteGroup, b: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """Smallest subgroup containing both: the closure of the union of the
    two generator lists."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    return closure(list(a.generators) + list(b.generators), a.degree, max_order)


def normal_closure(s: FiniteGroup, g: FiniteGroup) -> FiniteGroup:
    """Smallest normal subgroup of g containing s.

    Closes the generator set of s under conjugation by the generators of
    g (reaching conjugates by every element of g), then closes the result
    multiplicatively.  Bounded by |g|, so no budget applies.
    """
    if not s.is_subgroup_of(g):
        raise ValueError("s is not a subgroup of g")
    conj_gens: list[Permutation] = []
    seen: set[Permutation] = set()
    pending = list(s.generators)
    while pending:
        x = pending.pop(0)
        if x in seen:
            continue
        seen.add(x)
        conj_gens.append(x)
        for t in g.generators:
            c = x.conjugated_by(t)
            if c not in seen:
                pending.append(c)
    return closure(conj_gens, g.degree, max_order=g.order)


def intersection(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    common = [x for x in a.elements if x in b]
    return from_elements(common, a.degree)


def is_normal_in(h: FiniteGroup, g: FiniteGroup) -> bool:
    """True iff t h t^-1 = h for every t in g.

    Conjugating the generators of h by the generators of g suffices:
    conjugation is injective, so t h t^-1 inside h forces equality, and
    generator conjugations compose to arbitrary ones.
    """
    if not h.is_subgroup_of(g):
        raise ValueError("h is not a subgroup of g")
    for t in g.generators:
        for x in h.generators:
            if x.conjugated_by(t) not in h:
                return False
    return True


@dataclass(frozen=True)
class ConjClassPartition:
    """Conjugacy classes of a group: tuples of elements, each sorted, the
    classes ordered by their least element (the identity class first)."""

    group: FiniteGroup
    classes: tuple[tuple[Permutation, ...], ...]

    def class_index_of(self, p: Permutation) -> int:
        for i, cls in enumerate(self.classes):
            j = bisect_left(cls, p)
            if j < len(cls) and cls[j] == p:
                return i
        raise KeyError(f"{p!r} is not an element")

    def same_class(self, x: Permutation, y: Permutation) -> bool:
        return self.class_index_of(x) == self.class_index_of(y)

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.classes))


def conjugacy_classes(g: FiniteGroup) -> ConjClassPartition:
    if g._classes is not None:
        return g._classes
    assigned: set[Permutation] = set()
    classes: list[tuple[Permutation, ...]] = []
    for x in g.elements:
        if x in assigned:
            continue
        orbit = {x}
        pending = [x]
        while pending:
            y = pending.pop()
            for t in g.generators:
                c = y.conjugated_by(t)
                if c not in orbit:
                    orbit.add(c)
                    pending.append(c)
        cls = tuple(sorted(orbit))
        classes.append(cls)
        assigned.update(orbit)
    part = ConjClassPartition(g, tuple(classes))
    g._classes = part
    return part


class QuotientGroup(FiniteGroup):
    """g/n realized as the permutation action of g on the cosets of n.

    Cosets are numbered by their least representative in ascending order,
    so coset 0 is n itself; each element of the quotient is the
    permutation of coset indices induced by left multiplication, and the
    correspondence coset <-> permutation is bijective because n is the
    kernel of the action.  Coset products then coincide with permutation
    products.
    """

    __slots__ = ("source", "kernel", "cosets", "coset_reps", "_coset_index")

    def __init__(self, base: FiniteGroup, source: FiniteGroup, kernel: FiniteGroup,
                 cosets: tuple[tuple[Permutation, ...], ...], coset_index: dict[Permutation, int]):
        super().__init__(base.elements, base.generators, base.degree)
        self.source = source
        self.kernel = kernel
        self.cosets = cosets
        self.coset_reps = tuple(c[0] for c in cosets)
        self._coset_index = coset_index

    def project(self, x: Permutation) -> Permutation:
        """The quotient element (coset-index permutation) of x in source."""
        if x not in self.source:
            raise KeyError(f"{x!r} is not in the source group")
        return Permutation(tuple(self._coset_index[x * r] for r in self.coset_reps))


def quotient(g: FiniteGroup, n: FiniteGroup) -> QuotientGroup:
    """The quotient group g/n for n normal in g."""
    if not is_normal_in(n, g):
        raise ValueError("subgroup is not normal")
    coset_index: dict[Permutation, int] = {}
    cosets: list[tuple[Permutation, ...]] = []
    for x in g.elements:
        if x in coset_index:
            continue
        members = tuple(sorted(x * m for m in n.elements))
        idx = len(cosets)
        for m in members:
            coset_index[m] = idx
        cosets.append(members)
    k = len(cosets)
    reps = [c[0] for c in cosets]
    gen_perms = [Permutation(tuple(coset_index[t * r] for r in reps)) for t in g.generators]
    base = closure(gen_perms, k, max_order=k)
    return QuotientGroup(base, g, n, tuple(cosets), coset_index)


def greedy_generators(g: FiniteGroup) -> tuple[Permutation, ...]:
    """A small generating set: repeatedly add the element whose addition
    grows the generated subgroup the most, first such element winning
    ties.  Produces at most log2|g| generators."""
    if g.order == 1:
        return ()
    chosen: list[Permutation] = []
    current: set[Permutation] = {g.identity}
    while len(current) < g.order:
        best = None
        best_size = len(current)
        for x in g.elements:
            if x in current:
                continue
            size = closure(chosen + [x], g.degree, max_order=g.order).order
            if size > best_size:
                best = x
                best_size = size
        chosen.append(best)
        current = set(closure(chosen, g.degree, max_order=g.order).elements)
    return tuple(chosen)


def propagate_images(domain: FiniteGroup, codomain: FiniteGroup,
                     gen_idx: Sequence[int], image_idx: Sequence[int]):
    """Build the unique map f with f(identity) = identity and
    f(x * gen) = f(x) * image, checking every product edge.

    Works over element indices.  Returns (table, None) where table[i] is
    the codomain index of the image of domain element i, or (None,
    (i, a, b)) naming the first domain element forced to two distinct
    images a and b.  A total consistent table is automatically a
    homomorphism: consistency on all edges extends multiplicativity from
    generators to arbitrary products.
    """
    k = domain.order
    gen_cols = [domain._col(i) for i in gen_idx]
    img_cols = [codomain._col(i) for i in image_idx]
    table = [-1] * k
    table[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        fx = table[x]
        for gc, ic in zip(gen_cols, img_cols):
            y = gc[x]
            fy = ic[fx]
            cur = table[y]
            if cur < 0:
                table[y] = fy
                queue.append(y)
            elif cur != fy:
                return None, (y, cur, fy)
    if qi != k:
        raise ValueError("generators do not generate the domain")
    return tuple(table), None


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism between finite groups, stored as the tuple of
    codomain element indices aligned with domain.elements."""

    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: Permutation) -> Permutation:
        return self.codomain.elements[self.images[self.domain.index_of(x)]]

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.images == tuple(range(self.domain.order))

    def is_trivial(self) -> bool:
        return all(i == 0 for i in self.images)

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.domain.order == self.codomain.order

    def table_strings(self) -> dict[str, str]:
        return {cycle_string(x): cycle_string(self.codomain.elements[i])
                for x, i in zip(self.domain.elements, self.images)}

    def check_homomorphism(self) -> bool:
        """Full |G|^2 verification of f(xy) = f(x)f(y); test support."""
        dom, cod = self.domain, self.codomain
        for i, x in enumerate(dom.elements):
            for j, y in enumerate(dom.elements):
                lhs = self.images[dom.index_of(x * y)]
                rhs = cod.index_of(cod.elements[self.images[i]] * cod.elements[self.images[j]])
                if lhs != rhs:
                    return False
        return True

    def __repr__(self) -> str:
        kind = "id" if self.is_identity() else ("triv" if self.is_trivial() else "map")
        return f"<{kind} on order {self.domain.order}>"


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, tuple(range(g.order)))


def trivial_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, g, (0,) * g.order)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup,
                  iso_budget: int = DEFAULT_ISO_BUDGET) -> tuple[bool, GroupMap | None]:
    """Decide isomorphism and produce a witness map when one exists.

    Cheap invariants (order, element-order multiset, abelianness,
    conjugacy class sizes) prune first; the remaining search maps a
    greedy generating set of g to order-matched candidates in h and
    propagates each choice through the full multiplication table.
    """
    if max(g.order, h.order) > iso_budget:
        raise BudgetExceeded("iso_budget", iso_budget, "testing isomorphism")
    if g.order != h.order:
        return False, None
    if g.element_order_counts() != h.element_order_counts():
        return False, None
    if g.is_abelian() != h.is_abelian():
        return False, None
    if conjugacy_classes(g).sizes() != conjugacy_classes(h).sizes():
        return False, None
    gens = greedy_generators(g)
    gen_idx = [g.index_of(x) for x in gens]
    candidates = []
    for x in gens:
        ox = x.order()
        candidates.append([j for j, y in enumerate(h.elements) if y.order() == ox])
    for combo in itertools.product(*candidates):
        table, conflict = propagate_images(g, h, gen_idx, combo)
        if conflict is None and len(set(table)) == g.order:
            return True, GroupMap(g, h, table)
    return False, None


class SubgroupPair:
    """Two subgroups of a common symmetric group, with lazily cached join,
    normal closures in the join, and intersection."""

    def __init__(self, a: FiniteGroup, b: FiniteGroup,
                 max_group_order: int = DEFAULT_MAX_GROUP_ORDER):
        if a.degree != b.degree:
            raise ValueError("subgroups must share a degree")
        self.a = a
        self.b = b
        self.max_group_order = max_group_order
        self._join: FiniteGroup | None = None
        self._ncl_a: FiniteGroup | None = None
        self._ncl_b: FiniteGroup | None = None
        self._intersection: FiniteGroup | None = None

    @property
    def degree(self) -> int:
        return self.a.degree

    @property
    def join(self) -> FiniteGroup:
        if self._join is None:
            self._join = join(self.a, self.b, self.max_group_order)
        return self._join

    @property
    def ncl_a(self) -> FiniteGroup:
        """Normal closure of a in the join."""
        if self._ncl_a is None:
            self._ncl_a = normal_closure(self.a, self.join)
        return self._ncl_a

    @property
    def ncl_b(self) -> FiniteGroup:
        if self._ncl_b is None:
            self._ncl_b = normal_closure(self.b, self.join)
        return self._ncl_b

    @property
    def intersection(self) -> FiniteGroup:
        if self._intersection is None:
            self._intersection = intersection(self.a, self.b)
        return self._intersection

    def computed_orders(self) -> dict[str, int | None]:
        """Orders of the cached join and normal closures, None where the
        computation never ran."""
        return {
            "join_order": self._join.order if self._join is not None else None,
            "ncl_a_order": self._ncl_a.order if self._ncl_a is not None else None,
            "ncl_b_order": self._ncl_b.order if self._ncl_b is not None else None,
        }

    def __repr__(self) -> str:
        return f"<pair |A|={self.a.order} |B|={self.b.order} deg={self.degree}>"
