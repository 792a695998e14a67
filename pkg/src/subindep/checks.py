"""Independence checks for a pair of subgroups, with certificates.

A pair (A, B) is independent when every pair of endomorphisms (alpha of
A, beta of B) extends to an endomorphism of the join <A u B>.  The
functions here are the individual necessary or sufficient conditions; a
CheckOutcome either proves dependence, proves independence, or abstains,
and any non-abstaining outcome carries a witness that can be rechecked
from scratch with recheck_witness.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .groups import (
    DEFAULT_ENDO_BUDGET,
    DEFAULT_ISO_BUDGET,
    BudgetExceeded,
    FiniteGroup,
    GroupMap,
    SubgroupPair,
    closure,
    conjugacy_classes,
    is_isomorphic,
    is_normal_in,
    normal_closure,
    quotient,
)
from .homs import ExtensionConflict, enumerate_endomorphisms, extend
from .perm import Permutation, cycle_string


class Verdict(Enum):
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"
    INCONCLUSIVE = "inconclusive"


# Witness regions for membership certificates.
REGION_A_AND_B = "a_and_b"
REGION_B_IN_NCL_A = "b_in_ncl_a"
REGION_A_IN_NCL_B = "a_in_ncl_b"

_REGION_TEXT = {
    REGION_A_AND_B: "A ∩ B",
    REGION_B_IN_NCL_A: "B ∩ <Conj(A)>",
    REGION_A_IN_NCL_B: "A ∩ <Conj(B)>",
}


@dataclass(frozen=True)
class MembershipWitness:
    """A non-identity element living where independence forbids one."""

    element: Permutation
    region: str

    def to_json(self) -> dict:
        return {"kind": "membership", "region": self.region,
                "element": cycle_string(self.element)}

    def describe(self) -> str:
        return f"{cycle_string(self.element)} is a non-identity element of {_REGION_TEXT[self.region]}"


@dataclass(frozen=True)
class CommutingWitness:
    """A and B intersect trivially and commute elementwise."""

    def to_json(self) -> dict:
        return {"kind": "all_commute"}

    def describe(self) -> str:
        return "A and B intersect trivially and every a in A commutes with every b in B"


@dataclass(frozen=True)
class OrderViolationWitness:
    """Non-commuting a, b whose product order is divisible by neither."""

    a: Permutation
    b: Permutation
    ab: Permutation
    order_a: int
    order_b: int
    order_ab: int

    def to_json(self) -> dict:
        return {"kind": "order_violation",
                "a": cycle_string(self.a), "b": cycle_string(self.b),
                "ab": cycle_string(self.ab),
                "order_a": self.order_a, "order_b": self.order_b,
                "order_ab": self.order_ab}

    def describe(self) -> str:
        parts = []
        if self.order_ab % self.order_a:
            parts.append(f"|a|={self.order_a}")
        if self.order_ab % self.order_b:
            parts.append(f"|b|={self.order_b}")
        bad = " and ".join(parts)
        return (f"a={cycle_string(self.a)}, b={cycle_string(self.b)} do not commute and "
                f"{bad} does not divide |ab|={self.order_ab} (ab={cycle_string(self.ab)})")


@dataclass(frozen=True)
class ConjugacyMergeWitness:
    """Two elements of one subgroup fused by conjugacy in the join only."""

    x1: Permutation
    x2: Permutation
    side: str  # "A" or "B"

    def to_json(self) -> dict:
        return {"kind": "conjugacy_merge", "side": self.side,
                "x1": cycle_string(self.x1), "x2": cycle_string(self.x2)}

    def describe(self) -> str:
        return (f"{cycle_string(self.x1)} and {cycle_string(self.x2)} are conjugate in the join "
                f"but not in {self.side}")


@dataclass(frozen=True)
class NormalAsymmetryWitness:
    """Exactly one subgroup is normal in the join; carries evidence that
    the other one is not."""

    normal_side: str  # the side that IS normal in the join
    moved_element: Permutation
    conjugating_element: Permutation
    conjugate: Permutation

    def to_json(self) -> dict:
        other = "B" if self.normal_side == "A" else "A"
        return {"kind": "normal_asymmetry", "normal_side": self.normal_side,
                "non_normal_side": other,
                "moved_element": cycle_string(self.moved_element),
                "conjugating_element": cycle_string(self.conjugating_element),
                "conjugate": cycle_string(self.conjugate)}

    def describe(self) -> str:
        other = "B" if self.normal_side == "A" else "A"
        return (f"{self.normal_side} is normal in the join but {other} is not: conjugating "
                f"{cycle_string(self.moved_element)} by {cycle_string(self.conjugating_element)} "
                f"gives {cycle_string(self.conjugate)}, outside {other}")


@dataclass(frozen=True)
class BothNormalWitness:
    """Both subgroups are normal in the join and intersect trivially."""

    def to_json(self) -> dict:
        return {"kind": "both_normal"}

    def describe(self) -> str:
        return "A and B are both normal in the join and intersect trivially"


@dataclass(frozen=True)
class IncompatiblePairWitness:
    """An endomorphism pair with no common extension to the join."""

    alpha: GroupMap
    beta: GroupMap
    conflict: ExtensionConflict

    def to_json(self) -> dict:
        return {"kind": "incompatible_endomorphisms",
                "alpha": self.alpha.table_strings(),
                "beta": self.beta.table_strings(),
                "conflict": {"element": cycle_string(self.conflict.element),
                             "images": [cycle_string(self.conflict.image_a),
                                        cycle_string(self.conflict.image_b)]}}

    def describe(self) -> str:
        return (f"no endomorphism of the join agrees with alpha on A and beta on B: "
                f"{cycle_string(self.conflict.element)} is forced to both "
                f"{cycle_string(self.conflict.image_a)} and {cycle_string(self.conflict.image_b)}")


@dataclass(frozen=True)
class ExhaustiveWitness:
    """Every endomorphism pair extends (some skipped via proven shortcuts)."""

    pairs_checked: int
    pairs_skipped: int

    def to_json(self) -> dict:
        return {"kind": "exhaustive", "pairs_checked": self.pairs_checked,
                "pairs_skipped": self.pairs_skipped}

    def describe(self) -> str:
        return (f"all {self.pairs_checked} endomorphism pairs extend to the join "
                f"({self.pairs_skipped} skipped as proven compatible)")


@dataclass(frozen=True)
class BudgetWitness:
    """The computation was abandoned at a configured size limit."""

    budget: str
    limit: int
    context: str

    def to_json(self) -> dict:
        return {"kind": "budget", "budget": self.budget, "limit": self.limit,
                "context": self.context}

    def describe(self) -> str:
        return f"{self.budget} limit {self.limit} exceeded while {self.context}"


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one check: a verdict, a witness when the verdict is not
    inconclusive, and optional side information for later checks."""

    verdict: Verdict
    witness: object | None = None
    details: Mapping | None = None

    @property
    def decided(self) -> bool:
        return self.verdict is not Verdict.INCONCLUSIVE


_INCONCLUSIVE = CheckOutcome(Verdict.INCONCLUSIVE)


def check_almost_disjoint(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if A and B share a non-identity element.

    Such an element x admits incompatible pairs outright (send x one way
    in A and another in B), so a nontrivial intersection is conclusive.
    """
    inter = pair.intersection
    if inter.order > 1:
        return CheckOutcome(Verdict.DEPENDENT,
                            MembershipWitness(inter.elements[1], REGION_A_AND_B))
    return _INCONCLUSIVE


def noncommuting_pairs(pair: SubgroupPair) -> Iterator[tuple[Permutation, Permutation]]:
    """All (a, b) with a in A, b in B and ab != ba, in canonical order."""
    for a in pair.a.elements[1:]:
        for b in pair.b.elements[1:]:
            if a * b != b * a:
                yield a, b


def check_commuting(pair: SubgroupPair) -> CheckOutcome:
    """Independent if A and B intersect trivially and commute elementwise
    (their join is then an internal direct-ish product and every pair of
    endomorphisms extends); inconclusive otherwise, recording the first
    non-commuting pair for the order check."""
    first = next(noncommuting_pairs(pair), None)
    if first is not None:
        return CheckOutcome(Verdict.INCONCLUSIVE, details={"first_noncommuting": first})
    if pair.intersection.order == 1:
        return CheckOutcome(Verdict.INDEPENDENT, CommutingWitness())
    return CheckOutcome(Verdict.INCONCLUSIVE,
                        details={"reason": "commuting but intersection nontrivial"})


def check_order_divisibility(pair: SubgroupPair,
                             pairs: Iterable[tuple[Permutation, Permutation]] | None = None) -> CheckOutcome:
    """Dependent on the first non-commuting (a, b) where |a| or |b| fails
    to divide |ab|; any common extension would have to map ab to a power
    of itself compatible with both orders, which is impossible then."""
    if pairs is None:
        pairs = noncommuting_pairs(pair)
    for a, b in pairs:
        ab = a * b
        oa, ob, oab = a.order(), b.order(), ab.order()
        if oab % oa or oab % ob:
            return CheckOutcome(Verdict.DEPENDENT,
                                OrderViolationWitness(a, b, ab, oa, ob, oab))
    return _INCONCLUSIVE


def _membership_check(sub: FiniteGroup, ncl: FiniteGroup, region: str) -> CheckOutcome:
    for x in sub.elements[1:]:
        if x in ncl:
            return CheckOutcome(Verdict.DEPENDENT, MembershipWitness(x, region))
    return _INCONCLUSIVE


def check_b_inside_ncl_a(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if some non-identity element of B lies in the normal
    closure of A in the join (B fails to be A-separated)."""
    return _membership_check(pair.b, pair.ncl_a, REGION_B_IN_NCL_A)


def check_a_inside_ncl_b(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if some non-identity element of A lies in the normal
    closure of B in the join (A fails to be B-separated)."""
    return _membership_check(pair.a, pair.ncl_b, REGION_A_IN_NCL_B)


def check_separated(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if either subgroup meets the other's normal closure in
    the join beyond the identity.  Separation in both directions is
    necessary for independence but never sufficient on its own, so this
    check cannot prove independence."""
    out = check_a_inside_ncl_b(pair)
    if out.decided:
        return out
    return check_b_inside_ncl_a(pair)


def _merge_on_side(sub: FiniteGroup, join_group: FiniteGroup, side: str) -> CheckOutcome:
    sub_classes = conjugacy_classes(sub)
    join_classes = conjugacy_classes(join_group)
    els = sub.elements
    for i, x1 in enumerate(els):
        jc = join_classes.class_index_of(x1)
        sc = sub_classes.class_index_of(x1)
        for x2 in els[i + 1:]:
            if join_classes.class_index_of(x2) == jc and sub_classes.class_index_of(x2) != sc:
                return CheckOutcome(Verdict.DEPENDENT, ConjugacyMergeWitness(x1, x2, side))
    return _INCONCLUSIVE


def check_conjugacy_merge_a(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if two elements of A are conjugate in the join but not in
    A: conjugation in the join is an inner endomorphism source that a
    would-be extension cannot reconcile with an A-endomorphism separating
    the two."""
    return _merge_on_side(pair.a, pair.join, "A")


def check_conjugacy_merge_b(pair: SubgroupPair) -> CheckOutcome:
    """Mirror of check_conjugacy_merge_a for B."""
    return _merge_on_side(pair.b, pair.join, "B")


def check_conjugacy_merge(pair: SubgroupPair) -> CheckOutcome:
    """Dependent if conjugacy classes of A or of B merge inside the join;
    reports the lexicographically least offending pair on the first side
    that exhibits one."""
    out = check_conjugacy_merge_a(pair)
    if out.decided:
        return out
    return check_conjugacy_merge_b(pair)


def check_normal_asymmetry(pair: SubgroupPair) -> CheckOutcome:
    """Exactly one of A, B normal in the join proves dependence; both
    normal with trivial intersection proves independence."""
    j = pair.join
    na = is_normal_in(pair.a, j)
    nb = is_normal_in(pair.b, j)
    if na and nb:
        if pair.intersection.order == 1:
            return CheckOutcome(Verdict.INDEPENDENT, BothNormalWitness())
        return CheckOutcome(Verdict.INCONCLUSIVE,
                            details={"reason": "both normal but intersection nontrivial"})
    if na != nb:
        normal_side = "A" if na else "B"
        loose = pair.b if na else pair.a
        for x in loose.elements[1:]:
            for t in j.generators:
                c = x.conjugated_by(t)
                if c not in loose:
                    return CheckOutcome(
                        Verdict.DEPENDENT,
                        NormalAsymmetryWitness(normal_side, x, t, c))
        raise AssertionError("non-normal subgroup with no moved generator conjugate")
    return _INCONCLUSIVE


def is_separated_pair(a: Permutation, b: Permutation, join: FiniteGroup) -> bool:
    """True iff a avoids the normal closure of <b> in join and b avoids
    the normal closure of <a>, identities excepted."""
    if a not in join or b not in join:
        raise ValueError("elements must belong to the given group")
    sub_a = closure([a], join.degree, max_order=join.order)
    sub_b = closure([b], join.degree, max_order=join.order)
    ncl_a = normal_closure(sub_a, join)
    ncl_b = normal_closure(sub_b, join)
    ok_a = a.is_identity() or a not in ncl_b
    ok_b = b.is_identity() or b not in ncl_a
    return ok_a and ok_b


def _separated_flags(pair: SubgroupPair) -> tuple[bool, bool]:
    """(A is B-separated, B is A-separated)."""
    sep_a = not check_a_inside_ncl_b(pair).decided
    sep_b = not check_b_inside_ncl_a(pair).decided
    return sep_a, sep_b


def _shortcut_skips(endos_a: list[GroupMap], endos_b: list[GroupMap],
                    sep_a: bool, sep_b: bool) -> frozenset[tuple[int, int]]:
    """Pair indices whose compatibility is already proven.

    (id, id) extends to the identity of the join and (triv, triv) to its
    trivial endomorphism, unconditionally.  (id, triv) is compatible
    exactly when A is B-separated, and symmetrically, so those two are
    skipped only under the corresponding separation.
    """
    id_a = next(i for i, m in enumerate(endos_a) if m.is_identity())
    triv_a = next(i for i, m in enumerate(endos_a) if m.is_trivial())
    id_b = next(i for i, m in enumerate(endos_b) if m.is_identity())
    triv_b = next(i for i, m in enumerate(endos_b) if m.is_trivial())
    skips = {(id_a, id_b), (triv_a, triv_b)}
    if sep_a:
        skips.add((id_a, triv_b))
    if sep_b:
        skips.add((triv_a, id_b))
    return frozenset(skips)


def _scan_chunk(args) -> int | None:
    """Worker: scan a contiguous range of flattened endomorphism-pair
    indices, returning the first index whose pair fails to extend."""
    (degree, a_gens, b_gens, max_group_order, endo_budget, use_shortcuts, lo, hi) = args
    a = closure([Permutation(t) for t in a_gens], degree, max_group_order)
    b = closure([Permutation(t) for t in b_gens], degree, max_group_order)
    pair = SubgroupPair(a, b, max_group_order)
    endos_a = enumerate_endomorphisms(a, endo_budget)
    endos_b = enumerate_endomorphisms(b, endo_budget)
    if use_shortcuts:
        sep_a, sep_b = _separated_flags(pair)
        skips = _shortcut_skips(endos_a, endos_b, sep_a, sep_b)
    else:
        skips = frozenset()
    nb = len(endos_b)
    for flat in range(lo, hi):
        i, jdx = divmod(flat, nb)
        if (i, jdx) in skips:
            continue
        if not extend(endos_a[i], endos_b[jdx], pair).exists:
            return flat
    return None


def brute_force_independent(pair: SubgroupPair,
                            endo_budget: int = DEFAULT_ENDO_BUDGET,
                            use_shortcuts: bool = True,
                            jobs: int = 1) -> CheckOutcome:
    """The exhaustive decision: extend every endomorphism pair.

    Dependent with the first (in canonical enumeration order) pair that
    fails to extend; independent when all pairs extend.  With
    use_shortcuts, pairs already proven compatible (identity and trivial
    combinations, under the appropriate separation facts) are skipped;
    this can never change the first failing pair.  Budget overruns
    return an inconclusive outcome rather than raising.
    """
    try:
        j = pair.join
        endos_a = enumerate_endomorphisms(pair.a, endo_budget)
        endos_b = enumerate_endomorphisms(pair.b, endo_budget)
    except BudgetExceeded as exc:
        return CheckOutcome(Verdict.INCONCLUSIVE, details={"budget_error": exc})
    del j
    if use_shortcuts:
        sep_a, sep_b = _separated_flags(pair)
        skips = _shortcut_skips(endos_a, endos_b, sep_a, sep_b)
    else:
        skips = frozenset()
    total = len(endos_a) * len(endos_b)
    detail = {"endo_a": len(endos_a), "endo_b": len(endos_b),
              "pairs_checked": total - len(skips), "pairs_skipped": len(skips)}

    first_bad: int | None = None
    if jobs > 1 and total >= 64:
        n_chunks = min(jobs * 4, total)
        bounds = [total * c // n_chunks for c in range(n_chunks + 1)]
        a_gens = tuple(g.images for g in pair.a.generators)
        b_gens = tuple(g.images for g in pair.b.generators)
        chunk_args = [
            (pair.degree, a_gens, b_gens, pair.max_group_order, endo_budget,
             use_shortcuts, bounds[c], bounds[c + 1])
            for c in range(n_chunks)
        ]
        with multiprocessing.Pool(processes=jobs) as pool:
            for hit in pool.imap(_scan_chunk, chunk_args):
                if hit is not None:
                    first_bad = hit  # chunks are scanned in ascending order
                    break
    else:
        nb = len(endos_b)
        for flat in range(total):
            i, jdx = divmod(flat, nb)
            if (i, jdx) in skips:
                continue
            if not extend(endos_a[i], endos_b[jdx], pair).exists:
                first_bad = flat
                break

    if first_bad is None:
        return CheckOutcome(Verdict.INDEPENDENT,
                            ExhaustiveWitness(detail["pairs_checked"], detail["pairs_skipped"]),
                            details=detail)
    i, jdx = divmod(first_bad, len(endos_b))
    alpha, beta = endos_a[i], endos_b[jdx]
    result = extend(alpha, beta, pair)
    return CheckOutcome(Verdict.DEPENDENT,
                        IncompatiblePairWitness(alpha, beta, result.conflict),
                        details=detail)


def verify_factoring(pair: SubgroupPair, iso_budget: int = DEFAULT_ISO_BUDGET) -> bool:
    """True iff join/<Conj(B)> is isomorphic to A and join/<Conj(A)> to B.

    For a separated pair the quotient by one side's normal closure
    recovers the other side exactly; this recomputes both isomorphisms
    from scratch as a structural cross-check.
    """
    j = pair.join
    qa = quotient(j, pair.ncl_b)
    ok_a, _ = is_isomorphic(qa, pair.a, iso_budget)
    if not ok_a:
        return False
    qb = quotient(j, pair.ncl_a)
    ok_b, _ = is_isomorphic(qb, pair.b, iso_budget)
    return ok_b


def is_independent_set(elements: Iterable[Permutation], ambient: FiniteGroup) -> bool:
    """True iff no member is generated by the others.

    The identity is the empty product, so any set containing it fails.
    The empty set is vacuously independent.
    """
    els = sorted(set(elements))
    for x in els:
        if x not in ambient:
            raise ValueError(f"{x!r} is not in the ambient group")
    for x in els:
        rest = [y for y in els if y != x]
        if x in closure(rest, ambient.degree, max_order=ambient.order):
            return False
    return True


def check_union_independent_sets(pair: SubgroupPair,
                                 a_subset: Iterable[Permutation],
                                 b_subset: Iterable[Permutation]) -> bool:
    """Harness for the union law: for an independent pair (A, B) and
    independent subsets A' of A and B' of B, report whether A' u B' is
    independent in the join.  The law says it always is; a False return
    from a valid input flags a bug."""
    a_els = sorted(set(a_subset))
    b_els = sorted(set(b_subset))
    if any(x not in pair.a for x in a_els):
        raise ValueError("a_subset is not contained in A")
    if any(x not in pair.b for x in b_els):
        raise ValueError("b_subset is not contained in B")
    if not is_independent_set(a_els, pair.a):
        raise ValueError("a_subset is not an independent set")
    if not is_independent_set(b_els, pair.b):
        raise ValueError("b_subset is not an independent set")
    return is_independent_set(set(a_els) | set(b_els), pair.join)


def recheck_witness(pair: SubgroupPair, witness: object) -> bool:
    """Re-establish a certificate from scratch against the pair."""
    if isinstance(witness, MembershipWitness):
        x = witness.element
        if x.is_identity():
            return False
        if witness.region == REGION_A_AND_B:
            return x in pair.a and x in pair.b
        if witness.region == REGION_B_IN_NCL_A:
            return x in pair.b and x in pair.ncl_a
        if witness.region == REGION_A_IN_NCL_B:
            return x in pair.a and x in pair.ncl_b
        return False
    if isinstance(witness, CommutingWitness):
        return (pair.intersection.order == 1
                and next(noncommuting_pairs(pair), None) is None)
    if isinstance(witness, OrderViolationWitness):
        a, b = witness.a, witness.b
        if a not in pair.a or b not in pair.b or a * b == b * a:
            return False
        ab = a * b
        return witness.ab == ab and (ab.order() % a.order() != 0 or ab.order() % b.order() != 0)
    if isinstance(witness, ConjugacyMergeWitness):
        sub = pair.a if witness.side == "A" else pair.b
        if witness.x1 not in sub or witness.x2 not in sub:
            return False
        return (conjugacy_classes(pair.join).same_class(witness.x1, witness.x2)
                and not conjugacy_classes(sub).same_class(witness.x1, witness.x2))
    if isinstance(witness, NormalAsymmetryWitness):
        j = pair.join
        na, nb = is_normal_in(pair.a, j), is_normal_in(pair.b, j)
        if na == nb:
            return False
        loose = pair.b if na else pair.a
        moved = witness.moved_element.conjugated_by(witness.conjugating_element)
        return moved == witness.conjugate and moved not in loose
    if isinstance(witness, BothNormalWitness):
        j = pair.join
        return (is_normal_in(pair.a, j) and is_normal_in(pair.b, j)
                and pair.intersection.order == 1)
    if isinstance(witness, IncompatiblePairWitness):
        return not extend(witness.alpha, witness.beta, pair).exists
    if isinstance(witness, ExhaustiveWitness):
        return brute_force_independent(pair).verdict is Verdict.INDEPENDENT
    if isinstance(witness, BudgetWitness):
        return True
    raise TypeError(f"unknown witness type {type(witness).__name__}")
