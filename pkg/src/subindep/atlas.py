"""Exhaustive cross-validation over all subgroup pairs of small
symmetric groups.

Every ordered pair of enumerated subgroups gets every individual check,
the full staged pipeline, and the exhaustive oracle, recorded side by
side so that disagreements between shortcut theory and brute force are
impossible to miss.  Reports are byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
from dataclasses import dataclass, fields
from itertools import combinations

from .checks import (
    Verdict,
    brute_force_independent,
    check_a_inside_ncl_b,
    check_almost_disjoint,
    check_b_inside_ncl_a,
    check_commuting,
    check_conjugacy_merge_a,
    check_conjugacy_merge_b,
    check_normal_asymmetry,
    check_order_divisibility,
)
from .groups import (
    BudgetExceeded,
    FiniteGroup,
    SubgroupPair,
    closure,
    intersection,
    is_normal_in,
    symmetric_group,
)
from .perm import Permutation, cycle_string
from .pipeline import Config, Step, decide_pair

MAX_ATLAS_DEGREE = 5
MAX_BRUTEFORCE_LATTICE_ORDER = 24


def enumerate_subgroups(group: FiniteGroup, max_gens: int = 2) -> list[FiniteGroup]:
    """Distinct subgroups generated by at most max_gens elements, sorted
    by (order, element list).

    For symmetric groups of degree up to 4 two generators already reach
    every subgroup; the full-lattice brute force below verifies that.
    """
    if max_gens < 1:
        raise ValueError("max_gens must be at least 1")
    seen: dict[tuple[Permutation, ...], FiniteGroup] = {}
    trivial = closure([], group.degree, max_order=group.order)
    seen[trivial.elements] = trivial
    nontrivial = group.elements[1:]
    for k in range(1, max_gens + 1):
        for combo in combinations(nontrivial, k):
            sub = closure(list(combo), group.degree, max_order=group.order)
            seen.setdefault(sub.elements, sub)
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


def all_subgroups_bruteforce(group: FiniteGroup) -> list[FiniteGroup]:
    """Every subgroup, by saturating single-element extensions.

    Exponential in principle; restricted to ambient order at most
    MAX_BRUTEFORCE_LATTICE_ORDER where it is instant.
    """
    if group.order > MAX_BRUTEFORCE_LATTICE_ORDER:
        raise ValueError(
            f"full lattice enumeration is limited to order {MAX_BRUTEFORCE_LATTICE_ORDER}, "
            f"got {group.order}")
    trivial = closure([], group.degree, max_order=group.order)
    known: dict[tuple[Permutation, ...], FiniteGroup] = {trivial.elements: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in group.elements[1:]:
                if g in sub:
                    continue
                ext = closure(list(sub.generators) + [g], group.degree,
                              max_order=group.order)
                if ext.elements not in known:
                    known[ext.elements] = ext
                    nxt.append(ext)
        frontier = nxt
    return sorted(known.values(), key=lambda s: (s.order, s.elements))


@dataclass
class AtlasRow:
    """One ordered subgroup pair with every check's verdict."""

    pair_id: str
    a_index: int
    b_index: int
    a_gens: str
    b_gens: str
    order_a: int
    order_b: int
    order_join: int
    almost_disjoint: str
    commuting: str
    order_divisibility: str
    normal_asymmetry: str
    b_in_ncl_a: str
    a_in_ncl_b: str
    merge_a: str
    merge_b: str
    oracle: str
    pipeline_status: str
    pipeline_step: str
    separated_both: bool
    ncl_intersection_trivial: bool
    both_normal: bool
    gap_region: bool
    budget: str


ATLAS_FIELDS = [f.name for f in fields(AtlasRow)]

_STANDALONE_CHECKS = [
    ("almost_disjoint", check_almost_disjoint),
    ("commuting", check_commuting),
    ("order_divisibility", check_order_divisibility),
    ("normal_asymmetry", check_normal_asymmetry),
    ("b_in_ncl_a", check_b_inside_ncl_a),
    ("a_in_ncl_b", check_a_inside_ncl_b),
    ("merge_a", check_conjugacy_merge_a),
    ("merge_b", check_conjugacy_merge_b),
]


def _gens_string(sub: FiniteGroup) -> str:
    if not sub.generators:
        return "e"
    return ";".join(cycle_string(g) for g in sub.generators)


def _classify_one(args: tuple) -> AtlasRow:
    """Worker: build one pair from generator images and run everything."""
    (pair_id, a_index, b_index, degree, a_gens, b_gens,
     max_group_order, endo_budget, iso_budget) = args
    a = closure([Permutation(t) for t in a_gens], degree, max_group_order)
    b = closure([Permutation(t) for t in b_gens], degree, max_group_order)
    pair = SubgroupPair(a, b, max_group_order)
    row = {name: "" for name, _ in _STANDALONE_CHECKS}
    row.update(pair_id=pair_id, a_index=a_index, b_index=b_index,
               a_gens=_gens_string(a), b_gens=_gens_string(b),
               order_a=a.order, order_b=b.order, order_join=0,
               oracle="", pipeline_status="", pipeline_step="",
               separated_both=False, ncl_intersection_trivial=False,
               both_normal=False, gap_region=False, budget="")
    try:
        j = pair.join
        row["order_join"] = j.order
        for name, chk in _STANDALONE_CHECKS:
            row[name] = chk(pair).verdict.value
        oracle = brute_force_independent(pair, endo_budget, use_shortcuts=True)
        if oracle.details and "budget_error" in oracle.details:
            raise oracle.details["budget_error"]
        row["oracle"] = oracle.verdict.value
        cfg = Config(max_group_order=max_group_order, endo_budget=endo_budget,
                     iso_budget=iso_budget)
        decision = decide_pair(pair, cfg)
        row["pipeline_status"] = decision.status
        row["pipeline_step"] = decision.step.value
        sep_both = (not check_a_inside_ncl_b(pair).decided
                    and not check_b_inside_ncl_a(pair).decided)
        ncl_meet = intersection(pair.ncl_a, pair.ncl_b)
        row["separated_both"] = sep_both
        row["ncl_intersection_trivial"] = ncl_meet.order == 1
        row["both_normal"] = is_normal_in(a, j) and is_normal_in(b, j)
        row["gap_region"] = sep_both and ncl_meet.order > 1
    except BudgetExceeded as exc:
        row["budget"] = exc.budget
        if not row["pipeline_status"]:
            row["pipeline_status"] = "Inconclusive"
            row["pipeline_step"] = Step.BUDGET.value
    return AtlasRow(**row)


def classify_all_pairs(degree: int,
                       config: Config = Config(),
                       max_gens: int = 2,
                       full_lattice: bool = False,
                       jobs: int = 1) -> tuple[list[AtlasRow], dict]:
    """Classify every ordered pair of enumerated subgroups of the
    symmetric group of the given degree.

    Returns (rows, summary).  Rows come back in a fixed canonical order
    regardless of jobs, and carry no timing, so emitted reports are
    reproducible byte for byte.
    """
    if not 2 <= degree <= MAX_ATLAS_DEGREE:
        raise ValueError(f"degree must be between 2 and {MAX_ATLAS_DEGREE}")
    group = symmetric_group(degree)
    subs = enumerate_subgroups(group, max_gens)
    if full_lattice:
        everything = all_subgroups_bruteforce(group)
        missing = [s for s in everything if s.elements not in {t.elements for t in subs}]
        if missing:
            raise AssertionError(
                f"{len(missing)} subgroups are not reachable with {max_gens} generators; "
                f"first missing has order {missing[0].order}")
    tasks = []
    idx = 0
    for i, a in enumerate(subs):
        for jdx, b in enumerate(subs):
            tasks.append((f"s{degree}-{idx:04d}", i, jdx, degree,
                          tuple(g.images for g in a.generators),
                          tuple(g.images for g in b.generators),
                          config.max_group_order, config.endo_budget,
                          config.iso_budget))
            idx += 1
    if jobs > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            rows = list(pool.imap(_classify_one, tasks, chunksize=8))
    else:
        rows = [_classify_one(t) for t in tasks]
    return rows, _summarize(degree, group, subs, rows)


def _summarize(degree: int, group: FiniteGroup,
               subs: list[FiniteGroup], rows: list[AtlasRow]) -> dict:
    verdicts = {"Independent": 0, "Dependent": 0, "Inconclusive": 0}
    oracle_counts = {v.value: 0 for v in Verdict}
    steps: dict[str, int] = {}
    disagreements = []
    symmetry_violations = []
    gap_ids = []
    budget_trips = []
    by_pos = {(r.a_index, r.b_index): r for r in rows}
    for r in rows:
        verdicts[r.pipeline_status] = verdicts.get(r.pipeline_status, 0) + 1
        if r.oracle:
            oracle_counts[r.oracle] += 1
        steps[r.pipeline_step] = steps.get(r.pipeline_step, 0) + 1
        if r.oracle and r.pipeline_status != "Inconclusive":
            if r.oracle != r.pipeline_status.lower():
                disagreements.append(r.pair_id)
        mirror = by_pos.get((r.b_index, r.a_index))
        if (mirror is not None and r.a_index < r.b_index
                and r.pipeline_status != "Inconclusive"
                and mirror.pipeline_status != "Inconclusive"
                and r.pipeline_status != mirror.pipeline_status):
            symmetry_violations.append(r.pair_id)
        if r.gap_region:
            gap_ids.append(r.pair_id)
        if r.budget:
            budget_trips.append(r.pair_id)
    return {
        "degree": degree,
        "group_order": group.order,
        "subgroups": len(subs),
        "pairs": len(rows),
        "verdicts": verdicts,
        "oracle_verdicts": oracle_counts,
        "deciding_steps": dict(sorted(steps.items())),
        "oracle_disagreements": disagreements,
        "symmetry_violations": symmetry_violations,
        "gap_region_count": len(gap_ids),
        "gap_region_ids": gap_ids,
        "budget_trips": budget_trips,
    }


def render_report(rows: list[AtlasRow], summary: dict, fmt: str = "csv") -> str:
    """Serialize an atlas run; rows ordered by generator strings so the
    bytes depend only on the classification, never on worker scheduling."""
    ordered = sorted(rows, key=lambda r: (r.a_gens, r.b_gens))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(ATLAS_FIELDS)
        for r in ordered:
            writer.writerow(_csv_cell(getattr(r, name)) for name in ATLAS_FIELDS)
        return buf.getvalue()
    if fmt == "json":
        doc = {"summary": summary,
               "rows": [{name: getattr(r, name) for name in ATLAS_FIELDS} for r in ordered]}
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def emit_report(rows: list[AtlasRow], summary: dict, path: str, fmt: str = "csv") -> None:
    """Write a report file (CSV rows only, or JSON with summary)."""
    text = render_report(rows, summary, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
