import csv
import io
import json

import pytest

from conftest import pair_from_row
from oracles import independent_by_global_search
from subindep.atlas import (
    ATLAS_FIELDS,
    MAX_BRUTEFORCE_LATTICE_ORDER,
    all_subgroups_bruteforce,
    classify_all_pairs,
    enumerate_subgroups,
    render_report,
)
from subindep.checks import (
    check_a_inside_ncl_b,
    check_b_inside_ncl_a,
    check_union_independent_sets,
)
from subindep.groups import (
    SubgroupPair,
    closure,
    is_isomorphic,
    quotient,
    symmetric_group,
)
from subindep.perm import parse_cycles
from subindep.homs import identity_map, is_compatible, trivial_map
from subindep.pipeline import Config


class TestSubgroupEnumeration:
    def test_s3_lattice_complete(self):
        s3 = symmetric_group(3)
        subs = enumerate_subgroups(s3)
        assert [h.order for h in subs] == [1, 2, 2, 2, 3, 6]
        brute = all_subgroups_bruteforce(s3)
        assert [h.elements for h in subs] == [h.elements for h in brute]

    def test_s4_lattice_complete(self):
        s4 = symmetric_group(4)
        subs = enumerate_subgroups(s4)
        assert len(subs) == 30
        brute = all_subgroups_bruteforce(s4)
        assert [h.elements for h in subs] == [h.elements for h in brute]

    def test_trivial_group(self):
        s1 = symmetric_group(1)
        assert len(enumerate_subgroups(s1)) == 1

    def test_bruteforce_guard(self):
        with pytest.raises(ValueError):
            all_subgroups_bruteforce(symmetric_group(5))
        assert MAX_BRUTEFORCE_LATTICE_ORDER == 24


class TestDegree3Atlas:
    def test_row_count_and_verdict_split(self, s3_atlas):
        rows, summary = s3_atlas
        assert len(rows) == 36
        assert summary["verdicts"] == {"Independent": 11, "Dependent": 25,
                                       "Inconclusive": 0}

    def test_first_worked_example_row(self, s3_atlas):
        rows, _ = s3_atlas
        row = next(r for r in rows if r.a_gens == "(1 2)" and r.b_gens == "(1 3)")
        assert row.pipeline_status == "Dependent"
        assert row.oracle == "dependent"
        assert row.order_join == 6

    def test_trivial_side_always_independent(self, s3_atlas):
        rows, _ = s3_atlas
        trivial_rows = [r for r in rows if r.a_gens == "e"]
        assert len(trivial_rows) == 6
        assert all(r.pipeline_status == "Independent" for r in trivial_rows)

    def test_no_disagreements_or_asymmetries(self, s3_atlas):
        _, summary = s3_atlas
        assert summary["oracle_disagreements"] == []
        assert summary["symmetry_violations"] == []
        assert summary["budget_trips"] == []

    def test_deciding_steps(self, s3_atlas):
        _, summary = s3_atlas
        assert summary["deciding_steps"] == {"Step1": 13, "Step2i": 11,
                                             "Step2ii": 12}


class TestDegree4Atlas:
    def test_row_count_and_verdict_split(self, s4_atlas):
        rows, summary = s4_atlas
        assert len(rows) == 900
        assert summary["verdicts"] == {"Independent": 107, "Dependent": 793,
                                       "Inconclusive": 0}

    def test_no_disagreements_or_asymmetries(self, s4_atlas):
        _, summary = s4_atlas
        assert summary["oracle_disagreements"] == []
        assert summary["symmetry_violations"] == []
        assert summary["budget_trips"] == []

    def test_main_example_row(self, s4_atlas):
        rows, _ = s4_atlas
        row = next(r for r in rows
                   if r.a_gens == "(1 2)" and r.b_gens == "(1 3)(2 4)")
        assert row.pipeline_status == "Independent"
        assert row.pipeline_step == "Step4"
        assert row.oracle == "independent"
        assert row.order_join == 8
        assert row.both_normal is False
        assert row.separated_both is True
        # Separated with entangled closures: the zone neither the
        # necessary nor the sufficient criterion settles.
        assert row.gap_region is True

    def test_every_deciding_step_is_a_pipeline_stage(self, s4_atlas):
        _, summary = s4_atlas
        assert set(summary["deciding_steps"]) == {"Step1", "Step2i", "Step2ii",
                                                  "NormalAsym", "Step4"}
        assert sum(summary["deciding_steps"].values()) == 900

    def test_gap_region_counted(self, s4_atlas):
        rows, summary = s4_atlas
        flagged = [r for r in rows if r.gap_region]
        assert summary["gap_region_count"] == len(flagged) == 24
        # Gap rows are exactly the separated pairs with entangled closures.
        for r in flagged:
            assert r.separated_both and not r.ncl_intersection_trivial


def nonidentity(group):
    return [g for g in group.elements if not g.is_identity()]


class TestTheoremSuite:
    """Structural laws checked over every degree-4 atlas row."""

    def test_independent_rows_are_separated(self, s4_atlas):
        rows, _ = s4_atlas
        for r in rows:
            if r.pipeline_status == "Independent":
                assert r.separated_both, r.pair_id

    def test_separatedness_matches_one_sided_extension(self, s4_atlas):
        # A is B-separated exactly when (identity on A, collapse of B)
        # extends to the join, and symmetrically.
        rows, _ = s4_atlas
        for r in rows:
            pair = pair_from_row(r, 4)
            sep_a = is_compatible(identity_map(pair.a), trivial_map(pair.b),
                                  pair)
            sep_b = is_compatible(trivial_map(pair.a), identity_map(pair.b),
                                  pair)
            assert (sep_a and sep_b) == r.separated_both, r.pair_id

    def test_both_normal_disjoint_rows_independent(self, s4_atlas):
        rows, _ = s4_atlas
        hit = 0
        for r in rows:
            if r.both_normal and r.almost_disjoint == "inconclusive":
                assert r.oracle == "independent", r.pair_id
                hit += 1
        assert hit > 0

    def test_normal_asymmetry_rows_dependent(self, s4_atlas):
        rows, _ = s4_atlas
        hit = 0
        for r in rows:
            if r.normal_asymmetry == "dependent":
                assert r.oracle == "dependent", r.pair_id
                hit += 1
        assert hit > 0

    def test_factoring_isomorphism_iff_separated(self, s4_atlas):
        # join/ncl(B) recovers A exactly on the B-separated side.
        rows, _ = s4_atlas
        for r in rows:
            pair = pair_from_row(r, 4)
            join = pair.join
            sep_a = not check_a_inside_ncl_b(pair).decided
            sep_b = not check_b_inside_ncl_a(pair).decided
            iso_a, _ = is_isomorphic(quotient(join, pair.ncl_b), pair.a)
            iso_b, _ = is_isomorphic(quotient(join, pair.ncl_a), pair.b)
            assert iso_a == sep_a and iso_b == sep_b, r.pair_id

    def test_trivial_closure_meet_forces_independence(self, s4_atlas):
        rows, _ = s4_atlas
        hit = 0
        for r in rows:
            if r.ncl_intersection_trivial:
                assert r.pipeline_status == "Independent", r.pair_id
                hit += 1
        assert hit > 0

    def test_gap_region_nonempty_in_wider_ambient(self):
        # Separated both ways yet dependent: needs degree 6.
        deg = 6
        a = closure([parse_cycles(s, deg) for s in ("(1 2)", "(5 6)")], deg)
        b = closure([parse_cycles("(1 3)(2 4)", deg)], deg)
        pair = SubgroupPair(a, b)
        assert not check_a_inside_ncl_b(pair).decided
        assert not check_b_inside_ncl_a(pair).decided
        assert not independent_by_global_search(a, b, pair.join)

    def test_separated_products_stay_in_join(self, s4_atlas):
        # For a separated pair, any word alternating A and B letters whose
        # sides both multiply to the identity must itself be trivial under
        # every extension, and in particular the word's sides collapse
        # consistently: projecting to join/ncl(B) kills the B letters, so
        # the A letters alone determine the coset.
        rows, _ = s4_atlas
        import random
        rng = random.Random(7)
        sampled = [r for r in rows
                   if r.separated_both and r.order_a > 1 and r.order_b > 1]
        for r in rng.sample(sampled, min(10, len(sampled))):
            pair = pair_from_row(r, 4)
            join = pair.join
            q = quotient(join, pair.ncl_b)
            for _ in range(6):
                a_word = [rng.choice(pair.a.elements) for _ in range(3)]
                b_word = [rng.choice(pair.b.elements) for _ in range(3)]
                prod = join.identity
                for x, y in zip(a_word, b_word):
                    prod = prod * x * y
                a_only = join.identity
                for x in a_word:
                    a_only = a_only * x
                assert q.project(prod) == q.project(a_only)

    def test_unions_of_independent_sets(self, s4_atlas):
        rows, _ = s4_atlas
        checked = 0
        for r in rows:
            if r.pipeline_status != "Independent" or min(r.order_a, r.order_b) < 2:
                continue
            pair = pair_from_row(r, 4)
            xs = frozenset(nonidentity(pair.a)[:1])
            ys = frozenset(nonidentity(pair.b)[:1])
            assert check_union_independent_sets(pair, xs, ys), r.pair_id
            checked += 1
            if checked >= 5:
                break
        assert checked == 5

    def test_heredity_under_both_normal_disjointness(self, s4_atlas):
        # Independence by the two-normal criterion survives passing to
        # subgroups, since subgroups still commute elementwise.
        rows, _ = s4_atlas
        done = 0
        for r in rows:
            if not (r.both_normal and r.almost_disjoint == "inconclusive"):
                continue
            if r.order_a < 2 or r.order_b < 2:
                continue
            pair = pair_from_row(r, 4)
            sub_a = closure([nonidentity(pair.a)[0]], 4)
            sub_b = closure([nonidentity(pair.b)[0]], 4)
            sub_pair = SubgroupPair(sub_a, sub_b)
            assert independent_by_global_search(sub_a, sub_b, sub_pair.join)
            done += 1
            if done >= 3:
                break
        assert done == 3


class TestIsomorphicReplacement:
    """Isomorphic replacement flips the verdict: independence is not an
    isomorphism invariant of the two sides alone."""

    def test_verdict_flip_located_in_atlas(self, s4_atlas):
        rows, _ = s4_atlas
        good = next(r for r in rows
                    if r.a_gens == "(1 2)" and r.b_gens == "(3 4)")
        bad = next(r for r in rows
                   if r.a_gens == "(1 3)" and r.b_gens == "(3 4)")
        assert good.pipeline_status == "Independent"
        assert bad.pipeline_status == "Dependent"
        pair_good = pair_from_row(good, 4)
        pair_bad = pair_from_row(bad, 4)
        assert is_isomorphic(pair_good.a, pair_bad.a)[0]
        assert pair_good.b.elements == pair_bad.b.elements


class TestReportRendering:
    def test_csv_shape(self, s3_atlas):
        rows, summary = s3_atlas
        text = render_report(rows, summary, "csv")
        parsed = list(csv.reader(io.StringIO(text)))
        assert parsed[0] == list(ATLAS_FIELDS)
        assert len(parsed) == 37
        flat = text.splitlines()
        assert all("True" not in line for line in flat)  # bools lowercased

    def test_csv_bool_and_null_cells(self, s3_atlas):
        rows, summary = s3_atlas
        text = render_report(rows, summary, "csv")
        reader = csv.DictReader(io.StringIO(text))
        first = next(reader)
        assert first["almost_disjoint"] in {"independent", "dependent",
                                            "inconclusive"}
        assert first["separated_both"] in {"true", "false", ""}

    def test_json_shape(self, s3_atlas):
        rows, summary = s3_atlas
        doc = json.loads(render_report(rows, summary, "json"))
        assert set(doc) == {"summary", "rows"}
        assert len(doc["rows"]) == 36
        assert doc["summary"]["pairs"] == 36

    def test_render_sorted_by_generators(self, s3_atlas):
        rows, summary = s3_atlas
        text = render_report(rows, summary, "csv")
        reader = list(csv.DictReader(io.StringIO(text)))
        keys = [(r["a_gens"], r["b_gens"]) for r in reader]
        assert keys == sorted(keys)

    def test_empty_rows_render_header_only(self):
        text = render_report([], {"pairs": 0}, "csv")
        assert text.splitlines() == [",".join(ATLAS_FIELDS)]

    def test_unknown_format_rejected(self, s3_atlas):
        rows, summary = s3_atlas
        with pytest.raises(ValueError):
            render_report(rows, summary, "tsv")


class TestDeterminismAndBudgets:
    def test_parallel_report_bytes_match(self):
        r1, s1 = classify_all_pairs(3, Config(), jobs=1)
        r2, s2 = classify_all_pairs(3, Config(), jobs=2)
        assert render_report(r1, s1, "csv") == render_report(r2, s2, "csv")
        assert render_report(r1, s1, "json") == render_report(r2, s2, "json")

    def test_budget_trips_recorded_without_aborting(self):
        rows, summary = classify_all_pairs(3, Config(endo_budget=1))
        assert len(rows) == 36
        assert len(summary["budget_trips"]) > 0
        tripped = {r.pair_id for r in rows if r.budget}
        assert tripped == set(summary["budget_trips"])
        for r in rows:
            if r.budget:
                assert r.pipeline_status == "Inconclusive"

    def test_full_lattice_guard_for_degree_5(self):
        with pytest.raises(ValueError):
            classify_all_pairs(5, Config(), full_lattice=True)

    def test_degree_bounds(self):
        with pytest.raises(ValueError):
            classify_all_pairs(1, Config())
        with pytest.raises(ValueError):
            classify_all_pairs(6, Config())
