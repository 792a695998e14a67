"""The staged decision procedure and its serializable results.

Checks run from cheapest to most expensive; the first conclusive one
decides.  Stage names identify which check fired so a result can be
audited against the witness it carries.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from enum import Enum

from .checks import (
    BudgetWitness,
    CheckOutcome,
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
    recheck_witness,
    verify_factoring,
)
from .groups import (
    DEFAULT_ENDO_BUDGET,
    DEFAULT_ISO_BUDGET,
    DEFAULT_MAX_GROUP_ORDER,
    BudgetExceeded,
    SubgroupPair,
    closure,
)
from .homs import extend, enumerate_endomorphisms
from .perm import CycleParseError, Permutation, parse_cycles


class Step(str, Enum):
    """Stage labels, in pipeline order."""

    INTERSECTION = "Step1"
    COMMUTING = "Step2i"
    ORDER = "Step2ii"
    NORMAL_ASYM = "NormalAsym"
    B_IN_NCL_A = "Step3i"
    A_IN_NCL_B = "Step3ii"
    MERGE_A = "Step3iii"
    MERGE_B = "Step3iv"
    BRUTE_FORCE = "Step4"
    BUDGET = "BudgetExceeded"


@dataclass(frozen=True)
class Config:
    """Knobs for a decision run."""

    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    endo_budget: int = DEFAULT_ENDO_BUDGET
    iso_budget: int = DEFAULT_ISO_BUDGET
    run_diagnostics: bool = False
    output_format: str = "json"
    parallelism: int = 1
    easier_first: bool = False

    def __post_init__(self) -> None:
        if self.max_group_order < 1 or self.endo_budget < 1 or self.iso_budget < 1:
            raise ValueError("budgets must be positive")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass
class Stats:
    """Orders and counts actually computed during the run.

    A field is None when the run decided before that quantity was ever
    needed; nothing is computed just to fill in a stat.
    """

    join_order: int | None = None
    ncl_a_order: int | None = None
    ncl_b_order: int | None = None
    endo_a: int | None = None
    endo_b: int | None = None
    pairs_checked: int | None = None
    pairs_skipped: int | None = None
    elapsed_ms: float = 0.0


@dataclass
class Decision:
    """Outcome of a full pipeline run on one pair."""

    status: str  # "Independent", "Dependent", or "Inconclusive"
    step: Step
    witness: object | None
    stats: Stats
    diagnostics: dict | None = None


class PairSpecError(ValueError):
    """The input object does not describe a valid subgroup pair."""


def parse_pair_spec(obj: dict, max_group_order: int = DEFAULT_MAX_GROUP_ORDER) -> SubgroupPair:
    """Build a SubgroupPair from {"degree": n, "A": [...], "B": [...]}
    where the lists hold permutations in cycle notation."""
    if not isinstance(obj, dict):
        raise PairSpecError("pair spec must be a JSON object")
    missing = {"degree", "A", "B"} - obj.keys()
    if missing:
        raise PairSpecError(f"pair spec is missing {sorted(missing)}")
    degree = obj["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise PairSpecError("degree must be a positive integer")
    gens: dict[str, list[Permutation]] = {}
    for side in ("A", "B"):
        raw = obj[side]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            raise PairSpecError(f"{side} must be a list of cycle strings")
        try:
            gens[side] = [parse_cycles(s, degree) for s in raw]
        except CycleParseError as exc:
            raise PairSpecError(f"bad generator in {side}: {exc}") from exc
    try:
        a = closure(gens["A"], degree, max_group_order)
        b = closure(gens["B"], degree, max_group_order)
    except BudgetExceeded as exc:
        raise PairSpecError(f"subgroup too large: {exc}") from exc
    return SubgroupPair(a, b, max_group_order)


def _outcome_to_decision(outcome: CheckOutcome, step: Step, stats: Stats) -> Decision:
    status = {Verdict.DEPENDENT: "Dependent",
              Verdict.INDEPENDENT: "Independent",
              Verdict.INCONCLUSIVE: "Inconclusive"}[outcome.verdict]
    return Decision(status, step, outcome.witness, stats)


def decide_pair(pair: SubgroupPair, config: Config = Config()) -> Decision:
    """Run the staged checks on an already-built pair."""
    t0 = time.perf_counter()
    stats = Stats()

    def finish(decision: Decision) -> Decision:
        decision.stats.elapsed_ms = (time.perf_counter() - t0) * 1000.0
        if config.run_diagnostics and decision.status != "Inconclusive":
            decision.diagnostics = _run_diagnostics(pair, decision, config)
        return decision

    try:
        out = check_almost_disjoint(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.INTERSECTION, stats))

        out = check_commuting(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.COMMUTING, stats))

        out = check_order_divisibility(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.ORDER, stats))

        stats.join_order = pair.join.order
        out = check_normal_asymmetry(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.NORMAL_ASYM, stats))

        # The two membership stages keep fixed identities; easier_first
        # only reorders their execution toward the smaller subgroup.
        stages = [(Step.B_IN_NCL_A, check_b_inside_ncl_a),
                  (Step.A_IN_NCL_B, check_a_inside_ncl_b)]
        if config.easier_first and pair.b.order < pair.a.order:
            stages.reverse()
        for step, chk in stages:
            out = chk(pair)
            if step is Step.B_IN_NCL_A:
                stats.ncl_a_order = pair.ncl_a.order
            else:
                stats.ncl_b_order = pair.ncl_b.order
            if out.decided:
                return finish(_outcome_to_decision(out, step, stats))

        out = check_conjugacy_merge_a(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.MERGE_A, stats))
        out = check_conjugacy_merge_b(pair)
        if out.decided:
            return finish(_outcome_to_decision(out, Step.MERGE_B, stats))

        out = brute_force_independent(pair, config.endo_budget,
                                      use_shortcuts=True, jobs=config.parallelism)
        if out.details and "budget_error" in out.details:
            exc = out.details["budget_error"]
            witness = BudgetWitness(exc.budget, exc.limit, exc.context)
            return finish(Decision("Inconclusive", Step.BUDGET, witness, stats))
        stats.endo_a = out.details["endo_a"]
        stats.endo_b = out.details["endo_b"]
        stats.pairs_checked = out.details["pairs_checked"]
        stats.pairs_skipped = out.details["pairs_skipped"]
        return finish(_outcome_to_decision(out, Step.BRUTE_FORCE, stats))
    except BudgetExceeded as exc:
        witness = BudgetWitness(exc.budget, exc.limit, exc.context)
        return finish(Decision("Inconclusive", Step.BUDGET, witness, stats))


def decide(pair_spec: dict, config: Config = Config()) -> Decision:
    """Parse a pair spec and run the pipeline on it."""
    pair = parse_pair_spec(pair_spec, config.max_group_order)
    return decide_pair(pair, config)


def _run_diagnostics(pair: SubgroupPair, decision: Decision, config: Config) -> dict:
    """Optional post-decision audits: recheck the witness, and for
    independent verdicts exercise the factoring isomorphisms plus a
    sampled associativity-style law on random extension triples."""
    diag: dict = {}
    if decision.witness is not None:
        diag["witness_rechecked"] = recheck_witness(pair, decision.witness)
    if decision.status == "Independent":
        try:
            diag["factoring_isomorphisms"] = verify_factoring(pair, config.iso_budget)
        except BudgetExceeded:
            diag["factoring_isomorphisms"] = None
        diag["extension_law_sampled"] = _sample_extension_law(pair, config)
    return diag


def _sample_extension_law(pair: SubgroupPair, config: Config,
                          samples: int = 25, seed: int = 0) -> bool:
    """For random endomorphism pairs of an independent pair, confirm the
    extension restricts correctly and respects products on sampled words."""
    rng = random.Random(seed)
    try:
        endos_a = enumerate_endomorphisms(pair.a, config.endo_budget)
        endos_b = enumerate_endomorphisms(pair.b, config.endo_budget)
    except BudgetExceeded:
        return True
    j = pair.join
    for _ in range(samples):
        alpha = rng.choice(endos_a)
        beta = rng.choice(endos_b)
        res = extend(alpha, beta, pair)
        if not res.exists:
            return False
        gamma = res.map
        for _ in range(8):
            x = j.elements[rng.randrange(j.order)]
            y = j.elements[rng.randrange(j.order)]
            if gamma(x * y) != gamma(x) * gamma(y):
                return False
    return True


def _witness_to_json(witness: object | None) -> dict | None:
    if witness is None:
        return None
    return witness.to_json()


_STEP_TEXT = {
    Step.INTERSECTION: "step 1 (intersection)",
    Step.COMMUTING: "step 2(i) (commuting)",
    Step.ORDER: "step 2(ii) (order divisibility)",
    Step.NORMAL_ASYM: "normality comparison",
    Step.B_IN_NCL_A: "step 3(i) (B against <Conj(A)>)",
    Step.A_IN_NCL_B: "step 3(ii) (A against <Conj(B)>)",
    Step.MERGE_A: "step 3(iii) (conjugacy merge in A)",
    Step.MERGE_B: "step 3(iv) (conjugacy merge in B)",
    Step.BRUTE_FORCE: "step 4 (exhaustive extension)",
    Step.BUDGET: "budget limit",
}


def format_decision(decision: Decision, fmt: str = "json") -> str:
    """Render a Decision as a JSON document or a short text report."""
    if fmt == "json":
        doc = {
            "status": decision.status.lower(),
            "step": decision.step.value,
            "witness": _witness_to_json(decision.witness),
            "stats": {
                "join_order": decision.stats.join_order,
                "ncl_a_order": decision.stats.ncl_a_order,
                "ncl_b_order": decision.stats.ncl_b_order,
                "endo_a": decision.stats.endo_a,
                "endo_b": decision.stats.endo_b,
                "elapsed_ms": round(decision.stats.elapsed_ms, 3),
            },
            "diagnostics": decision.diagnostics,
        }
        return json.dumps(doc, indent=2)
    if fmt != "text":
        raise ValueError(f"unknown output format {fmt!r}")
    lines = [f"{decision.status.upper()} at {_STEP_TEXT[decision.step]}"]
    if decision.witness is not None:
        lines.append(f"witness: {decision.witness.describe()}")
    st = decision.stats
    shown = [("join order", st.join_order),
             ("|<Conj(A)>|", st.ncl_a_order),
             ("|<Conj(B)>|", st.ncl_b_order),
             ("endomorphisms of A", st.endo_a),
             ("endomorphisms of B", st.endo_b),
             ("pairs checked", st.pairs_checked),
             ("pairs skipped", st.pairs_skipped)]
    parts = [f"{name}: {val}" for name, val in shown if val is not None]
    if parts:
        lines.append("; ".join(parts))
    lines.append(f"elapsed: {st.elapsed_ms:.1f} ms")
    if decision.diagnostics:
        for key, val in decision.diagnostics.items():
            lines.append(f"diagnostic {key}: {val}")
    return "\n".join(lines)
