"""Chain evaluations: frozen instances, covariance, and the suite runner."""

import numpy as np
import pytest

from semihilbert import (
    EnsembleSpec,
    check_base_11,
    check_base_12,
    check_cor22,
    check_equality_condition,
    check_thm21,
    check_thm23,
    check_thm25,
    check_thm27,
    check_thm28,
    check_thm29,
    check_thm210,
    derive_rng,
    gen_a_selfadjoint,
    gen_operator_in_ba,
    make_context,
    reports_for,
    run_suite,
)
from semihilbert import inequalities as iq
from semihilbert.errors import ConditionNotMet, NotInBA
from semihilbert.inequalities import (
    ALL_BUNDLES,
    ALL_REPORT_IDS,
    InequalityReport,
    REPORT_BUNDLE,
    TrialRecord,
    run_bundle,
    summarize,
)

from conftest import random_context


def all_reports(ctx, T):
    out = {}
    eye = np.eye(ctx.n, dtype=complex)
    for bid in ALL_BUNDLES:
        need, _ = iq.BUNDLES[bid]
        ops = {name: T.copy() for name in need}
        if "X" in need:
            ops["X"] = eye
        try:
            for rep in run_bundle(ctx, bid, ops):
                out[rep.theorem_id] = rep
        except ConditionNotMet:
            pass
    return out


def assert_chain(rep, expected, tol=1e-10):
    got = [v for _, v in rep.chain]
    assert len(got) == len(expected), rep.theorem_id
    for g, e in zip(got, expected):
        assert g == pytest.approx(e, abs=tol), (rep.theorem_id, got, expected)


JORDAN_CHAINS = {
    "base_11": (0.5, 0.5, 1.0),
    "base_12": (0.25, 0.25, 0.5),
    "thm21": (2.0, 2.0),
    "cor22": (2.0, 2.0),
    "thm23_i": (2.0, 2.0, 2.0),
    "thm23_ii": (2.0, 2.0, 2.0),
    "thm23_iii": (4.0, 4.0),
    "thm23_iv": (4.0, 4.0),
    "thm23_v": (1.0, 1.0, 1.0),
    "thm25": (0.25, 0.25, 0.25, 0.25),
    "remark26_weak": (0.25, 0.25),
    "remark26_m": (0.25, 0.25, 0.25, 0.25),
    "thm27": (1.0, 1.0),
    "thm28_i": (0.25, 0.25),
    "thm28_ii": (0.25, 0.25, 0.25),
    "thm28_iii": (0.25, 0.25),
    "thm28_iv": (0.25, 0.25, 0.5),
    "thm28_v": (0.25, float(np.sqrt(7.0 / 48.0)), 0.5),
    "thm29": (0.5, 0.5, 0.5),
    "thm210": (0.0625, 0.0625, 0.125),
}

IDENTITY_CHAINS = {
    "base_11": (0.5, 1.0, 1.0),
    "base_12": (0.5, 1.0, 1.0),
    "thm21": (2.0, 2.0),
    "cor22": (2.0, 2.0),
    "thm23_i": (2.0, 2.0, 2.0),
    "thm23_ii": (2.0, 2.0, 2.0),
    "thm23_iii": (4.0, 4.0),
    "thm23_iv": (4.0, 4.0),
    "thm23_v": (1.0, 1.0, 1.0),
    "thm25": (0.5, 0.5, 1.0, 1.0),
    "remark26_weak": (1.0, 1.0),
    "remark26_m": (0.25, 0.5, 0.5, 1.0),
    "thm27": (1.0, 1.0),
    "thm28_i": (0.5, 1.0),
    "thm28_ii": (0.5, float(1.0 / np.sqrt(2.0)), 1.0),
    "thm28_iii": (float(np.sqrt(24.0) / 8.0), 1.0),
    "thm28_iv": (1.0, 1.0, 1.0),
    "thm28_v": (1.0, 1.0, 1.0),
    "eq_cond_28": (1.0, 1.0, 1.0),
    "thm29": (1.0, 1.0, 1.0),
    "thm210": (0.5, 1.0, 1.0),
}


class TestFrozenInstances:
    def test_jordan_chains(self, eye2_ctx, jordan):
        reports = all_reports(eye2_ctx, jordan)
        assert set(reports) == set(JORDAN_CHAINS)
        for rid, expected in JORDAN_CHAINS.items():
            assert_chain(reports[rid], expected)
            assert reports[rid].satisfied

    def test_identity_chains(self, eye2_ctx):
        reports = all_reports(eye2_ctx, np.eye(2, dtype=complex))
        assert set(reports) == set(IDENTITY_CHAINS)
        for rid, expected in IDENTITY_CHAINS.items():
            assert_chain(reports[rid], expected)
            assert reports[rid].satisfied

    def test_jordan_equality_condition_fails(self, eye2_ctx, jordan):
        with pytest.raises(ConditionNotMet) as err:
            check_equality_condition(eye2_ctx, jordan)
        assert err.value.residual == pytest.approx(np.sqrt(2.0), abs=1e-12)


class TestCheckFunctions:
    def test_single_report_wrappers(self, eye2_ctx, jordan):
        assert check_base_11(eye2_ctx, jordan).theorem_id == "base_11"
        assert check_base_12(eye2_ctx, jordan).theorem_id == "base_12"
        assert check_thm27(eye2_ctx, jordan, jordan).theorem_id == "thm27"
        assert check_thm29(eye2_ctx, jordan).theorem_id == "thm29"
        assert check_thm210(eye2_ctx, jordan).theorem_id == "thm210"

    def test_grouped_wrappers(self, eye2_ctx, jordan):
        five = check_thm23(eye2_ctx, jordan, jordan)
        assert [r.theorem_id for r in five] == [
            "thm23_i", "thm23_ii", "thm23_iii", "thm23_iv", "thm23_v"]
        three = check_thm25(eye2_ctx, jordan)
        assert [r.theorem_id for r in three] == [
            "thm25", "remark26_weak", "remark26_m"]
        assert len(check_thm28(eye2_ctx, jordan)) == 5

    def test_cor22_is_identity_instance(self, eye2_ctx, jordan):
        eye = np.eye(2, dtype=complex)
        a = check_cor22(eye2_ctx, jordan, jordan)
        b = check_thm21(eye2_ctx, jordan, jordan, eye)
        assert a.theorem_id == "cor22"
        assert b.theorem_id == "thm21"
        assert [v for _, v in a.chain] == pytest.approx(
            [v for _, v in b.chain])

    def test_tol_recorded(self, eye2_ctx, jordan):
        rep = check_base_11(eye2_ctx, jordan, tol=1e-2)
        assert rep.tol_used == 1e-2
        assert check_base_11(eye2_ctx, jordan).tol_used == 1e-8

    def test_membership_gate(self):
        ctx = make_context(np.diag([1.0, 0.0]))
        with pytest.raises(NotInBA):
            check_base_11(ctx, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_borderline_warning_propagates(self):
        ctx = make_context(np.diag([1.0, 0.0]))
        T = np.array([[1.0, 3e-11], [0.0, 0.0]])
        rep = check_base_11(ctx, T)
        assert rep.warnings
        assert "membership" in rep.warnings[0]


class TestReportsFor:
    def test_bundle_id_expands(self, eye2_ctx, jordan):
        reps = reports_for(eye2_ctx, "thm23", {"S": jordan, "T": jordan})
        assert len(reps) == 5

    def test_report_id_filters(self, eye2_ctx, jordan):
        reps = reports_for(eye2_ctx, "thm23_v", {"S": jordan, "T": jordan})
        assert len(reps) == 1
        assert reps[0].theorem_id == "thm23_v"

    def test_unknown_id(self, eye2_ctx, jordan):
        with pytest.raises(ValueError):
            reports_for(eye2_ctx, "thm99", {"T": jordan})

    def test_missing_operator(self, eye2_ctx, jordan):
        with pytest.raises(ValueError):
            reports_for(eye2_ctx, "thm21", {"T": jordan})

    def test_registry_consistent(self):
        assert set(REPORT_BUNDLE.values()) == set(ALL_BUNDLES)
        for rid, bid in REPORT_BUNDLE.items():
            assert bid in iq.BUNDLES
        assert len(ALL_REPORT_IDS) == 21


class TestCovariance:
    def test_first_power_chains_scale_linearly(self):
        ctx = random_context(70, 3, 3)
        T = gen_operator_in_ba(ctx, derive_rng(70, "T"))
        c = 1.3 - 0.7j
        for rep0, rep1 in (
            (check_base_11(ctx, T), check_base_11(ctx, c * T)),
            (check_thm29(ctx, T), check_thm29(ctx, c * T)),
        ):
            v0 = np.array([v for _, v in rep0.chain])
            v1 = np.array([v for _, v in rep1.chain])
            assert v1 == pytest.approx(abs(c) * v0, rel=1e-9)

    def test_second_power_chain_scales_quadratically(self):
        ctx = random_context(71, 3, 2)
        T = gen_operator_in_ba(ctx, derive_rng(71, "T"))
        c = 0.4 + 1.1j
        v0 = np.array([v for _, v in check_base_12(ctx, T).chain])
        v1 = np.array([v for _, v in check_base_12(ctx, c * T).chain])
        assert v1 == pytest.approx(abs(c) ** 2 * v0, rel=1e-9)

    def test_fourth_power_chain_real_scaling(self):
        # the squared-real-part term is only homogeneous for real factors
        ctx = random_context(72, 3, 3)
        T = gen_operator_in_ba(ctx, derive_rng(72, "T"))
        c = 1.7
        v0 = np.array([v for _, v in check_thm210(ctx, T).chain])
        v1 = np.array([v for _, v in check_thm210(ctx, c * T).chain])
        assert v1 == pytest.approx(c ** 4 * v0, rel=1e-9)

    def test_weight_scaling_invariance(self):
        base = random_context(73, 4, 3)
        scaled = make_context(3.0 * np.asarray(base.A))
        T = gen_operator_in_ba(base, derive_rng(73, "T"))
        S = gen_operator_in_ba(base, derive_rng(73, "S"))
        for rep0, rep1 in zip(
            check_thm23(base, S, T), check_thm23(scaled, S, T)):
            v0 = [v for _, v in rep0.chain]
            v1 = [v for _, v in rep1.chain]
            assert v1 == pytest.approx(v0, rel=1e-9)
        q0 = [v for _, v in check_thm25(base, T)[0].chain]
        q1 = [v for _, v in check_thm25(scaled, T)[0].chain]
        assert q1 == pytest.approx(q0, rel=1e-9)


class TestEqualityCondition:
    def test_hermitian_invertible_weight(self):
        rng = np.random.default_rng(80)
        X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        H = 0.5 * (X + X.conj().T)
        ctx = make_context(np.eye(3))
        rep = check_equality_condition(ctx, H)
        assert max(abs(s) for s in rep.slacks) < 1e-10

    def test_a_selfadjoint_singular_weight(self):
        ctx = random_context(81, 4, 2)
        T = gen_a_selfadjoint(ctx, derive_rng(81, "T"))
        rep = check_equality_condition(ctx, T)
        assert rep.satisfied
        assert max(abs(s) for s in rep.slacks) < 1e-8

    def test_residual_in_error(self, eye2_ctx, jordan):
        with pytest.raises(ConditionNotMet) as err:
            check_equality_condition(eye2_ctx, jordan)
        assert err.value.residual is not None


class TestReportObject:
    def test_to_dict_layout(self, eye2_ctx, jordan):
        d = check_base_12(eye2_ctx, jordan).to_dict()
        assert set(d) == {"theorem_id", "chain", "slacks", "satisfied",
                          "tol_used", "witness_digest", "warnings"}
        assert d["theorem_id"] == "base_12"
        assert len(d["chain"]) == 3
        assert len(d["slacks"]) == 2
        assert len(d["witness_digest"]) == 16

    def test_min_slack(self):
        rep = InequalityReport(
            theorem_id="demo", chain=(("a", 0.0), ("b", 1.0), ("c", 0.5)),
            slacks=(1.0, -0.5), satisfied=False, tol_used=1e-8,
            witness_digest="0" * 16)
        assert rep.min_slack == -0.5

    def test_digest_depends_on_instance(self, eye2_ctx, jordan):
        a = check_base_11(eye2_ctx, jordan).witness_digest
        b = check_base_11(eye2_ctx, 2.0 * jordan).witness_digest
        assert a != b


class TestRunSuite:
    def test_zero_violations_on_random_cells(self):
        for fam in ("general_in_BA", "shift_like"):
            spec = EnsembleSpec(n=3, rank=2, spectrum_law="loguniform",
                                family=fam, count=10, master_seed=90)
            res = run_suite(None, spec)
            assert res.summary["totals"]["violations"] == 0
            assert res.summary["totals"]["trials"] == 10

    def test_empty_ensemble(self):
        spec = EnsembleSpec(n=3, rank=3, count=0, master_seed=1)
        res = run_suite(None, spec)
        assert res.summary["empty"]
        assert res.summary["totals"]["trials"] == 0
        assert res.summary["per_theorem"] == {}

    def test_checks_subset(self):
        spec = EnsembleSpec(n=2, rank=2, count=3, master_seed=2)
        res = run_suite(None, spec, checks=("base_11", "thm29"))
        ids = {rep.theorem_id for rec in res.trials for rep in rec.reports}
        assert ids == {"base_11", "thm29"}

    def test_unknown_check(self):
        spec = EnsembleSpec(n=2, rank=2, count=1)
        with pytest.raises(ValueError):
            run_suite(None, spec, checks=("thm0",))

    def test_jobs_match_serial(self):
        spec = EnsembleSpec(n=3, rank=3, count=6, master_seed=3)
        a = run_suite(None, spec, checks=("base_12", "thm25"))
        b = run_suite(None, spec, checks=("base_12", "thm25"), jobs=2)
        assert len(a.trials) == len(b.trials)
        for ra, rb in zip(a.trials, b.trials):
            assert [r.to_dict() for r in ra.reports] == \
                   [r.to_dict() for r in rb.reports]

    def test_injected_bad_operator_is_fatal(self):
        ctx = make_context(np.diag([1.0, 0.0]))
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        spec = EnsembleSpec(n=2, rank=1, count=1, master_seed=4)
        res = run_suite(None, spec, trial_source=[(ctx, {"T": bad})],
                        checks=("base_11",))
        assert res.trials[0].fatal is not None
        assert res.summary["totals"]["failed_trials"] == 1

    def test_condition_check_skips_not_fails(self, eye2_ctx, jordan):
        spec = EnsembleSpec(n=2, rank=2, count=1, master_seed=5)
        res = run_suite(None, spec,
                        trial_source=[(eye2_ctx, {"T": jordan})],
                        checks=("eq_cond_28", "base_11"))
        rec = res.trials[0]
        assert "eq_cond_28" in rec.skipped
        assert rec.fatal is None
        assert res.summary["totals"]["skipped_checks"] == 1
        assert res.summary["totals"]["violations"] == 0

    def test_pinned_contexts(self):
        ctx = random_context(91, 3, 2)
        spec = EnsembleSpec(n=3, rank=2, count=4, master_seed=6)
        res = run_suite([ctx], spec, checks=("base_11",))
        assert all(rec.rank == 2 for rec in res.trials)
        assert res.summary["totals"]["violations"] == 0

    def test_keep_smallest(self):
        spec = EnsembleSpec(n=2, rank=2, count=5, master_seed=7)
        res = run_suite(None, spec, checks=("base_11",), keep_smallest=3)
        assert len(res.summary["smallest_slacks"]) == 3
        slacks = [e["slack"] for e in res.summary["smallest_slacks"]]
        assert slacks == sorted(slacks)


class TestSummarize:
    def test_counts_violations(self):
        good = InequalityReport(
            theorem_id="demo", chain=(("a", 0.0), ("b", 1.0)), slacks=(1.0,),
            satisfied=True, tol_used=1e-8, witness_digest="0" * 16)
        bad = InequalityReport(
            theorem_id="demo", chain=(("a", 1.0), ("b", 0.0)), slacks=(-1.0,),
            satisfied=False, tol_used=1e-8, witness_digest="1" * 16)
        recs = [
            TrialRecord(index=0, n=2, rank=2, family="f", seed_path=(0,),
                        reports=[good, bad]),
            TrialRecord(index=1, n=2, rank=2, family="f", seed_path=(1,),
                        reports=[good], skipped={"eq_cond_28": "no"}),
        ]
        s = summarize(recs)
        assert s["totals"]["violations"] == 1
        assert s["totals"]["skipped_checks"] == 1
        assert s["per_theorem"]["demo"]["count"] == 3
        assert s["per_theorem"]["demo"]["violations"] == 1
        assert s["per_theorem"]["demo"]["min_slack"] == -1.0
        assert s["per_theorem"]["demo"]["min_slack_trial"] == 0
        assert s["smallest_slacks"][0]["slack"] == -1.0
