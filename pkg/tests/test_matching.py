"""Matchings, stability, the brute-force oracle, and matching comparisons."""

from __future__ import annotations

import pytest

from conftest import build_matching, build_profile, entries
from manymatch import (
    CapExceeded,
    GenConfig,
    Matching,
    Side,
    brute_force_stable_set,
    firm,
    random_market,
    rural_hospitals_holds,
    stability,
    unanimous_blair_geq,
    worker,
)


class TestWorkerView:
    def test_firm_optimal_example(self, ex1):
        assert ex1.mu_f.worker_view() == (
            entries("f1")[0],
            entries("f1f3")[0],
            entries("f2")[0],
            entries("f3")[0],
            entries("f2")[0],
            0,
        )

    def test_sigma1_example(self, ex1):
        assert ex1.others["sigma1"].worker_view() == (
            entries("f3")[0],
            entries("f1f3")[0],
            entries("f2")[0],
            entries("f1")[0],
            entries("f2")[0],
            0,
        )

    def test_empty(self):
        assert Matching((0, 0), 3).worker_view() == (0, 0, 0)

    def test_round_trips_with_assign(self, ex1):
        views = ex1.mu_f.worker_view()
        for f in range(3):
            for w in range(6):
                assert bool(ex1.mu_f.assign[f] >> w & 1) == bool(views[w] >> f & 1)


class TestStability:
    def test_firm_optimal_is_stable(self, ex1):
        report = stability(ex1.profile, ex1.mu_f)
        assert report.stable
        assert report.individually_rational
        assert report.blocking_pairs == ()

    def test_unacceptable_partner_is_irrational(self, ex1):
        # w5 never accepts f1, so holding f1 blocks w5 individually.
        m = build_matching(["w5", "", ""], 6)
        report = stability(ex1.profile, m)
        assert report.irrational_agents == (worker(4),)
        assert not report.stable

    def test_example2_middle_matching_is_stable(self, ex2):
        assert stability(ex2.profile, ex2.others["mu"]).stable

    def test_blocking_pairs_found_and_ordered(self, ex1):
        # Everyone unmatched: every mutually acceptable pair blocks.
        report = stability(ex1.profile, Matching((0, 0, 0), 6))
        assert report.individually_rational
        assert list(report.blocking_pairs) == sorted(report.blocking_pairs)
        assert (0, 0) in report.blocking_pairs  # f1 and w1 accept each other
        assert all(p != (1, 5) for p in report.blocking_pairs)  # w6 rejects f2


class TestBruteForce:
    def test_example1_exact_set(self, ex1):
        got = brute_force_stable_set(ex1.profile)
        want = sorted(
            [ex1.mu_f, ex1.mu_w, ex1.others["sigma1"], ex1.others["sigma2"]],
            key=lambda m: m.assign,
        )
        assert got == want

    def test_example2_has_three(self, ex2):
        got = brute_force_stable_set(ex2.profile)
        assert len(got) == 3
        assert ex2.others["mu"] in got

    def test_no_mutual_pairs_leaves_everyone_unmatched(self):
        profile = build_profile(["w1"], ["", ""])
        assert brute_force_stable_set(profile) == [Matching((0,), 2)]

    def test_cap(self, ex1):
        with pytest.raises(CapExceeded):
            brute_force_stable_set(ex1.profile, cap=10)


class TestBlairComparisons:
    def test_firm_optimal_dominates(self, ex1):
        assert unanimous_blair_geq(ex1.profile, ex1.mu_f, ex1.mu_w, Side.FIRM)
        assert unanimous_blair_geq(ex1.profile, ex1.mu_w, ex1.mu_f, Side.WORKER)

    def test_reflexive(self, ex1):
        for side in Side:
            assert unanimous_blair_geq(ex1.profile, ex1.mu_f, ex1.mu_f, side)

    def test_incomparable_pair(self, ex1):
        s1, s2 = ex1.others["sigma1"], ex1.others["sigma2"]
        assert not unanimous_blair_geq(ex1.profile, s1, s2, Side.FIRM)
        assert not unanimous_blair_geq(ex1.profile, s2, s1, Side.FIRM)

    def test_polarization_on_example_stable_sets(self, ex1, ex2):
        for ex in (ex1, ex2):
            stable = brute_force_stable_set(ex.profile)
            for m1 in stable:
                for m2 in stable:
                    assert unanimous_blair_geq(
                        ex.profile, m1, m2, Side.FIRM
                    ) == unanimous_blair_geq(ex.profile, m2, m1, Side.WORKER)


class TestRuralHospitals:
    def test_example1(self, ex1):
        stable = brute_force_stable_set(ex1.profile)
        assert rural_hospitals_holds(stable)
        assert all(m.worker_view()[5] == 0 for m in stable)  # w6 always unmatched

    def test_example2(self, ex2):
        assert rural_hospitals_holds(brute_force_stable_set(ex2.profile))

    def test_singleton(self, ex1):
        assert rural_hospitals_holds([ex1.mu_f])

    def test_detects_difference(self):
        assert not rural_hospitals_holds([Matching((1,), 1), Matching((0,), 1)])


def test_every_generated_stable_matching_is_individually_rational():
    for seed in range(30):
        profile = random_market(GenConfig(3, 4, quota=2, seed=seed))
        for m in brute_force_stable_set(profile):
            report = stability(profile, m)
            assert report.individually_rational and report.stable
