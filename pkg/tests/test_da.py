"""Deferred acceptance: optimal matchings, trace invariants, oracle agreement."""

from __future__ import annotations

from hypothesis import given, settings, strategies as st

from conftest import build_profile
from manymatch import (
    GenConfig,
    Side,
    blair_geq,
    brute_force_stable_set,
    deferred_acceptance,
    random_market,
    stability,
    unanimous_blair_geq,
)
from manymatch.core import AgentId

markets = st.builds(
    lambda nf, nw, q, prob, seed: random_market(GenConfig(nf, nw, q, prob, seed)),
    st.integers(2, 4),
    st.integers(2, 5),
    st.integers(1, 2),
    st.sampled_from([0.5, 0.8, 1.0]),
    st.integers(0, 100_000),
)


class TestExamples:
    def test_example1_firm_proposing(self, ex1):
        m, _ = deferred_acceptance(ex1.profile, Side.FIRM)
        assert m == ex1.mu_f

    def test_example1_worker_proposing(self, ex1):
        m, _ = deferred_acceptance(ex1.profile, Side.WORKER)
        assert m == ex1.mu_w

    def test_example2_both_sides(self, ex2):
        assert deferred_acceptance(ex2.profile, Side.FIRM)[0] == ex2.mu_f
        assert deferred_acceptance(ex2.profile, Side.WORKER)[0] == ex2.mu_w

    def test_single_mutual_pair(self):
        # Only f1 and w1 accept each other; both runs must match exactly them.
        profile = build_profile(["w1", "w1"], ["f1", "f2"])
        for side in Side:
            assert deferred_acceptance(profile, side)[0].assign == (1, 0)


class TestTraceInvariants:
    def test_rejections_subset_of_round_proposals(self, ex1):
        for side in Side:
            _, trace = deferred_acceptance(ex1.profile, side)
            for rnd in trace.rounds:
                for p, r in rnd.rejections:
                    assert rnd.proposals[p] >> r & 1

    def test_final_round_clean(self, ex1, ex2):
        for ex in (ex1, ex2):
            for side in Side:
                _, trace = deferred_acceptance(ex.profile, side)
                assert trace.rounds[-1].rejections == ()

    def test_held_sets_blair_nondecreasing(self, ex1):
        for side in Side:
            _, trace = deferred_acceptance(ex1.profile, side)
            receiving = side.opposite
            previous = None
            for rnd in trace.rounds:
                if previous is not None:
                    for r, held in enumerate(rnd.held):
                        assert blair_geq(
                            ex1.profile, AgentId(receiving, r), held, previous[r]
                        )
                previous = rnd.held

    @settings(max_examples=50, deadline=None)
    @given(profile=markets)
    def test_trace_invariants_on_random_markets(self, profile):
        for side in Side:
            _, trace = deferred_acceptance(profile, side)
            assert trace.rounds[-1].rejections == ()
            for rnd in trace.rounds:
                for p, r in rnd.rejections:
                    assert rnd.proposals[p] >> r & 1


class TestAgainstOracle:
    @settings(max_examples=60, deadline=None)
    @given(profile=markets)
    def test_da_is_the_proposing_side_optimum(self, profile):
        stable = brute_force_stable_set(profile)
        mu_f, _ = deferred_acceptance(profile, Side.FIRM)
        mu_w, _ = deferred_acceptance(profile, Side.WORKER)
        assert stability(profile, mu_f).stable
        assert stability(profile, mu_w).stable
        assert any(m == mu_f for m in stable)
        assert any(m == mu_w for m in stable)
        for m in stable:
            assert unanimous_blair_geq(profile, mu_f, m, Side.FIRM)
            assert unanimous_blair_geq(profile, mu_w, m, Side.WORKER)

    @settings(max_examples=60, deadline=None)
    @given(profile=markets)
    def test_equal_optima_means_unique_stable_matching(self, profile):
        mu_f, _ = deferred_acceptance(profile, Side.FIRM)
        mu_w, _ = deferred_acceptance(profile, Side.WORKER)
        if mu_f == mu_w:
            assert brute_force_stable_set(profile) == [mu_f]
