import math

import pytest
from conftest import E01, E02, E14, E21, E23, E24, T1, T2, make_reference_problem

from slbsearch import (
    EstimationCache,
    METRICS_CSV_FIELDS,
    Metrics,
    ei_ucs,
    beauty,
    metrics_csv_row,
)


@pytest.fixture
def cache():
    return EstimationCache(make_reference_problem().graph)


class TestApplyNext:
    def test_first_application(self, cache):
        low, layer = cache.apply_next(E14)
        assert (low, layer) == (1.0, 1)
        assert cache.state(E14).tightest_upper == 10.0

    def test_second_application_tightens(self, cache):
        cache.apply_next(E14)
        low, layer = cache.apply_next(E14)
        assert (low, layer) == (4.0, 2)
        assert cache.state(E14).tightest_upper == 6.0

    def test_exhausted_sequence_rejected(self, cache):
        cache.apply_next(E01)
        with pytest.raises(ValueError):
            cache.apply_next(E01)

    def test_charges_time_once_per_layer(self, cache):
        cache.apply_next(E14)
        cache.apply_next(E14)
        assert cache.snapshot_metrics().estimation_time == T1 + T2
        assert cache.snapshot_metrics().layer_invocations == (1, 1)

    def test_folding_keeps_tightest_upper(self, cache):
        # e02 layers (2,6) then (3,5): both bounds tighten
        cache.apply_next(E02)
        assert cache.state(E02).tightest_lower == 2.0
        cache.apply_next(E02)
        state = cache.state(E02)
        assert (state.tightest_lower, state.tightest_upper) == (3.0, 5.0)


class TestApplyFinal:
    def test_jump_skips_intermediate_layers(self, cache):
        low = cache.apply_final(E14)
        assert low == 4.0
        assert not cache.has_remaining(E14)
        # only the last layer was genuinely invoked or charged
        assert cache.invoked_layers(E14) == (2,)
        assert cache.snapshot_metrics().estimation_time == T2
        assert cache.snapshot_metrics().layer_invocations == (0, 1)

    def test_jump_after_partial_application(self, cache):
        cache.apply_next(E23)
        low = cache.apply_final(E23)
        assert low == 7.0
        assert cache.invoked_layers(E23) == (1, 2)
        assert cache.snapshot_metrics().estimation_time == T1 + T2

    def test_single_layer_edge(self, cache):
        assert cache.apply_final(E01) == 4.0
        assert cache.invoked_layers(E01) == (1,)

    def test_exhausted_sequence_rejected(self, cache):
        cache.apply_final(E24)
        with pytest.raises(ValueError):
            cache.apply_final(E24)


class TestInvocationAccounting:
    def test_fresh_cache_is_zero(self, cache):
        m = cache.snapshot_metrics()
        assert m.invocations == 0
        assert m.expansions == m.evaluations == m.prunings == 0
        assert m.estimation_time == 0.0

    def test_baseline_run_invokes_everything_reachable(self):
        problem = make_reference_problem()
        cache = EstimationCache(problem.graph)
        ei_ucs(problem, cache)
        assert cache.invocation_count() == 10
        assert cache.snapshot_metrics().layer_invocations == (6, 4)

    def test_lazy_run_skips_one_refinement(self):
        problem = make_reference_problem()
        cache = EstimationCache(problem.graph)
        beauty(problem, cache)
        assert cache.invocation_count() == 9
        assert cache.invoked_layers(E21) == (1,)

    def test_estimation_time_sums_charged_layers(self):
        problem = make_reference_problem()
        cache = EstimationCache(problem.graph)
        ei_ucs(problem, cache)
        # six first layers, four second layers
        assert cache.snapshot_metrics().estimation_time == 6 * T1 + 4 * T2

    def test_final_layer_invocations(self):
        problem = make_reference_problem()
        cache = EstimationCache(problem.graph)
        beauty(problem, cache)
        # every edge's tightest layer except e21's
        assert cache.final_layer_invocations() == 5


class TestMetrics:
    def test_search_time_scales_with_tau(self):
        m = Metrics((1, 2), expansions=5, evaluations=9, prunings=1,
                    estimation_time=12.0, tau_v=2.0)
        assert m.search_time == 10.0
        assert m.total_time == 22.0
        assert m.invocations == 3

    def test_subtraction_gives_delta(self):
        a = Metrics((5, 3), 7, 11, 2, 40.0)
        b = Metrics((2, 1), 3, 6, 0, 12.0)
        d = a - b
        assert d.layer_invocations == (3, 2)
        assert (d.expansions, d.evaluations, d.prunings) == (4, 5, 2)
        assert d.estimation_time == 28.0

    def test_csv_row_shape(self):
        m = Metrics((5, 3), 7, 11, 2, 40.0)
        row = metrics_csv_row("inst", "beauty", m, 7.0, 7.0, True, 1)
        assert tuple(row) == METRICS_CSV_FIELDS
        assert row["w_1"] == 5 and row["w_2"] == 3 and row["w_3"] == 0
        assert row["T_w"] == 40.0 and row["T_v"] == 7.0
        assert row["optimal_flag"] == 1

    def test_csv_row_with_three_layers(self):
        m = Metrics((5, 3, 2), 7, 11, 2, 40.0)
        row = metrics_csv_row("inst", "eiucs", m, 7.0, 8.0, False, 3)
        assert row["w_3"] == 2
        assert row["iterations"] == 3


class TestWallClock:
    def test_scaled_sleep_is_applied(self):
        import time

        problem = make_reference_problem()
        cache = EstimationCache(problem.graph, wall_clock_scale=1e-4)
        t0 = time.perf_counter()
        ei_ucs(problem, cache)
        elapsed = time.perf_counter() - t0
        # 46 simulated units at 1e-4 s each
        assert elapsed >= 46 * 1e-4
