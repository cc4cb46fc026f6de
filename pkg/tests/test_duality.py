import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipartite_logdet import (ModelParams, build_dual_precision, build_primal_precision,
                              log_scale_factor, logdet_primal_via_dual, sample_random, spd_logdet,
                              star_to_model, verify_ratio)
from bipartite_logdet.densela import Method
from bipartite_logdet.params import broadcast_model

from conftest import LN_648, LN_80000, leibniz_det, rel_close


class TestLogScaleFactor:
    def test_paper(self, paper_kmn):
        s = log_scale_factor(paper_kmn).log_scale
        assert rel_close(s, 9 * math.log(2), 1e-15)
        assert math.isclose(s, 6.238325, abs_tol=1e-6)

    def test_star_adapter(self, paper_star):
        s = log_scale_factor(star_to_model(paper_star)).log_scale
        assert rel_close(s, math.log(32), 1e-15)
        assert math.isclose(s, 3.465736, abs_tol=1e-6)

    def test_all_ones(self):
        assert log_scale_factor(broadcast_model(4, 5, 1, 1, 1)).log_scale == 0.0

    def test_no_overflow(self):
        # product 1e300^(40*40+80) overflows, sum of logs does not
        p = broadcast_model(40, 40, 1e300, 1e300, 1e300)
        assert rel_close(log_scale_factor(p).log_scale, 1680 * 300 * math.log(10), 1e-14)


class TestLogdetViaDual:
    def test_paper(self, paper_kmn):
        res = logdet_primal_via_dual(paper_kmn)
        assert res.method is Method.DUALITY_REDUCED
        assert rel_close(res.logdet, LN_80000, 1e-10)
        assert res.flops_estimate == 6 ** 3 // 3

    def test_star(self, paper_star):
        assert rel_close(logdet_primal_via_dual(star_to_model(paper_star)).logdet, LN_648, 1e-10)

    def test_single_edge_ones(self):
        p = broadcast_model(1, 1, 1, 1, 1)
        assert leibniz_det(build_dual_precision(p).data) == 3
        assert leibniz_det(build_primal_precision(p).data) == 3
        assert rel_close(logdet_primal_via_dual(p).logdet, math.log(3), 1e-15)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10**9))
    def test_agrees_with_dense(self, m, n, seed):
        p = sample_random(m, n, seed, (0.1, 10))
        assert rel_close(logdet_primal_via_dual(p).logdet,
                         spd_logdet(build_primal_precision(p)).logdet, 1e-9)

    @pytest.mark.parametrize("m,n", [(2, 3), (8, 8), (16, 20), (32, 32)])
    def test_flops_ratio(self, m, n):
        p = broadcast_model(m, n, 1, 1, 1)
        ratio = logdet_primal_via_dual(p).flops_estimate / spd_logdet(
            build_primal_precision(p)).flops_estimate
        predicted = ((m + n) / (m * n)) ** 3
        assert predicted / 2 <= ratio <= predicted * 2


class TestVerifyRatio:
    def test_paper(self, paper_kmn):
        r = verify_ratio(paper_kmn, 1e-9)
        assert r.passed and r.abs_gap < 1e-10

    def test_random_4_7(self):
        assert verify_ratio(sample_random(4, 7, 11, (0.1, 10)), 1e-9).passed

    def test_sample_8_8_seed_7(self):
        assert verify_ratio(sample_random(8, 8, 7, (0.1, 10)), 1e-9).passed

    def test_two_by_two_ones_brute_force(self):
        p = broadcast_model(2, 2, 1, 1, 1)
        exact_lhs = math.log(leibniz_det(build_primal_precision(p).data)) - math.log(
            leibniz_det(build_dual_precision(p).data))
        r = verify_ratio(p, 1e-9)
        assert r.passed
        assert abs(r.lhs - exact_lhs) < 1e-12 and r.rhs == 0.0

    def test_zero_tolerance_fails_somewhere(self):
        reports = [verify_ratio(sample_random(5, 6, s), 0.0) for s in range(20)]
        assert not all(r.passed for r in reports)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 6), st.integers(2, 6), st.integers(0, 10**9), st.randoms(use_true_random=False))
    def test_w_relabeling_invariance(self, m, n, seed, rnd):
        p = sample_random(m, n, seed)
        perm = list(range(n))
        rnd.shuffle(perm)
        q = ModelParams(m, n, p.edge_prec[:, perm], p.u_prec, p.w_prec[perm])
        a, b = verify_ratio(p), verify_ratio(q)
        assert abs(a.lhs - b.lhs) <= 1e-10 * (1 + abs(a.lhs))
        assert abs(a.rhs - b.rhs) <= 1e-10 * (1 + abs(a.rhs))


@pytest.mark.parametrize("seed", range(0, 200, 20))
def test_big_precision_spread(seed):
    p = sample_random(6, 7, seed, (1e-3, 1e3))
    assert verify_ratio(p, 1e-9).passed
    assert np.isfinite(logdet_primal_via_dual(p).logdet)
