import math
import random

import numpy as np
import pytest

from bipartite_logdet import (StarParams, build_star_dual, build_star_primal,
                              gabp_marginal_precisions, gabp_star_logdet, logdet_arrowhead,
                              spd_logdet, star_log_scale)
from bipartite_logdet.assembly import star_dual_parts
from bipartite_logdet.densela import Method
from bipartite_logdet.errors import NonPositiveBelief
from bipartite_logdet.gabp import GaussianMessage, leaf_message
from bipartite_logdet.params import sample_random_star

from conftest import LN_81_OVER_4, rel_close


def test_paper_star(paper_star):
    res = gabp_star_logdet(paper_star)
    assert res.method is Method.GABP
    assert rel_close(res.logdet, LN_81_OVER_4, 1e-14)


def test_single_leaf_ones():
    sp = StarParams(1, [1.0], [1.0], 1.0)
    assert leaf_message(2.0, -1.0).precision == 0.5
    assert rel_close(gabp_star_logdet(sp).logdet, math.log(3.0), 1e-15)
    np.testing.assert_allclose(gabp_marginal_precisions(sp), [1.5, 1.5], rtol=1e-15)


def test_paper_marginals(paper_star):
    out = gabp_marginal_precisions(paper_star)
    assert rel_close(out[-1], 8 / 3, 1e-15)
    np.testing.assert_allclose(out[:-1], 24 / 17, rtol=1e-15)
    cov = np.linalg.inv(build_star_dual(paper_star).data)
    np.testing.assert_allclose(out, 1.0 / np.diagonal(cov), rtol=1e-12)


def test_random_n32_seed5():
    sp = sample_random_star(32, 5)
    assert rel_close(gabp_star_logdet(sp).logdet, logdet_arrowhead(*star_dual_parts(sp)), 1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_three_way_agreement(seed):
    sp = sample_random_star(1 + (seed * 37) % 256, seed)
    g = gabp_star_logdet(sp).logdet
    assert rel_close(g, logdet_arrowhead(*star_dual_parts(sp)), 1e-12)
    assert rel_close(g + star_log_scale(sp), spd_logdet(build_star_primal(sp)).logdet, 1e-9)


@pytest.mark.parametrize("seed", range(15))
def test_marginals_against_dense_inverse(seed):
    sp = sample_random_star(1 + (seed * 11) % 64, 1000 + seed)
    out = gabp_marginal_precisions(sp)
    cov = np.linalg.inv(build_star_dual(sp).data)
    assert (out > 0).all()
    np.testing.assert_allclose(out, 1.0 / np.diagonal(cov), rtol=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_leaf_order_does_not_matter(seed):
    sp = sample_random_star(200, seed)
    order = list(range(sp.n))
    random.Random(seed).shuffle(order)
    shuffled = StarParams(sp.n, sp.edge_prec[order], sp.leaf_prec[order], sp.hub_prec)
    a, b = gabp_star_logdet(sp).logdet, gabp_star_logdet(shuffled).logdet
    assert abs(a - b) <= 1e-13 * (1 + abs(a))
    ma, mb = gabp_marginal_precisions(sp), gabp_marginal_precisions(shuffled)
    np.testing.assert_allclose(ma[:-1][order], mb[:-1], rtol=1e-13)
    assert abs(ma[-1] - mb[-1]) <= 1e-13 * ma[-1]


def test_message_rejects_nonpositive():
    with pytest.raises(NonPositiveBelief):
        GaussianMessage(0.0)
    with pytest.raises(NonPositiveBelief):
        GaussianMessage(float("nan"))
