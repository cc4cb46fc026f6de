"""Gaussian belief propagation on the dual star model.

The dual star is a zero-mean pairwise Gaussian on a tree: leaf i has
self-precision d_i, the hub has self-precision c, and leaf i couples to the
hub with weight v_i. Messages carry only a precision. A leaf's message to
the hub is mu_i = v_i^2 / d_i, which the hub subtracts from c. One inward
sweep yields the determinant; the return sweep yields every marginal.
"""

import math
from dataclasses import dataclass

import numpy as np

from .assembly import star_dual_parts
from .densela import LogDetResult, Method
from .errors import NonPositiveBelief


@dataclass(frozen=True)
class GaussianMessage:
    precision: float

    def __post_init__(self):
        if not (self.precision > 0 and math.isfinite(self.precision)):
            raise NonPositiveBelief(f"message precision must be positive, got {self.precision!r}")


def leaf_message(d_i, v_i):
    """Message from leaf i to the hub after integrating out the leaf variable."""
    return GaussianMessage(v_i * v_i / d_i)


def _hub_belief(c, messages):
    # compensated: n can be in the hundreds and the result must stay order-independent
    belief = math.fsum([c] + [-msg.precision for msg in messages])
    if not belief > 0:
        raise NonPositiveBelief(f"hub belief precision is not positive: {belief!r}")
    return belief


def _inward(sp):
    d, v, c = star_dual_parts(sp)
    messages = [leaf_message(di, vi) for di, vi in zip(d, v)]
    return d, v, c, messages, _hub_belief(c, messages)


def gabp_star_logdet(sp):
    """ln|Q_rho| of the dual star: leaf self-precisions times the hub belief precision."""
    d, _, _, _, hub = _inward(sp)
    val = math.fsum(np.log(d)) + math.log(hub)
    return LogDetResult(val, Method.GABP, 3 * sp.n)


def gabp_marginal_precisions(sp):
    """Marginal precisions of (y_1, ..., y_n, z) under the dual star, hub last."""
    d, v, c, messages, hub = _inward(sp)
    out = np.empty(sp.n + 1)
    for i, msg in enumerate(messages):
        # hub cavity: belief without leaf i's own message
        cavity = hub + msg.precision
        back = v[i] * v[i] / cavity
        marginal = d[i] - back
        if not marginal > 0:
            raise NonPositiveBelief(f"leaf {i} marginal precision is not positive: {marginal!r}")
        out[i] = marginal
    out[sp.n] = hub
    return out
