"""Closed-form log-determinants for homogeneous K_{n,n}, stars and arrowhead matrices.

Homogeneous K_{n,n} dual spectrum: the diagonal part is (1/sigma2 + n/s2) I
and the off-diagonal part has eigenvalues +n/s2, -n/s2 and 0 (2n-2 times),
so the dual eigenvalues are 1/sigma2, 1/sigma2 + 2n/s2 and
1/sigma2 + n/s2 (2n-2 times). Everything below is evaluated in log space.
"""

import math
from dataclasses import dataclass

import numpy as np

from .assembly import star_dual_parts
from .densela import LogDetResult, Method
from .errors import ArrowheadNotSPD
from .params import HomogeneousParams, validate


@dataclass(frozen=True)
class SweepRow:
    """One point of the limit curve.

    ``density`` is ln|Sigma_pi| / n^2 for the covariance, i.e. minus the
    precision log-determinant divided by n^2.
    """

    n: int
    n_squared: int
    density: float


def homogeneous_dual_spectrum(h):
    """Dual eigenvalues of homogeneous K_{n,n} in ascending order (with multiplicity)."""
    validate(h)
    a = 1.0 / h.sigma2
    b = h.n / h.s2
    return np.sort(np.array([a, a + 2.0 * b] + [a + b] * (2 * h.n - 2)))


def logdet_homogeneous_dual(h):
    validate(h)
    n, s2, sigma2 = h.n, h.s2, h.sigma2
    inv = 1.0 / sigma2
    val = (-math.log(sigma2) + math.log(inv + 2.0 * n / s2)
           + (2 * n - 2) * math.log(inv + n / s2))
    return LogDetResult(val, Method.CLOSED_FORM_HOMOGENEOUS, 0)


def logdet_homogeneous_primal(h):
    validate(h)
    n, s2, sigma2 = h.n, h.s2, h.sigma2
    val = (math.log(s2 + 2.0 * n * sigma2) + 2.0 * (n - 1) * math.log(s2 + n * sigma2)
           + float(n - 1) ** 2 * math.log(s2))
    return LogDetResult(val, Method.CLOSED_FORM_HOMOGENEOUS, 0)


def limit_logdet_density(s2):
    """Limit of ln|Sigma_pi| / n^2 as n grows: -ln(s2)."""
    if not (s2 > 0 and math.isfinite(s2)):
        raise ValueError(f"s2 must be positive and finite, got {s2!r}")
    return -math.log(s2)


def sweep_limit_curve(h0, n_values):
    """Covariance log-determinant density for each n, using h0's s2 and sigma2."""
    n_values = [int(k) for k in n_values]
    if not n_values:
        raise ValueError("n_values is empty")
    if any(k < 1 for k in n_values):
        raise ValueError("n values must be >= 1")
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n values must be strictly ascending")
    rows = []
    for k in n_values:
        h = HomogeneousParams(k, h0.s2, h0.sigma2)
        rows.append(SweepRow(k, k * k, -logdet_homogeneous_primal(h).logdet / (k * k)))
    return rows


def logdet_arrowhead(d, v, c):
    """ln det [[diag(d), v], [v^T, c]] via the Schur complement of the diagonal block.

    O(n). Raises ArrowheadNotSPD when ``c - sum(v_i^2 / d_i)`` is not positive.
    """
    d = np.asarray(d, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if d.shape != v.shape or d.ndim != 1:
        raise ValueError("d and v must be vectors of equal length")
    if not (d > 0).all():
        raise ArrowheadNotSPD(float(d.min()))
    schur = math.fsum(np.concatenate([[c], -(v * v) / d]))
    if not schur > 0:
        raise ArrowheadNotSPD(schur)
    return math.fsum(np.log(d)) + math.log(schur)


def star_log_scale(sp):
    """ln of the star's scale factor: sum ln sigma2_i + ln tau2 + sum ln s2_i."""
    validate(sp)
    return math.fsum(np.concatenate([np.log(sp.leaf_prec), [math.log(sp.hub_prec)],
                                     np.log(sp.edge_prec)]))


def _is_homogeneous_star(sp):
    return (sp.edge_prec == sp.edge_prec[0]).all() and (sp.leaf_prec == sp.leaf_prec[0]).all()


def logdet_star_primal(sp):
    """ln|Q_pi| for the star.

    Homogeneous stars use (sigma2 + s2 + n tau2)(sigma2 + s2)^(n-1) directly;
    otherwise the dual arrowhead determinant is shifted by the star scale.
    """
    validate(sp)
    n = sp.n
    if _is_homogeneous_star(sp):
        base = sp.leaf_prec[0] + sp.edge_prec[0]
        val = math.log(base + n * sp.hub_prec) + (n - 1) * math.log(base)
    else:
        val = logdet_arrowhead(*star_dual_parts(sp)) + star_log_scale(sp)
    return LogDetResult(val, Method.CLOSED_FORM_STAR, 0)
