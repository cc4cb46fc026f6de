"""Log-determinants of two dual Gaussian graphical models on complete bipartite graphs.

The primal model lives on the mn edges of K_{m,n}; the dual lives on its
m + n vertices. Their precision determinants differ only by the product of
all factor precisions, so the mn x mn determinant can be obtained from an
(m+n) x (m+n) factorization.
"""

from .assembly import (build_dual_precision, build_primal_precision, build_star_dual,
                       build_star_primal)
from .closedform import (SweepRow, limit_logdet_density, logdet_arrowhead,
                         logdet_homogeneous_dual, logdet_homogeneous_primal, logdet_star_primal,
                         star_log_scale, sweep_limit_curve)
from .densela import LogDetResult, Method, SymMatrix, permute_congruence, spd_logdet, sym_eigenvalues
from .duality import ScaleFactor, log_scale_factor, logdet_primal_via_dual, verify_ratio
from .gabp import gabp_marginal_precisions, gabp_star_logdet
from .params import (HomogeneousParams, ModelParams, StarParams, homogeneous_to_full,
                     sample_random, star_to_model, validate)

__version__ = "0.1.0"

__all__ = [
    "HomogeneousParams", "LogDetResult", "Method", "ModelParams", "ScaleFactor", "StarParams",
    "SweepRow", "SymMatrix", "build_dual_precision", "build_primal_precision", "build_star_dual",
    "build_star_primal", "gabp_marginal_precisions", "gabp_star_logdet", "homogeneous_to_full",
    "limit_logdet_density", "log_scale_factor", "logdet_arrowhead", "logdet_homogeneous_dual",
    "logdet_homogeneous_primal", "logdet_primal_via_dual", "logdet_star_primal",
    "permute_congruence", "sample_random", "spd_logdet", "star_log_scale", "star_to_model",
    "sweep_limit_curve", "sym_eigenvalues", "validate", "verify_ratio",
]
