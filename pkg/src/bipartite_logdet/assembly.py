"""Primal and dual precision matrices of the K_{m,n} and star models.

Edge (i, j) of K_{m,n} (0-based) is variable ``i * n + j`` of the primal
model, so the edges at u_0 come first, then those at u_1, and so on. The
dual model orders its variables U side first, then W side.
"""

import numpy as np

from .densela import SymMatrix
from .errors import DimensionTooLarge
from .params import DENSE_LIMIT, DUAL_LIMIT, validate


def edge_index(i, j, n):
    return i * n + j


def build_primal_precision(p):
    """The mn x mn precision of the edge-variable model.

    Entry (a, b) with a = (i, j), b = (i', j'):
    ``s2[i,j] + sigma2[i] + tau2[j]`` on the diagonal, ``sigma2[i]`` when
    the edges share u_i, ``tau2[j]`` when they share w_j, zero otherwise.
    """
    validate(p)
    m, n = p.m, p.n
    dim = m * n
    if dim > DENSE_LIMIT:
        raise DimensionTooLarge(f"primal dimension {dim} exceeds dense limit {DENSE_LIMIT}")
    rows_i = np.repeat(np.arange(m), n)
    rows_j = np.tile(np.arange(n), m)
    same_u = rows_i[:, None] == rows_i[None, :]
    same_w = rows_j[:, None] == rows_j[None, :]
    out = np.where(same_u, p.u_prec[rows_i][:, None], 0.0)
    out += np.where(same_w, p.w_prec[rows_j][:, None], 0.0)
    np.fill_diagonal(out, p.edge_prec.ravel() + p.u_prec[rows_i] + p.w_prec[rows_j])
    return SymMatrix(out)


def build_dual_precision(p):
    """The (m+n) x (m+n) precision of the dual vertex-variable model.

    Diagonal: reciprocal vertex precision plus the reciprocal precisions of
    all incident edges. Off-diagonal: ``-1/s2[i,j]`` between u_i and w_j,
    zero within each side.
    """
    validate(p)
    m, n = p.m, p.n
    if m + n > DUAL_LIMIT:
        raise DimensionTooLarge(f"dual dimension {m + n} exceeds limit {DUAL_LIMIT}")
    inv_edge = 1.0 / p.edge_prec
    out = np.zeros((m + n, m + n))
    out[:m, m:] = -inv_edge
    out[m:, :m] = -inv_edge.T
    diag = np.concatenate([1.0 / p.u_prec + inv_edge.sum(axis=1),
                           1.0 / p.w_prec + inv_edge.sum(axis=0)])
    np.fill_diagonal(out, diag)
    return SymMatrix(out)


def build_star_primal(sp):
    """n x n precision of the star: ``tau2`` everywhere plus ``s2[i] + sigma2[i]`` on the diagonal."""
    validate(sp)
    out = np.full((sp.n, sp.n), sp.hub_prec)
    np.fill_diagonal(out, sp.edge_prec + sp.leaf_prec + sp.hub_prec)
    return SymMatrix(out)


def star_dual_parts(sp):
    """Return ``(d, v, c)`` of the dual star arrowhead [[diag(d), v], [v^T, c]]."""
    validate(sp)
    inv_edge = 1.0 / sp.edge_prec
    d = 1.0 / sp.leaf_prec + inv_edge
    v = -inv_edge
    c = 1.0 / sp.hub_prec + float(np.sum(inv_edge))
    return d, v, c


def arrowhead_matrix(d, v, c):
    d = np.asarray(d, dtype=np.float64)
    k = d.shape[0]
    out = np.zeros((k + 1, k + 1))
    out[np.arange(k), np.arange(k)] = d
    out[:k, k] = v
    out[k, :k] = v
    out[k, k] = c
    return SymMatrix(out)


def build_star_dual(sp):
    """(n+1) x (n+1) arrowhead precision of the dual star, hub last."""
    return arrowhead_matrix(*star_dual_parts(sp))
