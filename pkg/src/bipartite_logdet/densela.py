"""Dense symmetric linear algebra: SPD log-determinant, permutation congruence, Jacobi eigenvalues."""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .errors import BadPermutation, NoConvergence, NotPositiveDefinite

EIGEN_MAX_DIM = 512


class Method(str, enum.Enum):
    DENSE_SPD = "DenseSPD"
    DUALITY_REDUCED = "DualityReduced"
    CLOSED_FORM_HOMOGENEOUS = "ClosedFormHomogeneous"
    CLOSED_FORM_STAR = "ClosedFormStar"
    GABP = "GaBP"

    def __str__(self):
        return self.value


class SymMatrix:
    """Dense symmetric matrix stored in full; the array is read-only.

    Construction checks exact (bitwise) symmetry and finiteness.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.array(data, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"expected a nonempty square matrix, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("matrix has non-finite entries")
        if not np.array_equal(arr, arr.T):
            raise ValueError("matrix is not exactly symmetric")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def dim(self):
        return self.data.shape[0]

    def nnz(self):
        return int(np.count_nonzero(self.data))

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"SymMatrix(dim={self.dim})"


@dataclass(frozen=True)
class LogDetResult:
    logdet: float
    method: Method
    flops_estimate: int = 0

    def __post_init__(self):
        if not math.isfinite(self.logdet):
            raise ValueError(f"log-determinant is not finite: {self.logdet!r}")


def cholesky_flops(p):
    return p ** 3 // 3


def spd_logdet(a):
    """ln det(a) from an unpivoted Cholesky factorization.

    Raises NotPositiveDefinite with the 0-based index of the first failing
    pivot. The sum of log pivots is returned; the determinant itself is
    never formed.
    """
    c, info = lapack.dpotrf(a.data, lower=1, clean=0, overwrite_a=0)
    if info > 0:
        raise NotPositiveDefinite(info - 1)
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    diag = np.diagonal(c)
    if not (diag > 0).all():
        raise NotPositiveDefinite(int(np.argmin(diag > 0)))
    return LogDetResult(2.0 * float(np.sum(np.log(diag))), Method.DENSE_SPD,
                        cholesky_flops(a.dim))


def permute_congruence(a, perm):
    """Return P a P^T where row i of the result is row ``perm[i]`` of ``a`` (0-based)."""
    perm = np.asarray(perm)
    p = a.dim
    if (perm.shape != (p,) or not np.issubdtype(perm.dtype, np.integer)
            or not np.array_equal(np.sort(perm), np.arange(p))):
        raise BadPermutation(f"not a permutation of range({p})")
    return SymMatrix(a.data[np.ix_(perm, perm)])


def sym_eigenvalues(a, tol=1e-12, max_sweeps=100):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations, ascending.

    Sweeps until the off-diagonal Frobenius norm falls below
    ``tol * ||a||_F``; raises NoConvergence if ``max_sweeps`` is exhausted.
    """
    p = a.dim
    if p > EIGEN_MAX_DIM:
        raise ValueError(f"Jacobi eigensolver is limited to dim <= {EIGEN_MAX_DIM}")
    w = np.array(a.data, dtype=np.float64)
    scale = np.linalg.norm(w)
    if scale == 0.0:
        return np.zeros(p)
    target = tol * scale

    def off_norm():
        return math.sqrt(max(float(np.sum(w * w) - np.sum(np.diagonal(w) ** 2)), 0.0))

    for _ in range(max_sweeps):
        if off_norm() < target:
            return np.sort(np.diagonal(w).copy())
        for i in range(p - 1):
            for j in range(i + 1, p):
                apq = w[i, j]
                if apq == 0.0:
                    continue
                theta = (w[j, j] - w[i, i]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_i = w[:, i].copy()
                col_j = w[:, j].copy()
                w[:, i] = c * col_i - s * col_j
                w[:, j] = s * col_i + c * col_j
                row_i = w[i, :].copy()
                row_j = w[j, :].copy()
                w[i, :] = c * row_i - s * row_j
                w[j, :] = s * row_i + c * row_j
                w[i, j] = w[j, i] = 0.0
    if off_norm() < target:
        return np.sort(np.diagonal(w).copy())
    raise NoConvergence(f"Jacobi sweeps did not converge in {max_sweeps} sweeps")
