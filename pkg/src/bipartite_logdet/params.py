"""Parameterizations of the complete bipartite and star models.

All factor parameters are precisions (inverse variances). A K_{m,n} model
carries one precision per edge, one per U-side vertex and one per W-side
vertex. The star K_{1,n} uses its own naming: the hub carries ``hub_prec``
and each leaf carries ``leaf_prec[i]``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BadRange, NonPositivePrecision, ZeroDimension

# Largest primal dimension mn the dense path will allocate: (mn)^2 <= 2^24 entries.
DENSE_LIMIT = 1 << 12
# Largest dual dimension m + n.
DUAL_LIMIT = 1 << 12


def _frozen(values, ndim):
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_positive(arr, name):
    bad = ~(np.isfinite(arr) & (arr > 0))
    if bad.any():
        loc = tuple(int(k) for k in np.argwhere(bad)[0])
        raise NonPositivePrecision(f"{name}{list(loc)}", float(arr[loc]))


@dataclass(frozen=True, eq=False)
class ModelParams:
    """Precisions of a Gaussian model on K_{m,n}.

    ``edge_prec[i, j]`` is the precision of the factor on edge (u_i, w_j),
    ``u_prec[i]`` that of the factor at u_i and ``w_prec[j]`` that of the
    factor at w_j. Arrays are copied and made read-only.
    """

    m: int
    n: int
    edge_prec: np.ndarray
    u_prec: np.ndarray
    w_prec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "edge_prec", _frozen(self.edge_prec, 2))
        object.__setattr__(self, "u_prec", _frozen(self.u_prec, 1))
        object.__setattr__(self, "w_prec", _frozen(self.w_prec, 1))

    def __eq__(self, other):
        if not isinstance(other, ModelParams):
            return NotImplemented
        return (self.m == other.m and self.n == other.n
                and np.array_equal(self.edge_prec, other.edge_prec)
                and np.array_equal(self.u_prec, other.u_prec)
                and np.array_equal(self.w_prec, other.w_prec))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class StarParams:
    """Precisions of the star model K_{1,n}: per-leaf edge and leaf factors, one hub factor."""

    n: int
    edge_prec: np.ndarray
    leaf_prec: np.ndarray
    hub_prec: float

    def __post_init__(self):
        object.__setattr__(self, "edge_prec", _frozen(self.edge_prec, 1))
        object.__setattr__(self, "leaf_prec", _frozen(self.leaf_prec, 1))
        object.__setattr__(self, "hub_prec", float(self.hub_prec))

    def __eq__(self, other):
        if not isinstance(other, StarParams):
            return NotImplemented
        return (self.n == other.n and self.hub_prec == other.hub_prec
                and np.array_equal(self.edge_prec, other.edge_prec)
                and np.array_equal(self.leaf_prec, other.leaf_prec))

    __hash__ = None


@dataclass(frozen=True)
class HomogeneousParams:
    """K_{n,n} with a common edge precision ``s2`` and common vertex precision ``sigma2``."""

    n: int
    s2: float
    sigma2: float = field(default=1.0)


def validate(params):
    """Raise if any invariant of ``params`` is violated; return None otherwise.

    Accepts ModelParams, StarParams or HomogeneousParams.
    """
    if isinstance(params, ModelParams):
        if params.m < 1 or params.n < 1:
            raise ZeroDimension(f"m and n must be >= 1, got m={params.m}, n={params.n}")
        if params.edge_prec.shape != (params.m, params.n):
            raise ValueError(f"edge_prec has shape {params.edge_prec.shape}, "
                             f"expected {(params.m, params.n)}")
        if params.u_prec.shape != (params.m,) or params.w_prec.shape != (params.n,):
            raise ValueError("vertex precision vectors do not match m, n")
        _check_positive(params.edge_prec, "edge_prec")
        _check_positive(params.u_prec, "u_prec")
        _check_positive(params.w_prec, "w_prec")
    elif isinstance(params, StarParams):
        if params.n < 1:
            raise ZeroDimension(f"n must be >= 1, got {params.n}")
        if params.edge_prec.shape != (params.n,) or params.leaf_prec.shape != (params.n,):
            raise ValueError("star precision vectors do not match n")
        _check_positive(params.edge_prec, "edge_prec")
        _check_positive(params.leaf_prec, "leaf_prec")
        _check_positive(np.array([params.hub_prec]), "hub_prec")
    elif isinstance(params, HomogeneousParams):
        if params.n < 1:
            raise ZeroDimension(f"n must be >= 1, got {params.n}")
        _check_positive(np.array([params.s2]), "s2")
        _check_positive(np.array([params.sigma2]), "sigma2")
    else:
        raise TypeError(f"cannot validate {type(params).__name__}")


def broadcast_model(m, n, s2, sigma2, tau2):
    """ModelParams with every edge at ``s2``, every U vertex at ``sigma2``, every W vertex at ``tau2``."""
    if m < 1 or n < 1:
        raise ZeroDimension(f"m and n must be >= 1, got m={m}, n={n}")
    p = ModelParams(m, n, np.full((m, n), float(s2)),
                    np.full(m, float(sigma2)), np.full(n, float(tau2)))
    validate(p)
    return p


def broadcast_star(n, s2, sigma2, tau2):
    if n < 1:
        raise ZeroDimension(f"n must be >= 1, got {n}")
    sp = StarParams(n, np.full(n, float(s2)), np.full(n, float(sigma2)), tau2)
    validate(sp)
    return sp


def homogeneous_to_full(h):
    validate(h)
    return broadcast_model(h.n, h.n, h.s2, h.sigma2, h.sigma2)


def as_homogeneous(p):
    """Return the HomogeneousParams equivalent of ``p``, or None if ``p`` is not homogeneous."""
    if p.m != p.n:
        return None
    s2 = p.edge_prec.flat[0]
    sigma2 = p.u_prec[0]
    if (p.edge_prec == s2).all() and (p.u_prec == sigma2).all() and (p.w_prec == sigma2).all():
        return HomogeneousParams(p.n, float(s2), float(sigma2))
    return None


def star_to_model(sp):
    """Map a star onto the m = 1 bipartite model.

    The star's hub becomes the single U vertex, so ``hub_prec`` lands in
    ``u_prec`` and the leaf precisions land in ``w_prec``.
    """
    validate(sp)
    return ModelParams(1, sp.n, sp.edge_prec.reshape(1, -1), [sp.hub_prec], sp.leaf_prec)


def model_to_star(p):
    if p.m != 1:
        raise ValueError(f"only m = 1 models are stars, got m={p.m}")
    return StarParams(p.n, p.edge_prec[0], p.w_prec, p.u_prec[0])


def _log_uniform(rng, lo, hi, size):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


def _check_range(lo, hi):
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo <= 0 or hi <= lo:
        raise BadRange(f"need 0 < lo < hi, both finite; got ({lo}, {hi})")


def sample_random(m, n, seed, range=(0.1, 10.0)):
    """Draw every precision log-uniformly from ``range``; deterministic in ``seed``."""
    lo, hi = range
    _check_range(lo, hi)
    if m < 1 or n < 1:
        raise ZeroDimension(f"m and n must be >= 1, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    edge = _log_uniform(rng, lo, hi, (m, n))
    u = _log_uniform(rng, lo, hi, m)
    w = _log_uniform(rng, lo, hi, n)
    p = ModelParams(m, n, edge, u, w)
    validate(p)
    return p


def sample_random_star(n, seed, range=(0.1, 10.0)):
    lo, hi = range
    _check_range(lo, hi)
    if n < 1:
        raise ZeroDimension(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    edge = _log_uniform(rng, lo, hi, n)
    leaf = _log_uniform(rng, lo, hi, n)
    hub = float(_log_uniform(rng, lo, hi, 1)[0])
    sp = StarParams(n, edge, leaf, hub)
    validate(sp)
    return sp
