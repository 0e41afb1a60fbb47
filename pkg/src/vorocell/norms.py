"""lp norms, Clarkson's angle, moduli of convexity and the strong triangle inequality.

Vectors are plain sequences or 1-D numpy arrays; the ``*_rows`` helpers take
stacked 2-D arrays and reduce over the last axis so that the scalar and batch
paths agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, ZeroSum, ZeroVector

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class NormSpec:
    """Which lp norm governs every distance; ``p = math.inf`` is the max norm."""

    p: float = 2.0

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise DomainError(f"norm exponent must satisfy p >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, value) -> "NormSpec":
        """Build from a number or one of the strings ``"inf"``/``"infinity"``."""
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "+inf"):
                return cls(math.inf)
            try:
                return cls(float(text))
            except ValueError:
                raise DomainError(f"cannot read norm exponent {value!r}") from None
        return cls(float(value))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    def is_uniformly_convex(self) -> bool:
        return 1.0 < self.p < math.inf

    def to_json(self):
        return "inf" if self.is_infinite else self.p

    def __str__(self):
        return "l_inf" if self.is_infinite else f"l_{self.p:g}"


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    return arr


def norm_rows(V, p: float) -> np.ndarray:
    """lp norm of every row of ``V`` (reduction over the last axis)."""
    A = np.abs(np.asarray(V, dtype=float))
    if math.isinf(p):
        return A.max(axis=-1)
    if p == 1.0:
        return A.sum(axis=-1)
    if p == 2.0:
        return np.sqrt((A * A).sum(axis=-1))
    # scale by the largest entry so large or tiny coordinates do not overflow
    m = A.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    return np.power(np.power(A / safe, p).sum(axis=-1), 1.0 / p) * safe[..., 0]


def norm(v, n: NormSpec) -> float:
    """Return ``|v|_p``."""
    return float(norm_rows(as_vector(v)[None, :], n.p)[0])


def clarkson_angle(x, y, n: NormSpec) -> float:
    """Distance between the directions of two non-zero vectors, in [0, 2]."""
    x = as_vector(x)
    y = as_vector(y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"vectors of length {x.size} and {y.size}")
    nx = norm(x, n)
    ny = norm(y, n)
    if nx <= ZERO_TOL or ny <= ZERO_TOL:
        raise ZeroVector("Clarkson's angle is undefined for a zero vector")
    return min(2.0, norm(x / nx - y / ny, n))


def clarkson_angle_rows(X, Y, p: float) -> np.ndarray:
    nx = norm_rows(X, p)
    ny = norm_rows(Y, p)
    a = norm_rows(X / nx[:, None] - Y / ny[:, None], p)
    return np.minimum(a, 2.0)


def _modulus_array(p: float, eps: np.ndarray) -> np.ndarray:
    if p == 1.0 or math.isinf(p):
        return np.zeros_like(eps)
    if p >= 2.0:
        # 1 - (1 - (eps/2)^p)^(1/p), written to stay accurate for tiny eps
        u = np.power(eps / 2.0, p)
        with np.errstate(divide="ignore"):
            return -np.expm1(np.log1p(-u) / p)
    return np.minimum(1.0, (p - 1.0) * eps * eps / 8.0)


def modulus(n: NormSpec, eps):
    """Sound lower bound for the modulus of convexity of lp at ``eps``.

    Exact for p >= 2, the quadratic bound (p-1) eps^2 / 8 for 1 < p < 2, and
    identically zero for p in {1, inf}. Accepts a scalar or an array.
    """
    arr = np.asarray(eps, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 2.0):
        raise DomainError("modulus of convexity is defined for eps in [0, 2]")
    out = _modulus_array(n.p, arr)
    if out.ndim == 0:
        return float(out)
    return out


def modulus_source(n: NormSpec) -> str:
    if not n.is_uniformly_convex():
        return "closed-form"  # the zero function is the exact modulus
    return "closed-form" if n.p >= 2.0 else "lower-bound"


def modulus_numeric(n: NormSpec, eps: float, resolution: int = 2048,
                    chunk: int = 256) -> float:
    """Brute-force modulus of convexity over unit vectors of the lp plane.

    Directions are sampled uniformly in angle, normalised in the lp norm, and
    every ordered pair with ``|x - y| >= eps`` contributes ``1 - |(x+y)/2|``.
    The result over-estimates the infimum by at most the grid error. Near
    ``eps = 2`` with large p the modulus is so steep that grid pairs a hair
    short of antipodal can still undercut the closed form.
    """
    if not (0.0 < eps <= 2.0):
        raise DomainError(f"eps must lie in (0, 2], got {eps!r}")
    if resolution < 16:
        raise DomainError("resolution must be at least 16")
    theta = 2.0 * np.pi * np.arange(resolution) / resolution
    U = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    U = U / norm_rows(U, n.p)[:, None]
    # antipodal pairs sit at |x - y| = 2 only up to a few ulps; a wider slack
    # admits near-reflections, where delta falls steeply for large p
    threshold = eps - 8.0 * np.finfo(float).eps
    best = math.inf
    for start in range(0, resolution, chunk):
        # both quantities are symmetric in (x, y): pair each row with later rows only
        X = U[start:start + chunk, None, :]
        Y = U[None, start:, :]
        gap = norm_rows(X - Y, n.p)
        mid = norm_rows((X + Y) / 2.0, n.p)
        ok = gap >= threshold
        if ok.any():
            best = min(best, float((1.0 - mid[ok]).min()))
    if math.isinf(best):
        raise DomainError(f"no unit-vector pair reaches separation {eps}")
    return max(best, 0.0)


def strong_triangle_residual_rows(X1, X2, p: float) -> np.ndarray:
    """Batch version of :func:`strong_triangle_residual` without validation."""
    S = X1 + X2
    n1 = norm_rows(X1, p)
    n2 = norm_rows(X2, p)
    ns = norm_rows(S, p)
    a1 = norm_rows(X1 / n1[:, None] - S / ns[:, None], p)
    a2 = norm_rows(X2 / n2[:, None] - S / ns[:, None], p)
    d1 = _modulus_array(p, np.clip(a1, 0.0, 2.0))
    d2 = _modulus_array(p, np.clip(a2, 0.0, 2.0))
    return (n1 + n2 - 2.0 * d1 * n1 - 2.0 * d2 * n2) - ns


def strong_triangle_residual(x1, x2, n: NormSpec) -> float:
    """Slack in Clarkson's strong triangle inequality.

    Returns ``|x1| + |x2| - 2 delta(a1)|x1| - 2 delta(a2)|x2| - |x1 + x2|`` with
    ``a_l`` the angle between ``x_l`` and ``x1 + x2``; non-negative whenever
    :func:`modulus` is a sound lower bound.
    """
    x1 = as_vector(x1)
    x2 = as_vector(x2)
    if x1.shape != x2.shape:
        raise DimensionMismatch(f"vectors of length {x1.size} and {x2.size}")
    if norm(x1, n) <= ZERO_TOL or norm(x2, n) <= ZERO_TOL:
        raise ZeroVector("both summands must be non-zero")
    if norm(x1 + x2, n) <= ZERO_TOL:
        raise ZeroSum("x1 + x2 must be non-zero")
    return float(strong_triangle_residual_rows(x1[None, :], x2[None, :], n.p)[0])
