"""Sites, scenes and point-to-set distances.

A :class:`Site` is a finite union of primitives. Every primitive answers
``distance(X, norm, tol)`` for a stack of query points ``X`` of shape
``(N, d)``; the scalar helpers below are thin wrappers over the same code so
single-point and raster queries return identical floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, VorocellError
from .norms import NormSpec, as_vector, norm_rows

DEFAULT_TOL = 1e-10

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

# budget (in float64 entries) for one broadcast block of query x primitive x dim
_BLOCK = 1 << 21


def _golden_iterations(lipschitz: float, tol: float) -> int:
    """Steps that shrink a unit bracket until the value error is below ``tol``."""
    if lipschitz <= tol:
        return 0
    return int(math.ceil(math.log(tol / lipschitz) / math.log(INV_PHI)))


def golden_section_min(func, lo=0.0, hi=1.0, n_iter=None, tol=DEFAULT_TOL):
    """Minimise a unimodal function, vectorised over independent problems.

    ``func`` maps an array of abscissae to an array of values of the same
    shape; ``lo``/``hi`` are scalars or arrays fixing that shape. Returns the
    pair ``(t, value)`` of the best abscissa evaluated, endpoints included,
    so flat minima (p = 1 or inf) still yield the minimum value.
    """
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    if n_iter is None:
        h = float(np.max(b - a)) if a.size else 0.0
        n_iter = 0 if h <= tol else int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc = func(c)
    fd = func(d)
    for _ in range(n_iter):
        left = fc < fd
        # minimum in [a, d] where left, else in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, a + INV_PHI2 * (b - a), d)
        new_d = np.where(left, c, a + INV_PHI * (b - a))
        # one fresh evaluation per problem and step
        fresh = func(np.where(left, new_c, new_d))
        fc, fd = np.where(left, fresh, fd), np.where(left, fc, fresh)
        c, d = new_c, new_d
    lo_arr = np.broadcast_to(np.asarray(lo, dtype=float), c.shape)
    hi_arr = np.broadcast_to(np.asarray(hi, dtype=float), c.shape)
    cands_t = np.stack([c, d, lo_arr, hi_arr])
    cands_f = np.stack([fc, fd, func(lo_arr.copy()), func(hi_arr.copy())])
    k = np.argmin(cands_f, axis=0)
    t = np.take_along_axis(cands_t, k[None], axis=0)[0]
    v = np.take_along_axis(cands_f, k[None], axis=0)[0]
    return t, v


def _rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise DimensionMismatch(f"query points must be a 2-D array, got shape {X.shape}")
    return X


class Primitive:
    """Common interface of the site primitives."""

    dimension: int | None = None

    def distance(self, X, norm: NormSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
        raise NotImplementedError

    def nearest_point(self, x, norm: NormSpec, tol: float = DEFAULT_TOL):
        """A point of the primitive realising the distance to ``x``, or None."""
        raise NotImplementedError

    def anchors(self) -> np.ndarray:
        """Representative points of the primitive (used to seed rays)."""
        raise NotImplementedError

    def _check_dim(self, X):
        if self.dimension is not None and X.shape[1] != self.dimension:
            raise DimensionMismatch(
                f"query of dimension {X.shape[1]} against a {self.dimension}-D site")


@dataclass(frozen=True, eq=False)
class Points(Primitive):
    coords: np.ndarray

    def __post_init__(self):
        C = np.array(self.coords, dtype=float)
        if C.ndim == 1:
            C = C[None, :]
        if C.ndim != 2 or C.shape[0] == 0 or C.shape[1] == 0:
            raise DimensionMismatch("Points needs a non-empty (k, d) coordinate array")
        if not np.all(np.isfinite(C)):
            raise DomainError("point coordinates must be finite")
        C.setflags(write=False)
        object.__setattr__(self, "coords", C)

    @property
    def dimension(self):
        return self.coords.shape[1]

    def __eq__(self, other):
        return isinstance(other, Points) and np.array_equal(self.coords, other.coords)

    __hash__ = None

    def distance(self, X, norm, tol=DEFAULT_TOL):
        X = _rows(X)
        self._check_dim(X)
        C = self.coords
        out = np.empty(X.shape[0])
        step = max(1, _BLOCK // (C.size or 1))
        for s in range(0, X.shape[0], step):
            D = norm_rows(X[s:s + step, None, :] - C[None, :, :], norm.p)
            out[s:s + step] = D.min(axis=1)
        return out

    def nearest_point(self, x, norm, tol=DEFAULT_TOL):
        x = as_vector(x)
        D = norm_rows(x[None, :] - self.coords, norm.p)
        return self.coords[int(np.argmin(D))].copy()

    def anchors(self):
        return self.coords


@dataclass(frozen=True, eq=False)
class Segments(Primitive):
    """Closed segments given as an array of endpoint pairs, shape ``(k, 2, d)``."""

    pairs: np.ndarray

    def __post_init__(self):
        S = np.array(self.pairs, dtype=float)
        if S.ndim == 2 and S.shape[0] == 2:
            S = S[None]
        if S.ndim != 3 or S.shape[0] == 0 or S.shape[1] != 2 or S.shape[2] == 0:
            raise DimensionMismatch("Segments needs a non-empty (k, 2, d) endpoint array")
        if not np.all(np.isfinite(S)):
            raise DomainError("segment endpoints must be finite")
        if np.any(np.all(S[:, 0] == S[:, 1], axis=1)):
            raise DomainError("segment endpoints must be distinct")
        S.setflags(write=False)
        object.__setattr__(self, "pairs", S)

    @property
    def dimension(self):
        return self.pairs.shape[2]

    def __eq__(self, other):
        return isinstance(other, Segments) and np.array_equal(self.pairs, other.pairs)

    __hash__ = None

    def _n_iter(self, norm, tol):
        # |x - a - t(b-a)| is |b-a|-Lipschitz in t
        longest = float(norm_rows(self.pairs[:, 1] - self.pairs[:, 0], norm.p).max())
        return _golden_iterations(longest, tol)

    def distance(self, X, norm, tol=DEFAULT_TOL):
        X = _rows(X)
        self._check_dim(X)
        A = self.pairs[:, 0]
        V = self.pairs[:, 1] - A
        n_iter = self._n_iter(norm, tol)
        out = np.empty(X.shape[0])
        step = max(1, _BLOCK // (4 * self.pairs.size))
        for s in range(0, X.shape[0], step):
            R = X[s:s + step, None, :] - A[None, :, :]

            def objective(t, R=R):
                return norm_rows(R - t[..., None] * V[None, :, :], norm.p)

            shape = R.shape[:2]
            _, v = golden_section_min(objective, np.zeros(shape), np.ones(shape), n_iter=n_iter)
            out[s:s + step] = v.min(axis=1)
        return out

    def nearest_point(self, x, norm, tol=DEFAULT_TOL):
        x = as_vector(x)
        A = self.pairs[:, 0]
        V = self.pairs[:, 1] - A
        R = x[None, :] - A

        def objective(t):
            return norm_rows(R - t[:, None] * V, norm.p)

        k = self.pairs.shape[0]
        t, v = golden_section_min(objective, np.zeros(k), np.ones(k),
                                  n_iter=self._n_iter(norm, tol))
        j = int(np.argmin(v))
        return A[j] + t[j] * V[j]

    def anchors(self):
        return (self.pairs[:, 0] + self.pairs[:, 1]) / 2.0


@dataclass(frozen=True)
class SequenceSite(Primitive):
    """One of the two closed-form sites living in the sequence space l2.

    ``kind="P"``: ``{e1} U {((n+1)/n) e_n : n >= 2}``;
    ``kind="A"``: ``{((n+2)/n) e_n : n >= 2}``. Query vectors are read as
    finitely supported sequences (coordinate ``i`` is the coefficient of
    ``e_{i+1}``), so any dimension is accepted. Only the Euclidean norm makes
    sense here.
    """

    kind: str = "P"

    def __post_init__(self):
        if self.kind not in ("P", "A"):
            raise DomainError(f"sequence site kind must be 'P' or 'A', got {self.kind!r}")

    dimension = None

    def coefficients(self, length: int) -> np.ndarray:
        """Scale of the site element on each basis vector, nan where absent."""
        n = np.arange(1, length + 1, dtype=float)
        if self.kind == "P":
            c = (n + 1.0) / n
            c[0] = 1.0
        else:
            c = (n + 2.0) / n
            c[0] = np.nan
        return c

    @staticmethod
    def _require_l2(norm):
        if norm.p != 2.0:
            raise DomainError("sequence sites are defined in l2 only")

    def distance(self, X, norm, tol=DEFAULT_TOL):
        self._require_l2(norm)
        X = _rows(X)
        sq = (X * X).sum(axis=1)
        # scales tend to 1 from above: the tail infimum sqrt(|x|^2 + 1) is never attained
        tail = np.sqrt(sq + 1.0)
        c = self.coefficients(X.shape[1])
        present = ~np.isnan(c)
        if not present.any():
            return tail
        cp = c[present]
        terms = np.sqrt(np.maximum(sq[:, None] - 2.0 * cp[None, :] * X[:, present]
                                   + cp[None, :] ** 2, 0.0))
        return np.minimum(terms.min(axis=1), tail)

    def nearest_point(self, x, norm, tol=DEFAULT_TOL):
        self._require_l2(norm)
        x = as_vector(x)
        c = self.coefficients(x.size)
        present = np.flatnonzero(~np.isnan(c))
        sq = float(x @ x)
        tail = math.sqrt(sq + 1.0)
        if present.size == 0:
            return None
        terms = np.sqrt(np.maximum(sq - 2.0 * c[present] * x[present] + c[present] ** 2, 0.0))
        j = int(np.argmin(terms))
        if terms[j] > tail:
            # the infimum is only approached along the tail
            return None
        point = np.zeros_like(x)
        point[present[j]] = c[present[j]]
        return point

    def anchors(self):
        if self.kind == "P":
            return np.array([[1.0, 0.0], [0.0, 1.5]])
        return np.array([[0.0, 2.0]])


class Site:
    """Finite union of primitives; the distance is the minimum over them."""

    def __init__(self, primitives):
        if isinstance(primitives, Primitive):
            primitives = [primitives]
        primitives = tuple(primitives)
        if not primitives:
            raise DomainError("a site needs at least one primitive")
        dims = {q.dimension for q in primitives if q.dimension is not None}
        if len(dims) > 1:
            raise DimensionMismatch(f"site mixes dimensions {sorted(dims)}")
        self.primitives = primitives

    @classmethod
    def points(cls, coords):
        return cls([Points(coords)])

    @classmethod
    def segments(cls, pairs):
        return cls([Segments(pairs)])

    @classmethod
    def union(cls, sites):
        return cls([q for s in sites for q in s.primitives])

    @property
    def dimension(self):
        for q in self.primitives:
            if q.dimension is not None:
                return q.dimension
        return None

    @property
    def has_sequence(self):
        return any(isinstance(q, SequenceSite) for q in self.primitives)

    def distance(self, X, norm: NormSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
        X = _rows(X)
        out = self.primitives[0].distance(X, norm, tol)
        for q in self.primitives[1:]:
            out = np.minimum(out, q.distance(X, norm, tol))
        return out

    def nearest_point(self, x, norm, tol=DEFAULT_TOL):
        """Point of the site at distance ``d(x, S)`` up to ``tol``, or None."""
        x = as_vector(x)
        best, best_d = None, math.inf
        for q in self.primitives:
            y = q.nearest_point(x, norm, tol)
            if y is None:
                continue
            dy = float(norm_rows((x - y)[None, :], norm.p)[0])
            if dy < best_d:
                best, best_d = y, dy
        if best is None or best_d > float(self.distance(x, norm, tol)[0]) + tol:
            return None
        return best

    def anchors(self) -> np.ndarray:
        return np.vstack([q.anchors() for q in self.primitives])

    def __eq__(self, other):
        return isinstance(other, Site) and self.primitives == other.primitives

    __hash__ = None

    def __repr__(self):
        return f"Site({list(self.primitives)!r})"


@dataclass(eq=False)
class Scene:
    """Box domain, list of sites and the governing norm."""

    lo: np.ndarray
    hi: np.ndarray
    sites: list
    norm: NormSpec = field(default_factory=NormSpec)

    def __post_init__(self):
        self.lo = np.array(self.lo, dtype=float)
        self.hi = np.array(self.hi, dtype=float)
        if self.lo.ndim != 1 or self.lo.shape != self.hi.shape or self.lo.size == 0:
            raise DimensionMismatch("domain min/max must be equal-length vectors")
        if not np.all(self.lo < self.hi):
            raise DomainError("domain box must satisfy min < max componentwise")
        self.sites = [s if isinstance(s, Site) else Site(s) for s in self.sites]
        if not self.sites:
            raise DomainError("a scene needs at least one site")
        for k, s in enumerate(self.sites):
            if s.dimension is not None and s.dimension != self.dimension:
                raise DimensionMismatch(
                    f"site {k} has dimension {s.dimension}, scene has {self.dimension}")
            if s.has_sequence and self.norm.p != 2.0:
                raise DomainError("sequence sites require the l2 norm")

    @property
    def dimension(self) -> int:
        return self.lo.size

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    def contains(self, X) -> np.ndarray:
        X = _rows(X)
        return np.all((X >= self.lo) & (X <= self.hi), axis=1)

    def others(self, k: int) -> Site | None:
        """Union of every site except ``k``; None for a single-site scene."""
        rest = [s for j, s in enumerate(self.sites) if j != k]
        return Site.union(rest) if rest else None

    def distances(self, X, tol=DEFAULT_TOL) -> np.ndarray:
        """Distance from every query row to every site, shape ``(N, K)``."""
        X = _rows(X)
        if X.shape[1] != self.dimension:
            raise DimensionMismatch(f"query dimension {X.shape[1]} in a {self.dimension}-D scene")
        return np.stack([s.distance(X, self.norm, tol) for s in self.sites], axis=1)

    def __eq__(self, other):
        return (isinstance(other, Scene) and np.array_equal(self.lo, other.lo)
                and np.array_equal(self.hi, other.hi) and self.norm == other.norm
                and self.sites == other.sites)

    __hash__ = None


def dist_point_site(x, S: Site, n: NormSpec, tol: float = DEFAULT_TOL) -> float:
    """``d(x, S)``: exact for points and sequence sites, within ``tol`` for segments."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    x = as_vector(x)
    return float(S.distance(x[None, :], n, tol)[0])


def _segment_pair_separation(s0, s1, norm, tol):
    """Nested golden-section search over both segment parameters.

    ``h(s) = min_t |a + s u - b - t v|`` is convex (a partial minimum of a
    jointly convex map), so an outer search on ``s`` over an inner search on
    ``t`` converges for every p, including the nonsmooth p = 1 and p = inf
    where alternating coordinate descent stalls.
    """
    a, u = s0[0], s0[1] - s0[0]
    b, v = s1[0], s1[1] - s1[0]
    n_iter = _golden_iterations(
        float(norm_rows(u[None, :], norm.p)[0]) + float(norm_rows(v[None, :], norm.p)[0]), tol)

    def h(s):
        R = a[None, :] + s[:, None] * u[None, :] - b[None, :]
        _, val = golden_section_min(lambda t: norm_rows(R - t[:, None] * v[None, :], norm.p),
                                    np.zeros(s.size), np.ones(s.size), n_iter=n_iter)
        return val

    _, best = golden_section_min(h, np.zeros(1), np.ones(1), n_iter=n_iter)
    return float(best[0])


def _primitive_separation(q0, q1, norm, tol):
    if isinstance(q0, SequenceSite) and isinstance(q1, SequenceSite):
        if q0.kind == q1.kind:
            return 0.0
        # same-axis gaps (n+2)/n - (n+1)/n = 1/n decay to 0; cross-axis
        # gaps are >= sqrt(2). The infimum is 0 although P and A are disjoint.
        return 0.0
    if isinstance(q1, Points):
        q0, q1 = q1, q0
    if isinstance(q0, Points):
        return float(q1.distance(q0.coords, norm, tol).min())
    if isinstance(q0, Segments) and isinstance(q1, Segments):
        return min(_segment_pair_separation(s0, s1, norm, tol)
                   for s0 in q0.pairs for s1 in q1.pairs)
    raise VorocellError(
        f"separation between {type(q0).__name__} and {type(q1).__name__} is not supported")


def site_separation(P: Site, A: Site, n: NormSpec, tol: float = DEFAULT_TOL) -> float:
    """``d(P, A) = inf{|p - a| : p in P, a in A}``."""
    if P.dimension is not None and A.dimension is not None and P.dimension != A.dimension:
        raise DimensionMismatch(f"sites of dimension {P.dimension} and {A.dimension}")
    return min(_primitive_separation(q0, q1, n, tol)
               for q0 in P.primitives for q1 in A.primitives)


def check_positive_separation(P: Site, A: Site, n: NormSpec, tau_sep: float = 1e-9) -> bool:
    """True iff the two sites are positively separated at threshold ``tau_sep``."""
    return site_separation(P, A, n) >= tau_sep
