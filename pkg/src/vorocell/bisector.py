"""Constructive access to the bisector {f = 0}.

Boundary points are located by marching along rays and bisecting on a sign
change of f; small balls around them are probed to tell thin bisectors from
fat ones.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dominance import f_value, f_values
from .errors import BadOrigin, DomainError, NoSignChange, NotOnBisector
from .norms import NormSpec, as_vector, modulus, norm
from .sites import DEFAULT_TOL, Scene, Site

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
MARCH_STEPS = 256


@dataclass(frozen=True)
class BoundaryPoint:
    point: np.ndarray
    f_residual: float
    bracket_width: float


@dataclass(frozen=True)
class NoCrossing:
    """The ray left the domain at ``exit_point`` without f turning positive."""

    exit_point: np.ndarray


class ProbeVerdict(enum.Enum):
    THIN = "ThinEvidence"
    FAT = "FatEvidence"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FatProbeReport:
    center: np.ndarray
    radius: float
    n_samples: int
    count_neg: int
    count_zero: int
    count_pos: int
    verdict: ProbeVerdict


class ProofRadius(NamedTuple):
    radius: float
    witness: float
    terms: tuple


def _dist_tol(tol):
    return min(DEFAULT_TOL, tol / 10.0)


def bisect_boundary(x_in, x_out, P: Site, A: Site, n: NormSpec,
                    tol: float = 1e-9) -> BoundaryPoint:
    """Find a point of ``[x_in, x_out]`` with ``|f| <= tol``.

    Requires ``f(x_in) < 0 < f(x_out)``. Because f is 2-Lipschitz, a bracket
    of length ``tol`` already pins ``|f(mid)|`` below ``tol``, so the loop
    runs at most ``ceil(log2(|x_out - x_in| / tol))`` times (plus a small
    allowance for segment-distance rounding).
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    x_in = as_vector(x_in)
    x_out = as_vector(x_out)
    dtol = _dist_tol(tol)
    f_in = f_value(x_in, P, A, n, dtol)
    f_out = f_value(x_out, P, A, n, dtol)
    if not (f_in < 0.0 < f_out):
        raise NoSignChange(f"f(x_in)={f_in:.3g}, f(x_out)={f_out:.3g}")
    length = norm(x_out - x_in, n)
    lo, hi = 0.0, 1.0
    max_steps = max(1, math.ceil(math.log2(max(length, tol) / tol))) + 8
    mid, fm = 0.5, f_value(x_in + 0.5 * (x_out - x_in), P, A, n, dtol)
    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        fm = f_value(x_in + mid * (x_out - x_in), P, A, n, dtol)
        if abs(fm) <= tol:
            break
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    return BoundaryPoint(x_in + mid * (x_out - x_in), fm, (hi - lo) * length)


def _box(domain):
    if isinstance(domain, Scene):
        return domain.lo, domain.hi
    lo, hi = domain
    return np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)


def _exit_parameter(origin, direction, lo, hi):
    t = math.inf
    for o, d, a, b in zip(origin, direction, lo, hi):
        if d > 0:
            t = min(t, (b - o) / d)
        elif d < 0:
            t = min(t, (a - o) / d)
    return max(t, 0.0)


def ray_shoot(origin, direction, domain, P: Site, A: Site, n: NormSpec,
              tol: float = 1e-9, steps: int = MARCH_STEPS):
    """March from ``origin`` until f turns positive, then bisect.

    ``domain`` is a :class:`Scene` or a ``(lo, hi)`` pair. The step is the
    Euclidean box diagonal over ``steps``; a double sign change inside one
    step goes unseen. Returns a :class:`BoundaryPoint` or :class:`NoCrossing`.
    """
    origin = as_vector(origin)
    direction = as_vector(direction)
    length = float(np.linalg.norm(direction))
    if length == 0.0:
        raise DomainError("ray direction must be non-zero")
    direction = direction / length
    lo, hi = _box(domain)
    dtol = _dist_tol(tol)
    if f_value(origin, P, A, n, dtol) >= 0.0:
        raise BadOrigin("ray origin must satisfy f < 0")
    step = float(np.linalg.norm(hi - lo)) / steps
    t_exit = _exit_parameter(origin, direction, lo, hi)
    ts = np.append(np.arange(0.0, t_exit, step), t_exit)
    X = origin[None, :] + ts[:, None] * direction[None, :]
    f = f_values(X, P, A, n, dtol)
    hits = np.flatnonzero(f > 0.0)
    if hits.size == 0:
        return NoCrossing(X[-1])
    k = int(hits[0])
    # f may sit at exactly 0 on a fat stretch before turning positive
    j = int(np.flatnonzero(f[:k] < 0.0)[-1])
    return bisect_boundary(X[j], X[k], P, A, n, tol)


def ray_directions(count: int, dimension: int = 2, seed: int = 0) -> np.ndarray:
    """Evenly spread unit directions (equal angles in 2-D, seeded Gaussian otherwise)."""
    if dimension == 2:
        theta = 2.0 * math.pi * (np.arange(count) + 0.5) / count
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    rng = np.random.default_rng(seed)
    D = rng.standard_normal((count, dimension))
    return D / np.linalg.norm(D, axis=1, keepdims=True)


def harvest_boundary(scene: Scene, k: int, rays: int, tol: float = 1e-9,
                     P: Site | None = None, A: Site | None = None):
    """Shoot ``rays`` rays from the anchor points of site ``k``.

    Directions are shared out round-robin over the anchors, so the result is
    deterministic. Returns the list of ray outcomes (boundary points and
    :class:`NoCrossing` markers) in ray order.
    """
    if P is None:
        P = scene.sites[k]
    if A is None:
        A = scene.others(k)
    anchors = np.asarray(P.anchors(), dtype=float)
    anchors = anchors[scene.contains(anchors)]
    if A is not None and anchors.size:
        # shared points of P and A (f = 0) cannot start a ray
        anchors = anchors[f_values(anchors, P, A, scene.norm, _dist_tol(tol)) < 0.0]
    if A is None or anchors.size == 0:
        return [NoCrossing(np.asarray(scene.lo)) for _ in range(rays)]
    per = -(-rays // anchors.shape[0])
    dirs = ray_directions(per, scene.dimension)
    out = []
    for i in range(rays):
        origin = anchors[i % anchors.shape[0]]
        d = dirs[i // anchors.shape[0]]
        # stagger directions between anchors so rays do not retrace each other
        if scene.dimension == 2 and anchors.shape[0] > 1:
            shift = 2.0 * math.pi * (i % anchors.shape[0]) / (anchors.shape[0] * per)
            c, s = math.cos(shift), math.sin(shift)
            d = np.array([c * d[0] - s * d[1], s * d[0] + c * d[1]])
        out.append(ray_shoot(origin, d, scene, P, A, scene.norm, tol))
    return out


def ball_samples(center, radius: float, n_samples: int, seed: int = 0) -> np.ndarray:
    """Quasi-uniform points strictly inside ``B(center, radius)`` (Euclidean).

    The plane uses a sunflower spiral rotated by a seed-dependent angle; other
    dimensions use seeded Gaussian directions with radii ``u^(1/d)``.
    """
    center = as_vector(center)
    d = center.size
    i = np.arange(n_samples)
    if d == 2:
        offset = (seed * GOLDEN_ANGLE * 7.0) % (2.0 * math.pi)
        r = radius * np.sqrt((i + 0.5) / n_samples)
        th = i * GOLDEN_ANGLE + offset
        return center + np.stack([r * np.cos(th), r * np.sin(th)], axis=1)
    rng = np.random.default_rng(seed)
    D = rng.standard_normal((n_samples, d))
    D /= np.linalg.norm(D, axis=1, keepdims=True)
    r = radius * np.power((i + 0.5) / n_samples, 1.0 / d)
    return center + r[:, None] * D


def fat_probe(z, radius: float, n_samples: int, P: Site, A: Site, n: NormSpec,
              tau: float = 1e-9, seed: int = 0, check: bool = True) -> FatProbeReport:
    """Count the signs of f over a quasi-uniform sample of ``B(z, radius)``.

    ThinEvidence: both strict signs appear. FatEvidence: every sample lies in
    the band ``|f| <= tau``. Anything else is Inconclusive.
    """
    z = as_vector(z)
    if not radius > 0:
        raise DomainError("radius must be positive")
    if n_samples < 10:
        raise DomainError("n_samples must be at least 10")
    dtol = _dist_tol(tau)
    if check and abs(f_value(z, P, A, n, dtol)) > tau:
        raise NotOnBisector(f"|f(z)| exceeds tau={tau:g}")
    f = f_values(ball_samples(z, radius, n_samples, seed), P, A, n, dtol)
    neg = int((f < -tau).sum())
    pos = int((f > tau).sum())
    zero = n_samples - neg - pos
    if neg > 0 and pos > 0:
        verdict = ProbeVerdict.THIN
    elif zero == n_samples:
        verdict = ProbeVerdict.FAT
    else:
        verdict = ProbeVerdict.INCONCLUSIVE
    return FatProbeReport(z, float(radius), n_samples, neg, zero, pos, verdict)


def escape_point(z, P: Site, A: Site, n: NormSpec, r0: float | None = None,
                 halvings: int = 16, tau: float = 1e-9):
    """Look for a point with f > 0 on the segment from ``z`` toward ``A``.

    Walks ``s = r0, r0/2, ..., r0/2**halvings`` along the direction of an
    (approximate) nearest point of ``A``. Returns the first point found, or
    None when the search fails -- in particular when ``d(z, A)`` is not
    attained and no nearest point exists.
    """
    z = as_vector(z)
    dtol = _dist_tol(tau)
    if abs(f_value(z, P, A, n, dtol)) > tau:
        raise NotOnBisector(f"|f(z)| exceeds tau={tau:g}")
    a = A.nearest_point(z, n, dtol)
    if a is None:
        return None
    gap = norm(a - z, n)
    if gap == 0.0:
        return None
    u = (a - z) / gap
    if r0 is None:
        r0 = float(A.distance(z, n, dtol)[0]) / 10.0
    for j in range(halvings + 1):
        x = z + (r0 / 2.0 ** j) * u
        if f_value(x, P, A, n, dtol) > 0.0:
            return x
    return None


def proof_radius(sigma: float, eps: float, d_pa: float, d_za: float,
                 n: NormSpec) -> ProofRadius:
    """Radius ``min(sigma, d_pa/4, (eps/2) * delta(d_pa / (4 (sigma + d_za))))``.

    ``witness`` is the modulus argument ``d_pa / (4 (sigma + d_za))``; at a
    bisector point ``d_pa <= 2 d_za`` holds, which keeps it below 0.5.
    """
    if not (sigma > 0 and eps > 0 and d_pa > 0 and d_za >= 0):
        raise DomainError("need sigma > 0, eps > 0, d_pa > 0 and d_za >= 0")
    witness = d_pa / (4.0 * (sigma + d_za))
    if witness > 2.0:
        raise DomainError(f"modulus argument {witness:.6g} exceeds 2")
    if d_pa <= 2.0 * d_za:
        assert witness < 0.5, witness
    terms = (float(sigma), d_pa / 4.0, eps / 2.0 * modulus(n, witness))
    return ProofRadius(min(terms), witness, terms)
