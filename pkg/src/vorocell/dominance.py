"""The sign function f(x) = d(x, P) - d(x, A), point classification and
multi-site Voronoi assignment."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .norms import NormSpec, as_vector
from .sites import DEFAULT_TOL, Scene, Site


class Verdict(enum.Enum):
    STRICT_INTERIOR = "StrictInterior"
    NEAR_BISECTOR = "NearBisector"
    STRICT_EXTERIOR = "StrictExterior"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    f_value: float
    tolerance: float

    @property
    def in_region(self) -> bool:
        """Whether the point belongs to the (tolerance-widened) dominance region."""
        return self.verdict is not Verdict.STRICT_EXTERIOR


@dataclass(frozen=True)
class VoronoiAssignment:
    nearest: frozenset
    on_boundary: bool
    distances: tuple = ()


def f_values(X, P: Site, A: Site, n: NormSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorised ``f`` over the rows of ``X``."""
    return P.distance(X, n, tol) - A.distance(X, n, tol)


def f_value(x, P: Site, A: Site, n: NormSpec, tol: float = DEFAULT_TOL) -> float:
    x = as_vector(x)
    return float(f_values(x[None, :], P, A, n, tol)[0])


def verdicts(f, tau: float) -> np.ndarray:
    """Integer codes -1 / 0 / +1 for strict interior / near bisector / strict exterior."""
    f = np.asarray(f, dtype=float)
    return np.where(f < -tau, -1, np.where(f > tau, 1, 0)).astype(np.int8)


_CODE = {-1: Verdict.STRICT_INTERIOR, 0: Verdict.NEAR_BISECTOR, 1: Verdict.STRICT_EXTERIOR}


def classify_value(f: float, tau: float) -> Classification:
    if not tau > 0:
        raise DomainError("tau must be positive")
    return Classification(_CODE[int(verdicts(f, tau))], float(f), float(tau))


def classify(x, P: Site, A: Site, n: NormSpec, tau: float = 1e-9,
             tol: float = DEFAULT_TOL) -> Classification:
    """Place ``x`` in one of the sets f < -tau, |f| <= tau, f > tau."""
    if not tau > 0:
        raise DomainError("tau must be positive")
    return classify_value(f_value(x, P, A, n, tol), tau)


def assign_rows(D: np.ndarray, tau: float):
    """Nearest-site mask and boundary flag from a ``(N, K)`` distance table."""
    m = D.min(axis=1, keepdims=True)
    nearest = D <= m + tau
    return nearest, nearest.sum(axis=1) >= 2


def voronoi_assign(x, scene: Scene, tau: float = 1e-9,
                   tol: float = DEFAULT_TOL) -> VoronoiAssignment:
    """Tie set of sites at minimal distance from ``x`` and the boundary flag.

    ``x`` lies on the boundary of cell ``k`` exactly when ``k`` is nearest and
    some other site ties with it.
    """
    if not tau > 0:
        raise DomainError("tau must be positive")
    x = as_vector(x)
    D = scene.distances(x[None, :], tol)
    nearest, boundary = assign_rows(D, tau)
    return VoronoiAssignment(frozenset(int(k) for k in np.flatnonzero(nearest[0])),
                             bool(boundary[0]), tuple(float(d) for d in D[0]))


def cell_pair(scene: Scene, k: int):
    """``(P_k, union of the others)``: the dominance pair of cell ``k``."""
    A = scene.others(k)
    if A is None:
        raise DomainError("a single-site scene has no competing site")
    return scene.sites[k], A
