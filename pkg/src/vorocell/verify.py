"""Seedable verification programs with JSON reports.

Each ``verify_*`` function samples the property it names and returns a
:class:`VerificationReport`; identical arguments give identical reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bisector import (BoundaryPoint, ProbeVerdict, ball_samples, escape_point,
                       fat_probe, harvest_boundary)
from .dominance import cell_pair, f_values
from .errors import DomainError, PreconditionFailed
from .norms import NormSpec, norm_rows, strong_triangle_residual_rows
from .scenefile import scene_digest
from .sites import Scene, SequenceSite, Site, check_positive_separation

RESIDUAL_TOL = 1e-12

# sub-suites of verify_theorem, keyed by the identity they sample
BOUNDARY, INTERIOR, CLOSURE = "boundary", "interior", "closure"


@dataclass
class VerificationReport:
    check: str
    scene_digest: str
    trials: int
    failures: int
    worst_residual: float
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.failures == 0 else "fail"

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d

    def to_json(self, **extra) -> str:
        """One-line JSON document with sorted keys; ``extra`` adds top-level fields."""
        return json.dumps(_plain({**self.to_dict(), **extra}), sort_keys=True)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _clarkson_pairs(rng, dim, count):
    scale1 = np.exp(rng.uniform(-3.0, 3.0, (count, 1)))
    scale2 = np.exp(rng.uniform(-3.0, 3.0, (count, 1)))
    X1 = rng.standard_normal((count, dim)) * scale1
    X2 = rng.standard_normal((count, dim)) * scale2
    return X1, X2


def _adversarial_pairs(rng, dim, count):
    """Nearly parallel and nearly opposite pairs (relative angles ~1e-8)."""
    X1 = rng.standard_normal((count, dim))
    lam = np.exp(rng.uniform(-2.0, 2.0, (count, 1)))
    noise = 1e-8 * rng.standard_normal((count, dim))
    half = count // 2
    X2 = lam * X1 + noise
    # opposite direction with a length mismatch keeps x1 + x2 away from 0
    X2[half:] = -(1.5 * lam[half:]) * X1[half:] + noise[half:]
    return X1, X2


def verify_clarkson(n: NormSpec, dims=range(2, 9), trials: int = 100_000, seed: int = 0,
                    adversarial: int | None = None) -> VerificationReport:
    """Audit the strong triangle inequality on random and near-collinear pairs.

    ``trials`` random pairs are drawn per dimension, plus ``adversarial``
    (default ``trials // 10``) nearly parallel or opposite ones.
    """
    rng = np.random.default_rng(seed)
    if adversarial is None:
        adversarial = trials // 10
    total = failures = 0
    worst = math.inf
    worst_adv = math.inf
    per_dim = {}
    for dim in dims:
        X1, X2 = _clarkson_pairs(rng, dim, trials)
        Y1, Y2 = _adversarial_pairs(rng, dim, adversarial)
        X1, X2 = np.vstack([X1, Y1]), np.vstack([X2, Y2])
        ok = ((norm_rows(X1, n.p) > RESIDUAL_TOL) & (norm_rows(X2, n.p) > RESIDUAL_TOL)
              & (norm_rows(X1 + X2, n.p) > RESIDUAL_TOL))
        res = strong_triangle_residual_rows(X1[ok], X2[ok], n.p)
        bad = int((res < -RESIDUAL_TOL).sum())
        total += int(ok.sum())
        failures += bad
        worst = min(worst, float(res.min()))
        if adversarial:
            worst_adv = min(worst_adv, float(res[-int(ok[-adversarial:].sum()):].min()))
        per_dim[str(dim)] = {"pairs": int(ok.sum()), "failures": bad, "min_residual": float(res.min())}
    details = {"p": n.to_json(), "dims": [int(d) for d in dims], "per_dimension": per_dim,
               "adversarial_min_residual": worst_adv if adversarial else None}
    if not n.is_uniformly_convex():
        details["note"] = ("not uniformly convex; residual check degenerates to the "
                           "ordinary triangle inequality (delta = 0)")
    return VerificationReport("clarkson", f"lp:{n.to_json()}", total, failures, worst, seed, details)


def _uniform_in_box(rng, scene, count):
    return scene.lo + rng.random((count, scene.dimension)) * (scene.hi - scene.lo)


def theorem_gates(scene: Scene, P: Site, A: Site, tau_sep: float = 1e-9) -> dict:
    return {"positively_separated": bool(check_positive_separation(P, A, scene.norm, tau_sep)),
            "uniformly_convex": scene.norm.is_uniformly_convex()}


def verify_theorem(scene: Scene, P_index: int = 0, trials: int = 1000, seed: int = 0,
                   tau: float = 1e-9, allow_gate_bypass: bool = False, rays: int = 64,
                   probe_radii=(1e-2, 1e-3), probe_samples: int = 200,
                   closure_radii=(1e-1, 1e-2), max_band_probes: int = 64) -> VerificationReport:
    """Sample the boundary, interior and closure identities for cell ``P_index``.

    * boundary: every located bisector point (ray crossings, plus sampled
      points with ``|f| <= tau``) shows both signs of f in small balls;
    * interior: sampled points with ``f < -tau`` keep ``f < 0`` on a ball whose
      radius the 2-Lipschitz bound guarantees;
    * closure: sampled points of dom(P, A) have a strict-interior point
      within each radius of ``closure_radii``.

    Raises :class:`PreconditionFailed` unless the sites are positively
    separated and the norm uniformly convex, or ``allow_gate_bypass`` is set.
    """
    P, A = cell_pair(scene, P_index)
    n = scene.norm
    gates = theorem_gates(scene, P, A)
    if not all(gates.values()) and not allow_gate_bypass:
        failed = [k for k, v in gates.items() if not v]
        raise PreconditionFailed(f"gate failed: {', '.join(failed)}")
    rng = np.random.default_rng(seed)
    U = _uniform_in_box(rng, scene, trials)
    fU = f_values(U, P, A, n)

    # boundary
    harvested = [r for r in harvest_boundary(scene, P_index, rays, tol=tau, P=P, A=A)
                 if isinstance(r, BoundaryPoint)]
    band = U[np.abs(fU) <= tau][:max_band_probes]
    candidates = [b.point for b in harvested] + list(band)
    b_fail = 0
    verdict_counts = {v.value: 0 for v in ProbeVerdict}
    for i, z in enumerate(candidates):
        for radius in probe_radii:
            rep = fat_probe(z, radius, probe_samples, P, A, n, tau, seed=seed + i, check=False)
            verdict_counts[rep.verdict.value] += 1
            if rep.verdict is not ProbeVerdict.THIN:
                b_fail += 1
    worst = max((abs(b.f_residual) for b in harvested), default=0.0)
    boundary = {"trials": len(candidates) * len(probe_radii), "failures": b_fail,
                "ray_points": len(harvested), "band_points": int(band.shape[0]),
                "verdicts": verdict_counts}

    # interior: f is 2-Lipschitz, so f < 0 on B(x, |f(x)|/2) is forced
    strict = U[fU < -tau]
    fs = fU[fU < -tau]
    i_fail = 0
    for x, fx in zip(strict, fs):
        for radius in (tau / 4.0, abs(fx) / 4.0):
            if np.any(f_values(ball_samples(x, radius, 16, seed), P, A, n) >= 0.0):
                i_fail += 1
                break
    interior = {"trials": int(strict.shape[0]), "failures": i_fail}

    # closure at sampling resolution
    inside = U[fU <= tau]
    f_in = fU[fU <= tau]
    c_fail = 0
    for x, fx in zip(inside, f_in):
        if fx < -tau:
            continue
        q = P.nearest_point(x, n)
        for rho in closure_radii:
            probes = ball_samples(x, rho, 64, seed)
            if q is not None and np.linalg.norm(q - x) > 0:
                step = min(rho / 2.0, float(np.linalg.norm(q - x)))
                probes = np.vstack([x + step * (q - x) / np.linalg.norm(q - x), probes])
            if not np.any(f_values(probes, P, A, n) < -tau):
                c_fail += 1
                break
    closure = {"trials": int(inside.shape[0]), "failures": c_fail, "radii": list(closure_radii)}

    suites = {BOUNDARY: boundary, INTERIOR: interior, CLOSURE: closure}
    failed = sorted(k for k, v in suites.items() if v["failures"])
    details = {"P_index": P_index, "tau": tau, "gates": gates,
               "bypassed": bool(allow_gate_bypass and not all(gates.values())),
               "suites": suites, "failed_suites": failed}
    total = sum(v["trials"] for v in suites.values())
    return VerificationReport("theorem", scene_digest(scene), total,
                              b_fail + i_fail + c_fail, worst, seed, details)


def counterexample_reproduced(report: VerificationReport) -> bool:
    """A gate-bypassed run fails the boundary identity while the interior
    inclusion (which holds for every continuous f) survives."""
    failed = set(report.details.get("failed_suites", ()))
    return BOUNDARY in failed and INTERIOR not in failed


def verify_not_attained(support_dim: int = 50, trials: int = 10_000, seed: int = 0,
                        radius: float = 0.1) -> VerificationReport:
    """The origin sits on the bisector of the sequence sites yet inside dom(P, A).

    Checks ``f(0) = 0`` exactly, ``f <= 1e-12`` on sampled finitely supported
    points of ``B(0, radius)``, and that no sample has ``f > 0`` (so the
    both-sign property fails at 0).
    """
    if support_dim < 2:
        raise DomainError("support_dim must be at least 2")
    n = NormSpec(2.0)
    P = Site([SequenceSite("P")])
    A = Site([SequenceSite("A")])
    f0 = float(f_values(np.zeros((1, support_dim)), P, A, n)[0])
    rng = np.random.default_rng(seed)
    k = rng.integers(1, support_dim + 1, size=trials)
    ranks = np.argsort(rng.random((trials, support_dim)), axis=1).argsort(axis=1)
    mask = ranks < k[:, None]
    X = rng.standard_normal((trials, support_dim)) * mask
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    X *= radius * np.power(rng.random((trials, 1)), 1.0 / k[:, None])
    f = f_values(X, P, A, n)
    failures = int((f > RESIDUAL_TOL).sum())
    positives = int((f > 0.0).sum())
    escape = escape_point(np.zeros(support_dim), P, A, n)
    checks = {"f_at_zero_is_zero": f0 == 0.0,
              "ball_inside_region": failures == 0,
              "both_sign_fails_at_zero": positives == 0}
    details = {"support_dim": support_dim, "radius": radius, "f_at_zero": f0,
               "max_f": float(f.max()), "positive_samples": positives,
               "escape_point_found": escape is not None, "checks": checks}
    bad = failures + (0 if f0 == 0.0 else 1) + (0 if positives == 0 else 1)
    return VerificationReport("not-attained", "sequence-l2", trials, bad, float(f.max()), seed, details)


def remark_f(x):
    x = np.abs(np.asarray(x, dtype=float))
    return np.where(x <= 1.0, -x, x - 2.0)


def _grid_topology(values, strict_neg):
    """Interior, boundary and closure-of-strict masks on a 1-D grid.

    Only the grid's own points count as neighbours, so the two ends of the
    window are never boundary points (topology relative to the window).
    """
    S = values <= 0.0
    left = np.concatenate([[True], S[:-1]])
    right = np.concatenate([S[1:], [True]])
    interior = S & left & right
    boundary = S & ~interior
    N = values < 0.0 if strict_neg is None else strict_neg
    near = N | np.concatenate([[False], N[:-1]]) | np.concatenate([N[1:], [False]])
    return S, interior, boundary, near


def verify_remark_1d(grid: int = 1000) -> VerificationReport:
    """Closure and boundary identities are independent: neither implies the other.

    ``f(x) = -|x|`` on ``|x| <= 1`` and ``|x| - 2`` beyond keeps
    ``{f <= 0} = cl{f < 0}`` but has ``{f = 0} = {0, +-2}`` against boundary
    ``{+-2}``; ``g = -f`` has boundary ``= {g = 0} = {0, +-2}`` while ``0`` is
    missing from ``cl{g < 0}``.
    """
    if grid < 1000:
        raise DomainError("grid must be at least 1000")
    m = 1 << math.ceil(math.log2(grid / 8.0))
    # step 1/m is a power of two, so 0, +-1, +-2 are grid points exactly
    x = np.linspace(-4.0, 4.0, 8 * m + 1)
    f = remark_f(x)
    g = -f
    at = {v: int(np.flatnonzero(x == v)[0]) for v in (-2.0, 0.0, 2.0)}

    Sf, _, bf, clf = _grid_topology(f, None)
    zero_f = f == 0.0
    Sg, _, bg, clg = _grid_topology(g, None)
    zero_g = g == 0.0
    checks = {
        "f_closure_identity": bool(np.array_equal(clf, Sf)),
        "f_boundary_is_pm2": bool(np.array_equal(np.flatnonzero(bf), [at[-2.0], at[2.0]])),
        "f_zero_set_is_0_pm2": bool(np.array_equal(np.flatnonzero(zero_f),
                                                   [at[-2.0], at[0.0], at[2.0]])),
        "f_zero_not_boundary_at_0": bool(zero_f[at[0.0]] and not bf[at[0.0]]),
        "g_boundary_equals_zero_set": bool(np.array_equal(bg, zero_g)),
        "g_zero_set_is_0_pm2": bool(np.array_equal(np.flatnonzero(zero_g),
                                                   [at[-2.0], at[0.0], at[2.0]])),
        "g_closure_misses_0": bool(Sg[at[0.0]] and not clg[at[0.0]]),
    }
    failures = sum(not v for v in checks.values())
    details = {"grid_points": int(x.size), "step": 1.0 / m, "checks": checks}
    return VerificationReport("remark-1d", "piecewise-1d", int(x.size), failures, 0.0, 0, details)
