"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary (see conftest.py).
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from vorocell import (BoundaryPoint, NormSpec, ProbeVerdict, Verdict, boundary_fraction,
                      cell_pair, classify, fat_probe, fixed_tau, harvest_boundary, modulus,
                      modulus_numeric, proof_radius, rasterize, verify_clarkson,
                      verify_not_attained, verify_remark_1d, verify_theorem)
from vorocell.dominance import f_values
from vorocell.figures import (fig1_scene, fig3_scene, l1_pair_scene, overlap_scene,
                              render_figure, two_site_e_scene)
from vorocell.sites import Site

P_E = 2.718281828
RESULTS = {}


def record(num, title, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    line = (f"[{'PASS' if ok and within else 'FAIL'}] criterion {num:2d}: {title} -- {detail}"
            f" ({elapsed:.2f}s" + (f" / {budget:g}s budget)" if budget else ")"))
    RESULTS[num] = line
    print(line)
    assert ok, line
    assert within, line


def test_criterion_01_clarkson_audit():
    t0 = time.perf_counter()
    worst, failures, pairs = math.inf, 0, 0
    for p in (1.5, 2.0, P_E, 4.0):
        r = verify_clarkson(NormSpec(p), dims=range(2, 9), trials=100_000, seed=0)
        worst = min(worst, r.worst_residual)
        failures += r.failures
        pairs += r.trials
    ok = failures == 0 and worst >= -1e-12
    record(1, "Clarkson strong triangle inequality", ok,
           f"{pairs} pairs, min residual {worst:.3e}", time.perf_counter() - t0, 10)


def test_criterion_02_modulus_soundness():
    t0 = time.perf_counter()
    worst_gap, p2_err = -math.inf, 0.0
    for p in (1.5, 2.0, P_E, 3.0, 5.0):
        for eps in (0.25, 0.5, 1.0, 1.5, 2.0):
            numeric = modulus_numeric(NormSpec(p), eps, 2048)
            worst_gap = max(worst_gap, modulus(NormSpec(p), eps) - numeric)
            if p == 2.0:
                exact = 1 - math.sqrt(1 - eps * eps / 4)
                p2_err = max(p2_err, abs(numeric - exact), abs(modulus(NormSpec(p), eps) - exact))
    ok = worst_gap <= 1e-3 and p2_err <= 1e-3
    record(2, "modulus below brute-force oracle", ok,
           f"max(delta - numeric) {worst_gap:.2e}, p=2 error {p2_err:.2e}",
           time.perf_counter() - t0, 30)


def _harvest(scene, want, rays_per_cell=256):
    pts = []
    rays = rays_per_cell
    while len(pts) < want:
        pts = []
        for k in range(len(scene.sites)):
            pts += [(k, r.point) for r in harvest_boundary(scene, k, rays)
                    if isinstance(r, BoundaryPoint)]
        rays *= 2
    return pts[:want]


def test_criterion_03_thin_bisectors():
    t0 = time.perf_counter()
    details, ok = [], True
    for name, scene in (("fig1", fig1_scene()), ("two-site p=e", two_site_e_scene())):
        pts = _harvest(scene, 1000)
        thin = 0
        for i, (k, z) in enumerate(pts):
            P, A = cell_pair(scene, k)
            rep = fat_probe(z, 1e-2, 200, P, A, scene.norm, seed=i)
            thin += rep.verdict is ProbeVerdict.THIN
        ok &= len(pts) == 1000 and thin == 1000
        details.append(f"{name} {thin}/{len(pts)} thin")
    record(3, "thin bisectors (ray-shot points)", ok, ", ".join(details),
           time.perf_counter() - t0, 60)


def test_criterion_04_fat_bisector():
    t0 = time.perf_counter()
    scene = fig3_scene()
    P, A = cell_pair(scene, 0)
    # bisector points: a coarse grid of the equality set |f| <= tau
    g = np.linspace(-4.9, 4.9, 50)
    X = np.stack(np.meshgrid(g, g), axis=-1).reshape(-1, 2)
    Z = X[np.abs(f_values(X, P, A, scene.norm)) <= 1e-6]
    fat = sum(fat_probe(z, 0.1, 200, P, A, scene.norm, tau=1e-6).verdict is ProbeVerdict.FAT
              for z in Z)
    f256 = boundary_fraction(rasterize(scene, 256, 256, fixed_tau(1e-6)))
    f512 = boundary_fraction(rasterize(scene, 512, 512, fixed_tau(1e-6)))
    rel = abs(f512 - f256) / f256
    g256 = boundary_fraction(rasterize(fig1_scene(), 256, 256))
    g512 = boundary_fraction(rasterize(fig1_scene(), 512, 512))
    ok = fat >= 1 and rel < 0.2 and g512 <= 0.6 * g256
    record(4, "fat bisector under l_inf", ok,
           f"{fat}/{len(Z)} probes fat; fixed-tau fraction {f256:.4f}->{f512:.4f} "
           f"(rel {rel:.3f}); fig1 {g256:.5f}->{g512:.5f} (ratio {g512 / g256:.3f})",
           time.perf_counter() - t0, 120)


def test_criterion_05_not_attained():
    t0 = time.perf_counter()
    r = verify_not_attained(support_dim=50, trials=10_000, seed=0)
    ok = r.passed and r.details["f_at_zero"] == 0.0 and r.worst_residual <= 1e-12
    record(5, "non-attained infimum: B(0,0.1) in dom(P,A)", ok,
           f"f(0)={r.details['f_at_zero']!r}, max f {r.worst_residual:.3e} over {r.trials}",
           time.perf_counter() - t0, 10)


def test_criterion_06_overlap():
    t0 = time.perf_counter()
    scene = overlap_scene()
    P, A = cell_pair(scene, 0)
    rng = np.random.default_rng(0)
    S = np.column_stack([rng.uniform(-1, 1, 1000), rng.uniform(-5, 5, 1000)])
    near = sum(classify(z, P, A, scene.norm, 1e-9).verdict is Verdict.NEAR_BISECTOR for z in S)
    # [-2,2] x R lies in dom(P,A): balls of radius 0.5 around S stay inside
    interior = 0
    for z in S:
        d = rng.standard_normal((32, 2))
        B = z + 0.5 * rng.uniform(0, 1, (32, 1)) * d / np.linalg.norm(d, axis=1, keepdims=True)
        interior += bool(np.all(f_values(B, P, A, scene.norm) <= 1e-9))
    r = verify_theorem(scene, 0, trials=300, seed=0, allow_gate_bypass=True)
    failed = r.details["failed_suites"]
    ok = near == 1000 and interior == 1000 and "boundary" in failed and "interior" not in failed
    record(6, "overlapping sites", ok,
           f"{near}/1000 near-bisector, {interior}/1000 with interior balls, "
           f"bypassed run fails {failed}", time.perf_counter() - t0, 10)


def _in_l1_set(X):
    x, y = X[:, 0], X[:, 1]
    return ((x <= -1) & (y >= 1)) | ((x >= 1) & (y <= -1)) | ((x == -y) & (np.abs(x) <= 1))


def test_criterion_07_l1_bisector():
    t0 = time.perf_counter()
    scene = l1_pair_scene()
    P, A = cell_pair(scene, 0)
    q = np.linspace(-5, -1, 20)
    quad = np.stack(np.meshgrid(q, -q), axis=-1).reshape(-1, 2)        # (-inf,-1] x [1,inf)
    t = np.linspace(-1, 1, 200)
    on = np.vstack([quad, -quad, np.column_stack([t, -t])])          # 400 + 400 + 200
    assert on.shape[0] == 1000 and np.all(_in_l1_set(on))
    rng = np.random.default_rng(1)
    off = []
    while len(off) < 1000:
        x = rng.uniform(-5, 5, 2)
        if not _in_l1_set(x[None])[0] and min(abs(x[0] + x[1]), abs(x[0] + 1), abs(x[1] - 1),
                                              abs(x[0] - 1), abs(x[1] + 1)) > 1e-6:
            off.append(x)
    n_on = sum(classify(z, P, A, scene.norm, 1e-9).verdict is Verdict.NEAR_BISECTOR for z in on)
    n_off = sum(classify(z, P, A, scene.norm, 1e-9).verdict is not Verdict.NEAR_BISECTOR
                for z in off)
    ok = n_on == 1000 and n_off == 1000
    record(7, "explicit l1 bisector", ok, f"{n_on}/1000 on-set near, {n_off}/1000 off-set strict",
           time.perf_counter() - t0, 5)


def test_criterion_08_remark():
    t0 = time.perf_counter()
    r = verify_remark_1d(1000)
    record(8, "1-D boundary/closure independence", r.passed,
           ", ".join(k for k, v in r.details["checks"].items() if v), time.perf_counter() - t0, 1)


def test_criterion_09_proof_radius():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    bad = 0
    for i in range(1000):
        n = NormSpec([1.5, 2.0, P_E, 4.0][i % 4])
        sigma, eps = np.exp(rng.uniform(-8, 3, 2))
        d_za = float(np.exp(rng.uniform(-3, 3)))
        # bisector points have d_pa <= 2 d_za; a tenth of the draws go past it
        d_pa = float(d_za * rng.uniform(0.01, 2.0 if i % 10 else 8.0))
        r = proof_radius(float(sigma), float(eps), d_pa, d_za, n)
        good = 0 < r.radius <= min(sigma, d_pa / 4, eps / 2 * modulus(n, r.witness))
        if d_pa <= 2 * d_za:
            good &= r.witness < 0.5
        bad += not good
    record(9, "proof radius well defined", bad == 0, f"{1000 - bad}/1000 inputs valid",
           time.perf_counter() - t0, 1)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "vorocell", *args], capture_output=True,
                          check=True).stdout


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    same = {}
    for run in ("a", "b"):
        d = tmp_path / run
        d.mkdir()
        for name in ("fig1", "fig2", "fig3", "fig4"):
            render_figure(name, d / f"{name}.ppm", 128, 128)
        _cli("render", "two_site_e.scene", "--width", "64", "--height", "64", "--out",
             str(d / "e.ppm"))
        _cli("render", "fig3.scene", "--width", "64", "--height", "64", "--fixed-tau",
             "--out", str(d / "f3.pgm"))
        _cli("bisector", "fig1.scene", "--rays", "128", "--out", str(d / "fig1.svg"))
        (d / "reports.jsonl").write_bytes(
            _cli("verify", "--suite", "theorem", "--scene", "fig1.scene", "--trials", "200")
            + _cli("verify", "--suite", "clarkson", "--trials", "2000", "--seed", "3")
            + _cli("verify", "--suite", "not-attained", "--trials", "500")
            + _cli("verify", "--suite", "remark-1d")
            + verify_theorem(fig3_scene(), 0, 200, 5, allow_gate_bypass=True).to_json().encode())
    for f in sorted((tmp_path / "a").iterdir()):
        same[f.name] = f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()
    differing = [k for k, v in same.items() if not v]
    record(10, "byte-identical outputs", not differing and len(same) == 8,
           f"{sum(same.values())}/{len(same)} artefacts identical" +
           (f", differing: {differing}" if differing else ""), time.perf_counter() - t0)
