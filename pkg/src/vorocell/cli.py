"""Command-line entry point: ``vorocell {render,figure,classify,bisector,verify}``.

Exit codes: 0 success, 2 parse/usage error, 3 dimension error, 4 I/O error,
5 unexpected verification outcome.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import figures
from .bisector import BoundaryPoint, harvest_boundary
from .dominance import cell_pair, classify
from .errors import DimensionMismatch, PreconditionFailed, VorocellError
from .norms import NormSpec
from .raster import (boundary_fraction, export_bisector_svg, export_image, export_pgm,
                     fixed_tau, pitch_tau, rasterize)
from .scenefile import load_scene
from .verify import (counterexample_reproduced, verify_clarkson, verify_not_attained,
                     verify_remark_1d, verify_theorem)

EXIT_OK, EXIT_PARSE, EXIT_DIM, EXIT_IO, EXIT_VERIFY = 0, 2, 3, 4, 5

CLARKSON_NORMS = (1.5, 2.0, figures.P_E, 4.0)
THEOREM_CORPUS = ("fig1", "fig2", "two_site", "two_site_e", "segment")
COUNTEREXAMPLES = ("fig3", "overlap")


def resolve_scene(ref):
    """Load a scene file, falling back to the bundled scene of that name."""
    if os.path.exists(ref):
        return load_scene(ref)
    stem = os.path.basename(ref)
    if stem.endswith(".scene"):
        stem = stem[:-len(".scene")]
    if stem in figures.SCENES:
        return figures.load_builtin(stem)
    raise FileNotFoundError(f"no such scene file: {ref}")


def _coords(text):
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coordinate list {text!r}") from None


def _tau_policy(args):
    if args.fixed_tau:
        return fixed_tau(args.tau if args.tau is not None else 1e-6)
    return pitch_tau(args.tau if args.tau is not None else 0.25)


def cmd_render(args):
    scene = resolve_scene(args.scene)
    grid = rasterize(scene, args.width, args.height, _tau_policy(args))
    if args.out.endswith(".pgm"):
        export_pgm(grid, args.out)
    else:
        export_image(grid, args.out)
    print(f"boundary_fraction={boundary_fraction(grid)!r}")
    return EXIT_OK


def cmd_figure(args):
    grid = figures.render_figure(args.name, args.out, args.width, args.height)
    print(f"boundary_fraction={boundary_fraction(grid)!r}")
    return EXIT_OK


def cmd_classify(args):
    scene = resolve_scene(args.scene)
    if len(args.point) != scene.dimension:
        raise DimensionMismatch(f"point has {len(args.point)} coordinates, scene is {scene.dimension}-D")
    P, A = cell_pair(scene, args.site)
    c = classify(args.point, P, A, scene.norm, args.tau)
    print(f"{c.verdict} f={c.f_value + 0.0:.12g}")
    return EXIT_OK


def cmd_bisector(args):
    scene = resolve_scene(args.scene)
    if scene.dimension != 2:
        raise DimensionMismatch("bisector harvesting draws 2-D scenes only")
    if not 0 <= args.site < len(scene.sites):
        raise VorocellError(f"site index {args.site} out of range")
    points = [r for r in harvest_boundary(scene, args.site, args.rays)
              if isinstance(r, BoundaryPoint)]
    export_bisector_svg(points, args.out, scene)
    print(f"count={len(points)}")
    return EXIT_OK


def _run_theorem(scene, args, name=None):
    """Return True when the run behaved as predicted."""
    trials = args.trials or 1000
    try:
        report = verify_theorem(scene, args.site, trials, args.seed,
                                allow_gate_bypass=args.allow_gate_bypass)
    except PreconditionFailed as exc:
        print(json.dumps({"check": "theorem", "scene": name or args.scene, "verdict": "fail",
                          "outcome": f"precondition failed: {exc}"}, sort_keys=True))
        return False
    if report.details["bypassed"]:
        ok = counterexample_reproduced(report)
        print(report.to_json(outcome="expected-fail reproduced" if ok else "unexpected pass"))
        return ok
    print(report.to_json(outcome="pass" if report.passed else "unexpected fail"))
    return report.passed


def cmd_verify(args):
    ok = True
    suites = ["clarkson", "theorem", "not-attained", "remark-1d"] if args.suite == "all" else [args.suite]
    for suite in suites:
        if suite == "clarkson":
            norms = [NormSpec.parse(args.p)] if args.p else [NormSpec(p) for p in CLARKSON_NORMS]
            for n in norms:
                report = verify_clarkson(n, trials=args.trials or 100_000, seed=args.seed)
                print(report.to_json())
                ok &= report.passed
        elif suite == "theorem":
            if args.scene:
                ok &= _run_theorem(resolve_scene(args.scene), args)
            else:
                for name in THEOREM_CORPUS:
                    ok &= _run_theorem(figures.load_builtin(name), args, name)
                if args.suite == "all" or args.allow_gate_bypass:
                    bypass = argparse.Namespace(**{**vars(args), "allow_gate_bypass": True})
                    for name in COUNTEREXAMPLES:
                        ok &= _run_theorem(figures.load_builtin(name), bypass, name)
        elif suite == "not-attained":
            report = verify_not_attained(trials=args.trials or 10_000, seed=args.seed)
            print(report.to_json())
            ok &= report.passed
        else:
            report = verify_remark_1d()
            print(report.to_json())
            ok &= report.passed
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="vorocell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="rasterise a 2-D scene to a P6 (or .pgm P2) image")
    p.add_argument("scene")
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--out", required=True)
    p.add_argument("--tau", type=float, default=None,
                   help="band factor times pixel diagonal (default 0.25), or the "
                        "absolute tau with --fixed-tau (default 1e-6)")
    p.add_argument("--fixed-tau", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("figure", help="render one of the built-in figure recipes")
    p.add_argument("name", choices=sorted(figures.FIGURES))
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("classify", help="classify a point against the cell of one site")
    p.add_argument("scene")
    p.add_argument("--site", type=int, default=0)
    p.add_argument("--point", type=_coords, required=True)
    p.add_argument("--tau", type=float, default=1e-9)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bisector", help="harvest boundary points by ray shooting into an SVG")
    p.add_argument("scene")
    p.add_argument("--site", type=int, default=0)
    p.add_argument("--rays", type=int, default=64)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bisector)

    p = sub.add_parser("verify", help="run verification programs, one JSON report per line")
    p.add_argument("--suite", choices=["clarkson", "theorem", "not-attained", "remark-1d", "all"],
                   default="all")
    p.add_argument("--scene")
    p.add_argument("--site", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--p", default=None, help="single norm exponent for the clarkson suite")
    p.add_argument("--allow-gate-bypass", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except VorocellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
