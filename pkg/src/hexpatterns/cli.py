"""Command line interface.

Subcommands:
  generate   compute a pattern, verify it, write JSON and/or SVG
  verify     recompute the invariants of a saved document
  axis       semiaxis values, optionally against the closed form
  laxcheck   zero-curvature, spectral-twist and field round-trip audit
  render     SVG from a saved document

Exit codes: 0 success, 1 verification or data failure, 2 usage error.
"""
import argparse
import sys
from dataclasses import replace
from fractions import Fraction

from .errors import HexPatternError


def _alpha_value(text: str) -> float:
    """Decimal or fraction string to float ('0.4', '2/5')."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hexpatterns",
        description="Hexagonal circle patterns from integrable lattice "
                    "equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate and verify a pattern")
    gen.add_argument("--pattern", required=True,
                     choices=("zalpha", "z32log", "logz3"))
    gen.add_argument("--alpha", type=_alpha_value, default=None,
                     help="exponent parameter in (0, 1/2); zalpha only")
    gen.add_argument("--theta", type=float, default=None,
                     help="seam angle; defaults to 2*pi*alpha")
    gen.add_argument("--levels", type=int, default=8,
                     help="sector size n (default 8)")
    gen.add_argument("--field", choices=("u", "v", "w", "all"),
                     default="all", help="fields stored in the document")
    gen.add_argument("--json", dest="json_path", default=None,
                     help="write the document here")
    gen.add_argument("--svg", dest="svg_path", default=None,
                     help="render the document here")
    gen.add_argument("--tol", type=float, default=1e-8)

    ver = sub.add_parser("verify", help="verify a saved document")
    ver.add_argument("path")
    ver.add_argument("--tol", type=float, default=1e-8)

    axis = sub.add_parser("axis", help="print semiaxis values")
    axis.add_argument("--alpha", type=_alpha_value, required=True)
    axis.add_argument("--kmax", type=int, default=30)
    axis.add_argument("--compare-closed-form", action="store_true",
                      help="also evaluate the product formulas and compare")

    lax = sub.add_parser("laxcheck", help="audit the transition matrices")
    lax.add_argument("--alpha", type=_alpha_value, required=True)
    lax.add_argument("--levels", type=int, default=8)
    lax.add_argument("--tol", type=float, default=1e-10)

    ren = sub.add_parser("render", help="render a saved document to SVG")
    ren.add_argument("path")
    ren.add_argument("--svg", dest="svg_path", required=True)
    ren.add_argument("--no-circles", action="store_true")
    ren.add_argument("--no-points", action="store_true")
    ren.add_argument("--triangles", action="store_true")
    ren.add_argument("--stroke-width", type=float, default=None)
    ren.add_argument("--padding", type=float, default=None)
    return parser


def _print_report(report, tol: float):
    for tag in sorted(report.fields):
        rep = report.fields[tag]
        print(f"field {tag}: mr_max {rep.mr_max:.3e}  "
              f"circularity {rep.circularity_max:.3e}  "
              f"circles {rep.circle_count}  "
              f"immersed {'yes' if rep.immersed else 'NO'}  "
              f"embedded {'yes' if rep.embedded else 'NO'}")
        if rep.immersion_inconclusive or rep.overlap_inconclusive:
            print(f"  inconclusive: {rep.immersion_inconclusive} orientation, "
                  f"{rep.overlap_inconclusive} overlap")
    verdict = "PASS" if report.passed(tol) else "FAIL"
    print(f"{verdict} (tol {tol:g})")


def _cmd_generate(args) -> int:
    from . import document as docmod
    from .patterns import (generate_limit_pattern, generate_zalpha,
                           verify_pattern)
    from .svg import render_svg
    if args.pattern == "zalpha":
        if args.alpha is None:
            print("error: --alpha is required for --pattern zalpha",
                  file=sys.stderr)
            return 2
        bundle = generate_zalpha(args.alpha, args.levels, theta=args.theta,
                                 tol=args.tol)
    else:
        bundle = generate_limit_pattern(args.pattern, args.levels,
                                        tol=args.tol)
    bundle.report = verify_pattern(bundle.fields, bundle.n,
                                   patterns=bundle.patterns, tol=args.tol)
    if args.field != "all":
        bundle = replace(bundle,
                         fields={args.field: bundle.fields[args.field]},
                         patterns={args.field: bundle.patterns[args.field]})
    doc = docmod.from_bundle(bundle)
    _print_report(bundle.report, args.tol)
    if args.json_path:
        blob = docmod.save_json(doc)
        with open(args.json_path, "wb") as fh:
            fh.write(blob)
        print(f"wrote {args.json_path} ({len(blob)} bytes)")
    if args.svg_path:
        text = render_svg(doc)
        with open(args.svg_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.svg_path} ({len(text)} bytes)")
    return 0 if bundle.report.passed(args.tol) else 1


def _cmd_verify(args) -> int:
    from . import document as docmod
    from .patterns import verify_pattern
    with open(args.path, "rb") as fh:
        doc = docmod.load_json(fh.read())
    fields = docmod.document_fields(doc)
    report = verify_pattern(fields, doc.n, tol=args.tol)
    print(f"{doc.kind} pattern, n={doc.n}, alpha={doc.alpha:g}")
    _print_report(report, args.tol)
    return 0 if report.passed(args.tol) else 1


def _cmd_axis(args) -> int:
    from .isomonodromy import (ConstraintParams, axis_solve,
                               closed_form_axis)
    params = ConstraintParams(alpha=args.alpha, beta=args.alpha)
    sol = axis_solve(params, 1.0, 1.0, args.kmax)
    closed = closed_form_axis(args.alpha, args.kmax) \
        if args.compare_closed_form else None
    print(f"{'k':>3} {'u':>22} {'v':>22} {'w':>22}")
    worst = 0.0
    for k in range(args.kmax + 1):
        row = f"{k:>3} {sol.u[k].real:>22.15g} {sol.v[k].real:>22.15g} " \
              f"{sol.w[k].real:>22.15g}"
        if closed is not None:
            for ours, theirs in ((sol.u[k], closed.u[k]),
                                 (sol.v[k], closed.v[k]),
                                 (sol.w[k], closed.w[k])):
                err = abs(ours - theirs) / max(abs(theirs), 1.0)
                worst = max(worst, err)
        print(row)
    if closed is not None:
        print(f"max relative error vs closed form: {worst:.3e}")
        return 0 if worst < 1e-10 else 1
    return 0


def _cmd_laxcheck(args) -> int:
    from .lattice import downward_triangles, sector_points, upward_triangles
    from .lax import (check_zero_curvature, spectral_rotation_residual,
                      sym_extract, transport_along, triangle_edge_triples)
    from .patterns import generate_zalpha
    bundle = generate_zalpha(args.alpha, args.levels)
    u, v = bundle.fields["u"], bundle.fields["v"]
    worst_curv = 0.0
    worst_twist = 0.0
    for tri in upward_triangles(args.levels) + downward_triangles(args.levels):
        try:
            triples = triangle_edge_triples(u, v, tri)
        except KeyError:
            continue
        worst_curv = max(worst_curv, check_zero_curvature(*triples))
        for lam in (0.7 + 0.2j, -0.4 + 0.9j):
            worst_twist = max(worst_twist,
                              spectral_rotation_residual(triples[0], lam))
    window = sector_points(args.levels)
    wave = transport_along(u, v, (0, 0), window, gauge="lambda")
    su, sv, sw = sym_extract(wave)
    worst_sym = 0.0
    for p in su.points():
        worst_sym = max(worst_sym, abs(su[p] - (u[p] - u[(0, 0)])),
                        abs(sv[p] - (v[p] - v[(0, 0)])),
                        abs(sw[p] - (bundle.fields["w"][p]
                                     - bundle.fields["w"][(0, 0)])))
    print(f"zero curvature residual: {worst_curv:.3e}")
    print(f"spectral twist residual: {worst_twist:.3e}")
    print(f"field round-trip residual: {worst_sym:.3e}")
    ok = max(worst_curv, worst_twist, worst_sym) < args.tol
    print("PASS" if ok else "FAIL", f"(tol {args.tol:g})")
    return 0 if ok else 1


def _cmd_render(args) -> int:
    from . import document as docmod
    from .svg import RenderOptions, render_svg
    with open(args.path, "rb") as fh:
        doc = docmod.load_json(fh.read())
    options = RenderOptions(show_circles=not args.no_circles,
                            show_points=not args.no_points,
                            show_triangles=args.triangles,
                            stroke_width=args.stroke_width,
                            padding=args.padding)
    text = render_svg(doc, options)
    with open(args.svg_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.svg_path} ({len(text)} bytes)")
    return 0


_COMMANDS = {"generate": _cmd_generate, "verify": _cmd_verify,
             "axis": _cmd_axis, "laxcheck": _cmd_laxcheck,
             "render": _cmd_render}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HexPatternError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
