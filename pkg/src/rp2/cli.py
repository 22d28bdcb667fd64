"""rp2 command-line interface.

Exit codes: 0 all checks pass, 2 validation error, 3 numeric failure
(overflow, non-finite values, failed identity), 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from rp2 import __version__, rootsys
from rp2.config import (EQUILATERAL_BASIS, MAX_SAMPLES, int_in_range, load_json,
                        parse_chart, parse_depths, parse_generator, parse_lamination,
                        parse_leaf, parse_levels)
from rp2.errors import InvalidLamination, NumericError, ValidationError
from rp2.render import bulge_scene, conics_scene, converge, tile_scene

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config(args) -> dict:
    return load_json(args.config) if getattr(args, "config", None) else {}


def _pick(flag, cfg: dict, key: str, default=None):
    return flag if flag is not None else cfg.get(key, default)


# ---------------------------------------------------------------------------
# verbs


def cmd_roots(args) -> int:
    checks = rootsys.identity_checks()
    if args.json:
        sys.stdout.write(dumps({k: "pass" if v else "fail" for k, v in checks.items()}))
        return EXIT_OK if all(checks.values()) else EXIT_NUMERIC
    out = ["roots (row vectors acting on (s, t), a(s,t) = diag(s, t, -s-t)):"]
    for k in rootsys.LABELS:
        r = rootsys.ROOTS[k]
        out.append("  alpha%d%d = [%2d, %2d]" % (k + r.row))
    out.append("root vectors:")
    for k in rootsys.LABELS:
        h = rootsys.ROOT_VECTORS[k].element
        out.append("  h%d%d = a(%g, %g)" % (k + (h.s, h.t)))
    out.append("Weyl chamber: { a(s,t) : s >= t >= -s/2 }  (alpha12 >= 0, alpha23 >= 0)")
    out.append("singular rays: a(1,1), a(2,-1)")
    p = rootsys.ORDERING_POINT
    order = sorted(rootsys.ROOTS.values(), key=lambda r: rootsys.root_value(r, p),
                   reverse=True)
    out.append("root values on a(%g,%g): %s" % (p.s, p.t, ", ".join(
        "%s=%g" % (r, rootsys.root_value(r, p)) for r in order)))
    if args.check:
        out.append("checks:")
        for name, ok in checks.items():
            out.append("  [%s] %s" % ("pass" if ok else "FAIL", name))
    else:
        failed = [name for name, ok in checks.items() if not ok]
        out.append("%d/%d identity checks pass%s" % (
            len(checks) - len(failed), len(checks),
            "".join("\n  FAIL " + f for f in failed)))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK if all(checks.values()) else EXIT_NUMERIC


def cmd_tile(args) -> int:
    cfg = _config(args)
    depth = _pick(args.max_word_length, cfg, "max_word_length", 8)
    chart = parse_chart(_pick(args.chart, cfg, "chart", (1.0, 1.0, 1.0)),
                        cfg.get("basis"))
    even = bool(args.even_only or cfg.get("even_only", False))
    doc, report, T = tile_scene(depth, chart, even)
    _write(_pick(args.out, cfg, "out"), doc.render())
    if args.json:
        _write(args.json, dumps(T.to_json()))
    if args.report:
        _write(args.report, dumps(report))
    return EXIT_OK if report["ok"] else EXIT_NUMERIC


def cmd_conics(args) -> int:
    cfg = _config(args)
    levels = parse_levels(_pick(args.levels, cfg, "levels", [0.25, 0.5, 1.0, 2.0, 4.0]))
    chart = parse_chart(cfg.get("chart", (1.0, 1.0, 1.0)),
                        cfg.get("basis", [list(r) for r in EQUILATERAL_BASIS]))
    samples = cfg.get("samples", 256)
    doc, report = conics_scene(levels, chart, samples)
    _write(_pick(args.out, cfg, "out"), doc.render())
    if args.report:
        _write(args.report, dumps(report))
    return EXIT_OK


def cmd_bulge(args) -> int:
    cfg = _config(args)
    render = cfg.get("render", {})
    L = parse_lamination(cfg)
    chart = parse_chart(render.get("chart", (0.0, 0.0, 1.0)))
    try:
        doc, report = bulge_scene(
            L, chart,
            samples_per_arc=render.get("samples_per_arc", 128),
            overlay_original=bool(args.overlay_original or render.get("overlay_original", False)),
            draw_leaves=render.get("draw_leaves", True),
            annotate=render.get("annotate", False),
            draw_deformed=render.get("draw_deformed", True),
            scales=render.get("scales", [1.0]))
    except InvalidLamination as exc:
        rep = exc.report.to_json()
        for v in exc.report.violations:
            sys.stderr.write("violation: %s\n" % v)
        if args.report:
            _write(args.report, dumps({"verb": "bulge", "lamination": rep, "ok": False}))
        return EXIT_VALIDATION
    _write(_pick(args.out, cfg, "out"), doc.render())
    if args.report:
        _write(args.report, dumps(report))
    return EXIT_OK if report["ok"] else EXIT_NUMERIC


def cmd_converge(args) -> int:
    cfg = _config(args)
    L = parse_lamination({k: cfg[k] for k in ("conic", "basepoint") if k in cfg})
    if "generator" not in cfg or "seed" not in cfg:
        raise ValidationError("converge config needs 'generator' and 'seed'")
    g = parse_generator(cfg["generator"], L.conic)
    seed = parse_leaf(cfg["seed"], L.conic)
    depths = parse_depths(_pick(args.depths, cfg, "depths", "1..5"))
    n = int_in_range(cfg.get("radial_samples", 512), "radial_samples", 16, MAX_SAMPLES)
    report = converge(L.conic, g, seed, L.basepoint, depths, n)
    text = dumps(report)
    _write(args.report, text)
    if args.report not in (None, "-"):
        for e in report["depths"]:
            sys.stdout.write("depth %d: hausdorff_to_previous=%s convex=%s\n"
                             % (e["depth"], e["hausdorff_to_previous"], e["convex"]))
    ok = all(e["closed"] and e["convex"] for e in report["depths"])
    return EXIT_OK if ok else EXIT_NUMERIC


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rp2", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version="rp2 " + __version__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("roots", help="root table, chamber, and identity checks")
    p.add_argument("--check", action="store_true", help="print pass/fail per identity")
    p.add_argument("--json", action="store_true", help="machine-readable check map")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("tile", help="tiling by the reflection group")
    p.add_argument("--config")
    p.add_argument("--max-word-length", type=int)
    p.add_argument("--chart", help="chart covector a,b,c")
    p.add_argument("--out", help="SVG output (default stdout)")
    p.add_argument("--even-only", action="store_true", help="det 1 elements only")
    p.add_argument("--json", help="write tiling JSON here")
    p.add_argument("--report", help="write JSON report here")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("conics", help="H_t-invariant conics in a triangle")
    p.add_argument("--config")
    p.add_argument("--levels", help="comma-separated positive levels c of xz = c y^2")
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_conics)

    p = sub.add_parser("bulge", help="bulging deformation of a conic")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--overlay-original", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_bulge)

    p = sub.add_parser("converge", help="refinement diagnostic for orbit laminations")
    p.add_argument("--config", required=True)
    p.add_argument("--depths", help="range k1..k2")
    p.add_argument("--report", help="JSON report (default stdout)")
    p.set_defaults(func=cmd_converge)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write("rp2: error: %s\n" % exc)
        return EXIT_VALIDATION
    except NumericError as exc:
        sys.stderr.write("rp2: numeric failure: %s\n" % exc)
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write("rp2: I/O error: %s\n" % exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
