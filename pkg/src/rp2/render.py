"""Scene builders behind the CLI verbs: tilings, conic families, bulges,
and the refinement diagnostic."""

from __future__ import annotations

import math

import numpy as np

from rp2 import bulge, coxeter
from rp2.bulge import Lamination, check_c1_junctions, check_convexity
from rp2.config import MAX_SAMPLES, int_in_range
from rp2.errors import InvalidLamination, NumericError
from rp2.projlin import STANDARD_CHART, AffineChart, Conic, chart_project
from rp2.svg import SvgDoc

BASE_COLOR = "#7f7f7f"
DEFORMED_COLOR = "#b03a2e"
LEAF_COLOR = "#1f3b73"
EVEN_FILL = "#dfe7f3"
ODD_FILL = "#ffffff"


def _r(x: float) -> float:
    return float("%.12g" % x)


# ---------------------------------------------------------------------------
# reflection tilings


def tile_scene(max_len: int, chart: AffineChart, even_only: bool = False,
               C: coxeter.CartanMatrix = coxeter.DEFAULT_CARTAN):
    int_in_range(max_len, "max word length", 0, coxeter.MAX_ENUM_LENGTH)
    T = coxeter.tiling(C, max_len, chart, even_only=even_only)
    enum = coxeter.enumerate_group(C, max_len)
    n_elem = len(enum.even_subgroup()) if even_only else len(enum)
    check = coxeter.check_tiling(T, n_elem)
    tri = T.chart_triangles()
    doc = SvgDoc(title="Reflection tiling, word length <= %d" % max_len)
    for t, verts in zip(T.tiles, tri):
        fill = EVEN_FILL if t.element.length % 2 == 0 else ODD_FILL
        doc.polyline(verts, closed=True, stroke="#203040", width=0.6, fill=fill)
    report = {
        "verb": "tile",
        "max_word_length": max_len,
        "even_only": even_only,
        "chart": list(chart.c),
        "product_orders": list(coxeter.product_orders(C)),
        "counts_by_length": list(enum.counts),
        "elements": n_elem,
        "tiles": check.n_tiles,
        "distinct_tiles": check.distinct_tiles,
        "positive_chart": check.positive_chart,
        "overlaps": [list(p) for p in check.overlaps],
        "ok": check.ok,
    }
    return doc, report, T


# ---------------------------------------------------------------------------
# conics tangent to a triangle


def level_conic(c: float) -> Conic:
    """The H_t-invariant conic xz = c y^2."""
    return Conic.from_matrix([[0.0, 0.0, 0.5], [0.0, -c, 0.0], [0.5, 0.0, 0.0]])


def level_points(c: float, n: int) -> np.ndarray:
    """(n, 3) points of xz = c y^2 in the closed positive simplex, e1 to e3."""
    phi = np.linspace(0.0, math.pi / 2.0, n)
    cs, sn = np.cos(phi), np.sin(phi)
    pts = np.column_stack([cs * cs, sn * cs, c * sn * sn])
    pts[0] = (1.0, 0.0, 0.0)
    pts[-1] = (0.0, 0.0, 1.0)
    return pts


def conics_scene(levels, chart: AffineChart, samples: int = 256):
    int_in_range(samples, "samples", 2, MAX_SAMPLES)
    doc = SvgDoc(title="Conics tangent to a triangle")
    tri = chart.project_array(np.eye(3))
    doc.polyline(tri, closed=True, stroke="black", width=1.2)
    for c in levels:
        doc.polyline(chart.project_array(level_points(c, samples)),
                     stroke=DEFORMED_COLOR, width=0.8)
    for k, xy in enumerate(tri):
        doc.dot(xy, r=3.0)
        doc.text(xy, "e%d" % (k + 1), size=14.0)
    report = {"verb": "conics", "levels": list(levels), "samples": samples,
              "chart": list(chart.c)}
    return doc, report


# ---------------------------------------------------------------------------
# bulging


def _scaled(L: Lamination, k: float) -> Lamination:
    return Lamination(L.conic, tuple(l.with_weight(l.weight * k) for l in L.leaves),
                      L.basepoint, L.require_chamber)


def bulge_report(L: Lamination, P, chart: AffineChart, samples: int) -> dict:
    conv = check_convexity(P, max(64, samples))
    return {
        "arcs": len(P.arcs),
        "closed": P.closed and not P.issues(),
        "c1_mismatch": _r(check_c1_junctions(P, chart)),
        "convex": conv.convex,
        "winding": conv.winding,
        "chart": list(chart.c),
    }


def bulge_scene(L: Lamination, chart: AffineChart = STANDARD_CHART,
                samples_per_arc: int = 128, overlay_original: bool = False,
                draw_leaves: bool = True, annotate: bool = False,
                draw_deformed: bool = True, scales=(1.0,)):
    int_in_range(samples_per_arc, "samples_per_arc", 2, MAX_SAMPLES)
    rep = bulge.validate_lamination(L)
    if not rep.ok:
        raise InvalidLamination(rep)
    doc = SvgDoc(title="Bulging deformation")
    base = bulge.base_curve(L.conic)
    if overlay_original or not draw_deformed:
        doc.polyline(base.chart_samples(4 * samples_per_arc, chart), closed=True,
                     stroke=BASE_COLOR, width=0.8,
                     dash="4,3" if draw_deformed else None)
    if draw_leaves:
        for i, leaf in enumerate(L.leaves):
            a, b = chart_project(chart, leaf.p), chart_project(chart, leaf.q)
            doc.polyline([a, b], stroke=LEAF_COLOR, width=0.8)
            if annotate:
                mid = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
                doc.text(mid, "%d: a(%g, %g)" % (i, leaf.weight.s, leaf.weight.t),
                         size=11.0, fill=LEAF_COLOR)
        doc.dot(chart_project(chart, L.basepoint), r=2.5)
    report = {"verb": "bulge", "leaves": len(L.leaves),
              "lamination": rep.to_json(), "deformations": []}
    if draw_deformed:
        for k in scales:
            P = bulge.deformed_boundary(_scaled(L, k))
            doc.polyline(P.chart_samples(samples_per_arc, chart), closed=True,
                         stroke=DEFORMED_COLOR, width=1.2)
            entry = {"scale": k}
            entry.update(bulge_report(L, P, chart, len(P.arcs) * samples_per_arc))
            report["deformations"].append(entry)
    report["ok"] = all(d["closed"] and d["convex"] and d["c1_mismatch"] <= 1e-8
                       for d in report["deformations"])
    return doc, report


# ---------------------------------------------------------------------------
# refinement diagnostic


def converge(Q: Conic, g, seed, basepoint, depths: tuple,
             radial_samples: int = 512, chart: AffineChart = STANDARD_CHART) -> dict:
    """Hausdorff distances between deformed boundaries of successive orbit
    laminations. Reported, not asserted."""
    int_in_range(radial_samples, "radial_samples", 16, MAX_SAMPLES)
    lo, hi = depths
    entries = []
    prev = None
    for N in range(max(0, lo - 1), hi + 1):
        L = bulge.orbit_lamination(Q, g, seed, N, basepoint)
        P = bulge.deformed_boundary(L)
        pts = P.radial_samples(basepoint, radial_samples, chart)
        if not np.all(np.isfinite(pts)):
            raise NumericError("non-finite samples at depth %d" % N)
        if N >= lo:
            conv = check_convexity(P, max(256, 16 * len(P.arcs)))
            entries.append({
                "depth": N,
                "leaves": len(L.leaves),
                "arcs": len(P.arcs),
                "closed": P.closed and not P.issues(),
                "convex": conv.convex,
                "c1_mismatch": _r(check_c1_junctions(P, chart)),
                "hausdorff_to_previous": (None if prev is None
                                          else _r(bulge.hausdorff_distance(pts, prev))),
            })
        prev = pts
    return {"verb": "converge", "seed_weight": [seed.weight.s, seed.weight.t],
            "radial_samples": radial_samples, "chart": list(chart.c),
            "depths": entries}
