"""Bulging deformations of a conic along finite weighted laminations.

A leaf is a chord pq of the base conic Q carrying a Cartan weight a(s, t).
In the leaf basis (p, r, q), r the pole of the chord, the conic is
XZ = Y^2 and the leaf's collineation is

    B = M diag(e^s, e^t, e^(-s-t)) M^-1.

B fixes p, r and q, and maps Q to the conic XZ = e^(-3t) Y^2, which is
tangent to Q at p and q. Weights along a(1, 0) preserve Q (earthquakes);
the t component bulges the far arc outward (t > 0) or inward (t < 0).

Side convention: the lamination's basepoint orients every leaf. Crossing
a leaf away from the basepoint's side multiplies by B on the right,
crossing toward it by B^-1. Region transforms are products along the
unique path in the region tree, normalized to the identity on the anchor
region (the basepoint's region unless another anchor point is given).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import linprog
from scipy.spatial.distance import directed_hausdorff

from rp2.errors import (AxisMismatch, DegenerateConic, InvalidLamination,
                        NotConicPreserving, NotPositiveHyperbolic, NumericError,
                        OrbitSelfCrossing, TooFewSamples)
from rp2.projlin import (STANDARD_CHART, TOL, UNIT_CIRCLE, AffineChart,
                         Collineation, Conic, PositiveHyperbolic, ProjPoint,
                         _arc_vectors, apply, apply_to_conic, arc_vectors,
                         chart_project, chord_basis,
                         classify, conic_distance, conic_equal, eigenbasis,
                         normalize_point, on_arc, proj_equal, tangent_line)
from rp2.rootsys import CartanElement, exp_cartan, in_weyl_chamber

ANGLE_TOL = 1e-9
TWO_PI = 2.0 * math.pi
EARTHQUAKE_DIRECTION = CartanElement(1.0, 0.0)


@dataclass(frozen=True)
class Leaf:
    p: ProjPoint
    q: ProjPoint
    weight: CartanElement = CartanElement(0.0, 0.0)

    def with_weight(self, w: CartanElement) -> "Leaf":
        return replace(self, weight=w)

    def pushed(self, h: Collineation) -> "Leaf":
        return Leaf(apply(h, self.p), apply(h, self.q), self.weight)


def circle_point(angle_deg: float) -> ProjPoint:
    th = math.radians(angle_deg)
    return normalize_point((math.cos(th), math.sin(th), 1.0))


def circle_leaf(p_deg: float, q_deg: float, weight=(0.0, 0.0)) -> Leaf:
    """Chord of the unit circle between two angles given in degrees."""
    if not isinstance(weight, CartanElement):
        weight = CartanElement(*weight)
    return Leaf(circle_point(p_deg), circle_point(q_deg), weight)


@dataclass(frozen=True)
class Lamination:
    conic: Conic
    leaves: tuple
    basepoint: ProjPoint
    require_chamber: bool = False

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(self.leaves))

    def pushed(self, h: Collineation) -> "Lamination":
        return Lamination(apply_to_conic(h, self.conic),
                          tuple(l.pushed(h) for l in self.leaves),
                          apply(h, self.basepoint), self.require_chamber)


# ---------------------------------------------------------------------------
# disk model


class DiskModel:
    """Projective map sending a real nondegenerate conic to x^2 + y^2 = 1.

    Only used to read cyclic order and sides; everything it computes is
    projectively invariant. The unit circle uses the identity, so angles
    given for it are read literally.
    """

    def __init__(self, Q: Conic):
        if Q.is_degenerate:
            raise DegenerateConic("base conic is degenerate")
        if not Q.has_real_points():
            raise DegenerateConic("base conic has no real points")
        if conic_equal(Q, UNIT_CIRCLE, 1e-15):
            T = np.eye(3)
        else:
            A = Q.q
            w, V = np.linalg.eigh(A)
            if np.sum(w < 0) == 2:
                w, V = np.linalg.eigh(-A)
            order = np.argsort(-w)  # two positive, then the negative one
            w, V = w[order], V[:, order]
            T = np.diag(np.sqrt(np.abs(w))) @ V.T
        self.T = T
        self.Tinv = np.linalg.inv(T)

    def affine(self, v) -> np.ndarray:
        w = self.T @ (v.vec if isinstance(v, ProjPoint) else np.asarray(v, float))
        return w[:2] / w[2]

    def angle(self, p: ProjPoint) -> float:
        x, y = self.affine(p)
        return math.atan2(y, x) % TWO_PI

    def point(self, angle: float) -> ProjPoint:
        return normalize_point(self.Tinv @ np.array([math.cos(angle), math.sin(angle), 1.0]))


def _ccw(a: float, b: float) -> float:
    """Counterclockwise angular length from a to b, in [0, 2 pi)."""
    return (b - a) % TWO_PI


def _in_open_arc(x: float, a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    d = _ccw(a, x)
    return tol < d < _ccw(a, b) - tol


def _angle_close(x: float, y: float, tol: float = ANGLE_TOL) -> bool:
    d = _ccw(x, y)
    return min(d, TWO_PI - d) <= tol


def _side(p2, q2, x2) -> float:
    return float((q2[0] - p2[0]) * (x2[1] - p2[1]) - (q2[1] - p2[1]) * (x2[0] - p2[0]))


# ---------------------------------------------------------------------------
# single-leaf operations


def leaf_basis(Q: Conic, leaf: Leaf) -> Collineation:
    """Columns (p, r, q), r = pole of pq, pulling Q back to x z = y^2."""
    return Collineation.from_matrix(chord_basis(Q, leaf.p, leaf.q))


def bulge_transform(Q: Conic, leaf: Leaf, weight: CartanElement | None = None) -> Collineation:
    w = leaf.weight if weight is None else weight
    M = chord_basis(Q, leaf.p, leaf.q)
    D = exp_cartan(w).m
    return Collineation.from_matrix(M @ D @ np.linalg.inv(M))


def conic_stabilizer_direction(Q: Conic, leaf: Leaf) -> CartanElement:
    """The weight direction (normalized to s = 1) whose bulges preserve Q."""
    d = EARTHQUAKE_DIRECTION
    for u in (0.5, 1.0):
        img = apply_to_conic(bulge_transform(Q, leaf, d * u), Q)
        if conic_distance(img, Q) > 1e-10:
            raise NumericError("earthquake direction failed to preserve the "
                               "conic (distance %.3g)" % conic_distance(img, Q))
    return d


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple
    detail: str = ""

    def __str__(self):
        return "%s %s%s" % (self.kind, list(self.indices),
                            ": " + self.detail if self.detail else "")

    def to_json(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices), "detail": self.detail}


@dataclass
class LaminationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.ok, "violations": [v.to_json() for v in self.violations]}


def validate_lamination(L: Lamination) -> LaminationReport:
    rep = LaminationReport()
    Q = L.conic
    try:
        disk = DiskModel(Q)
    except DegenerateConic as exc:
        rep.violations.append(Violation("conic", (), str(exc)))
        return rep
    angles = []
    for i, leaf in enumerate(L.leaves):
        bad = [n for n, x in (("p", leaf.p), ("q", leaf.q)) if not Q.contains(x)]
        if bad:
            rep.violations.append(Violation("endpoint_off_conic", (i,), ",".join(bad)))
        elif proj_equal(leaf.p, leaf.q):
            rep.violations.append(Violation("degenerate_leaf", (i,)))
        if L.require_chamber and not in_weyl_chamber(leaf.weight, closed=True):
            rep.violations.append(Violation("weight_outside_chamber", (i,),
                                            "a(%g, %g)" % (leaf.weight.s, leaf.weight.t)))
        angles.append((disk.angle(leaf.p), disk.angle(leaf.q)))
    if L.basepoint is None or not Q.is_interior(L.basepoint):
        rep.violations.append(Violation("basepoint_outside", ()))
    if not rep.ok:
        return rep
    b2 = disk.affine(L.basepoint)
    for i, leaf in enumerate(L.leaves):
        p2, q2 = disk.affine(leaf.p), disk.affine(leaf.q)
        dist = abs(_side(p2, q2, b2)) / float(np.hypot(*(q2 - p2)))
        if dist <= TOL:
            rep.violations.append(Violation("basepoint_on_leaf", (i,)))
    for i in range(len(angles)):
        a1, b1 = angles[i]
        for j in range(i + 1, len(angles)):
            a2, b2_ = angles[j]
            if any(_angle_close(x, y) for x in (a1, b1) for y in (a2, b2_)):
                rep.violations.append(Violation("shared_endpoint", (i, j)))
                continue
            if _in_open_arc(a2, a1, b1) != _in_open_arc(b2_, a1, b1):
                rep.violations.append(Violation("crossing", (i, j)))
    return rep


# ---------------------------------------------------------------------------
# region tree


@dataclass
class Region:
    index: int
    arcs: list            # indices into RegionTree.circle_arcs
    sides: tuple          # per leaf: True if on the ccw side p -> q
    transform: Collineation = None
    crossings: tuple = ()  # ((leaf index, +1 or -1), ...) along the tree path
    parent: int | None = None


@dataclass
class RegionTree:
    lamination: Lamination
    disk: DiskModel
    circle_arcs: list     # (start angle, end angle, start point, end point)
    arc_region: list      # region index of each circle arc
    regions: list
    base: int             # region of the basepoint
    anchor: int           # region normalized to the identity
    bulges: tuple         # per leaf bulge collineation

    @property
    def transforms(self) -> list:
        return [r.transform for r in self.regions]

    def region_of(self, p: ProjPoint) -> int:
        return _locate(self.lamination, self.disk, self.regions, p)


def _sides_of_point(L: Lamination, disk: DiskModel, p: ProjPoint) -> tuple:
    x = disk.affine(p)
    out = []
    for leaf in L.leaves:
        ap, aq = disk.angle(leaf.p), disk.angle(leaf.q)
        mid = disk.point(ap + _ccw(ap, aq) / 2.0)
        p2, q2 = disk.affine(leaf.p), disk.affine(leaf.q)
        out.append(_side(p2, q2, x) * _side(p2, q2, disk.affine(mid)) > 0)
    return tuple(out)


def _locate(L, disk, regions, p) -> int:
    key = _sides_of_point(L, disk, p)
    for r in regions:
        if r.sides == key:
            return r.index
    raise InvalidLamination(LaminationReport([Violation("unlocated_point", (), repr(p))]))


def region_tree(L: Lamination, anchor: ProjPoint | None = None) -> RegionTree:
    rep = validate_lamination(L)
    if not rep.ok:
        raise InvalidLamination(rep)
    Q = L.conic
    disk = DiskModel(Q)
    events = []
    for j, leaf in enumerate(L.leaves):
        events.append((disk.angle(leaf.p), leaf.p))
        events.append((disk.angle(leaf.q), leaf.q))
    events.sort(key=lambda e: e[0])
    arcs = []
    if not events:
        arcs.append((0.0, TWO_PI, disk.point(0.0), disk.point(0.0)))
    for k, (ang, pt) in enumerate(events):
        nang, npt = events[(k + 1) % len(events)]
        arcs.append((ang, nang, pt, npt))

    def arc_sides(start, end):
        mid = start + _ccw(start, end) / 2.0 if events else math.pi
        return tuple(_in_open_arc(mid, disk.angle(l.p), disk.angle(l.q))
                     for l in L.leaves)

    regions, arc_region, by_key = [], [], {}
    for i, (s, e, _, _) in enumerate(arcs):
        key = arc_sides(s, e)
        if key not in by_key:
            by_key[key] = len(regions)
            regions.append(Region(len(regions), [], key))
        regions[by_key[key]].arcs.append(i)
        arc_region.append(by_key[key])
    if len(regions) != len(L.leaves) + 1:
        raise NumericError("expected %d regions, found %d"
                           % (len(L.leaves) + 1, len(regions)))

    base = _locate(L, disk, regions, L.basepoint)
    start = base if anchor is None else _locate(L, disk, regions, anchor)
    bp_sides = regions[base].sides
    bulges = tuple(bulge_transform(Q, l) for l in L.leaves)
    inverses = tuple(b.inverse() for b in bulges)

    regions[start].transform = Collineation.identity()
    queue = deque([start])
    while queue:
        cur = regions[queue.popleft()]
        for nb in regions:
            if nb.transform is not None:
                continue
            diff = [j for j, (x, y) in enumerate(zip(cur.sides, nb.sides)) if x != y]
            if len(diff) != 1:
                continue
            j = diff[0]
            sign = 1 if cur.sides[j] == bp_sides[j] else -1
            factor = bulges[j] if sign > 0 else inverses[j]
            nb.transform = cur.transform @ factor
            nb.crossings = cur.crossings + ((j, sign),)
            nb.parent = cur.index
            queue.append(nb.index)
    if any(r.transform is None for r in regions):
        raise NumericError("region adjacency graph is disconnected")
    return RegionTree(L, disk, arcs, arc_region, regions, base, start, bulges)


# ---------------------------------------------------------------------------
# piecewise conics


@dataclass(frozen=True)
class ConicArc:
    conic: Conic
    start: ProjPoint
    end: ProjPoint
    witness: ProjPoint

    @property
    def is_full(self) -> bool:
        return proj_equal(self.start, self.end)

    def vectors(self, n: int) -> np.ndarray:
        """(n, 3) homogeneous samples from start to end through the witness."""
        if not self.is_full:
            return arc_vectors(self.conic, self.start, self.end, self.witness, n)
        M = chord_basis(self.conic, self.start, self.witness)
        h = max(2, (n + 1) // 2)
        first = _arc_vectors(M, 1.0, h)
        second = _arc_vectors(M, -1.0, n - h + 1)[::-1]
        return np.vstack([first, second[1:]])

    def contains_mask(self, pts: np.ndarray) -> np.ndarray:
        if self.is_full:
            return np.ones(len(pts), dtype=bool)
        return on_arc(self.conic, self.start, self.end, self.witness, pts)

    def transformed(self, g: Collineation) -> "ConicArc":
        return ConicArc(apply_to_conic(g, self.conic), apply(g, self.start),
                        apply(g, self.end), apply(g, self.witness))


@dataclass(frozen=True)
class PiecewiseConic:
    arcs: tuple
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))

    def issues(self, tol: float = TOL) -> list:
        out = []
        n = len(self.arcs)
        for i, arc in enumerate(self.arcs):
            for name in ("start", "end", "witness"):
                if not arc.conic.contains(getattr(arc, name), tol):
                    out.append("arc %d: %s off its conic" % (i, name))
            if i + 1 < n or self.closed:
                nxt = self.arcs[(i + 1) % n]
                if not proj_equal(arc.end, nxt.start, tol):
                    out.append("arcs %d/%d do not share an endpoint" % (i, (i + 1) % n))
        return out

    def vectors(self, n_per_arc: int) -> np.ndarray:
        """Closed polyline of homogeneous samples, junctions listed once."""
        chunks = [arc.vectors(n_per_arc)[:-1] for arc in self.arcs]
        if not self.closed:
            chunks.append(self.arcs[-1].end.vec[None, :])
        return np.vstack(chunks)

    def chart_samples(self, n_per_arc: int, chart: AffineChart = STANDARD_CHART) -> np.ndarray:
        pts = chart.project_array(self.vectors(n_per_arc))
        if not np.all(np.isfinite(pts)):
            raise NumericError("non-finite chart coordinates")
        return pts

    def transformed(self, g: Collineation) -> "PiecewiseConic":
        return PiecewiseConic(tuple(a.transformed(g) for a in self.arcs), self.closed)

    def radial_samples(self, center: ProjPoint, n: int,
                       chart: AffineChart = STANDARD_CHART) -> np.ndarray:
        """Where n equally spaced rays from center meet the curve.

        Depends only on the curve as a point set, so two parameterizations
        of the same set give identical samples.
        """
        b = np.array(chart.basis, dtype=float)
        U = np.linalg.inv(np.vstack([b, chart.covector()]))
        c2 = np.array(chart_project(chart, center))
        C0 = U @ np.array([c2[0], c2[1], 1.0])
        phi = TWO_PI * np.arange(n) / n
        D = (U[:, :2] @ np.vstack([np.cos(phi), np.sin(phi)])).T  # (n, 3)
        best = np.full(n, np.inf)
        for arc in self.arcs:
            K = arc.conic.q
            qa = np.einsum("ni,ij,nj->n", D, K, D)
            qb = D @ (K @ C0)
            qc = float(C0 @ K @ C0)
            disc = qb * qb - qa * qc
            ok = disc >= 0
            sq = np.sqrt(np.where(ok, disc, 0.0))
            qq = -(qb + np.where(qb >= 0, sq, -sq))
            with np.errstate(divide="ignore", invalid="ignore"):
                r1 = np.where(np.abs(qa) > 1e-300, qq / qa, np.inf)
                r2 = np.where(np.abs(qq) > 1e-300, qc / qq, np.inf)
            for lam in (r1, r2):
                good = ok & np.isfinite(lam) & (lam > 0)
                if not np.any(good):
                    continue
                idx = np.nonzero(good)[0]
                pts = C0[None, :] + lam[idx, None] * D[idx]
                mask = arc.contains_mask(pts)
                sel = idx[mask]
                best[sel] = np.minimum(best[sel], lam[sel])
        if not np.all(np.isfinite(best)):
            raise NumericError("curve is not star-shaped about the center")
        return c2[None, :] + best[:, None] * np.column_stack([np.cos(phi), np.sin(phi)])


def base_curve(Q: Conic) -> PiecewiseConic:
    disk = DiskModel(Q)
    start = disk.point(0.0)
    return PiecewiseConic((ConicArc(Q, start, start, disk.point(math.pi)),))


def deformed_boundary(L: Lamination, anchor: ProjPoint | None = None,
                      tree: RegionTree | None = None) -> PiecewiseConic:
    """The piecewise-conic image of the base conic under the region transforms."""
    tree = tree or region_tree(L, anchor)
    Q, disk = L.conic, tree.disk
    arcs = []
    for i, (sa, ea, sp, ep) in enumerate(tree.circle_arcs):
        span = _ccw(sa, ea) if len(tree.circle_arcs) > 1 else TWO_PI
        base = ConicArc(Q, sp, ep, disk.point(sa + span / 2.0))
        g = tree.regions[tree.arc_region[i]].transform
        arcs.append(base.transformed(g))
    return PiecewiseConic(tuple(arcs), closed=True)


# ---------------------------------------------------------------------------
# diagnostics


def _tangent_direction(chart: AffineChart, K: Conic, x: ProjPoint) -> np.ndarray:
    l = tangent_line(K, x).vec
    P = x.vec
    d = np.cross(l, P)  # a second point of the tangent line
    c = chart.covector()
    b = np.array(chart.basis, dtype=float)
    return (b @ d) * float(c @ P) - (b @ P) * float(c @ d)


def _line_angle(u: np.ndarray, v: np.ndarray) -> float:
    ang = math.atan2(abs(u[0] * v[1] - u[1] * v[0]), float(u @ v))
    return min(ang, math.pi - ang)


def check_c1_junctions(P: PiecewiseConic, chart: AffineChart = STANDARD_CHART) -> float:
    """Largest angle between the tangent lines of adjacent arcs at junctions."""
    n = len(P.arcs)
    worst = 0.0
    for i in range(n if P.closed else n - 1):
        a, b = P.arcs[i], P.arcs[(i + 1) % n]
        if a is b:
            continue
        u = _tangent_direction(chart, a.conic, a.end)
        v = _tangent_direction(chart, b.conic, b.start)
        worst = max(worst, _line_angle(u, v))
    return worst


@dataclass
class ConvexityReport:
    convex: bool
    winding: int
    positive_turns: int
    negative_turns: int
    samples: int
    chart: tuple

    def to_json(self) -> dict:
        return {"convex": self.convex, "winding": self.winding,
                "positive_turns": self.positive_turns,
                "negative_turns": self.negative_turns,
                "samples": self.samples, "chart": list(self.chart)}


def supporting_chart(P: PiecewiseConic, samples: int = 256,
                     margin: float = 1e-6) -> AffineChart | None:
    """An affine chart whose line at infinity misses the sampled curve.

    The samples are lifted to unit vectors with signs chosen by continuity;
    a linear program then looks for a covector positive on all of them. No
    such chart exists when the lift does not close up or when every line
    meets the curve, and None is returned.
    """
    per_arc = max(8, samples // len(P.arcs) + 1)
    V = P.vectors(per_arc)
    V = V / np.linalg.norm(V, axis=1)[:, None]
    for i in range(1, len(V)):
        if V[i] @ V[i - 1] < 0:
            V[i] = -V[i]
    if P.closed and V[-1] @ V[0] < 0:
        return None
    n = len(V)
    res = linprog(c=[0.0, 0.0, 0.0, -1.0],
                  A_ub=np.hstack([-V, np.ones((n, 1))]), b_ub=np.zeros(n),
                  bounds=[(-1.0, 1.0)] * 3 + [(None, 1.0)], method="highs")
    if res.status != 0 or -res.fun <= margin:
        return None
    c = res.x[:3] / np.linalg.norm(res.x[:3])
    # orthonormal planar basis of the complement of c
    _, _, vt = np.linalg.svd(c[None, :])
    return AffineChart(c=tuple(float(x) for x in c),
                       basis=(tuple(float(x) for x in vt[1]), tuple(float(x) for x in vt[2])))


def check_convexity(P: PiecewiseConic, samples: int = 256,
                    chart: AffineChart | None = None,
                    zero_tol: float = 1e-10) -> ConvexityReport:
    """Single-sign turning and winding +-1 of the sampled curve.

    Without an explicit chart the test runs in a supporting chart, since a
    convex curve may cross the line at infinity of any fixed chart.
    """
    if samples < 64:
        raise TooFewSamples("convexity check needs at least 64 samples")
    if chart is None:
        chart = supporting_chart(P, samples)
        if chart is None:
            return ConvexityReport(False, 0, 0, 0, 0, ())
    per_arc = max(8, samples // len(P.arcs) + 1)
    pts = P.chart_samples(per_arc, chart)
    keep = [0]
    for i in range(1, len(pts)):
        if np.hypot(*(pts[i] - pts[keep[-1]])) > 1e-12:
            keep.append(i)
    pts = pts[keep]
    if np.hypot(*(pts[-1] - pts[0])) <= 1e-12:
        pts = pts[:-1]
    e = np.roll(pts, -1, axis=0) - pts
    f = np.roll(e, -1, axis=0)
    cross = e[:, 0] * f[:, 1] - e[:, 1] * f[:, 0]
    dot = np.einsum("ij,ij->i", e, f)
    turning = float(np.sum(np.arctan2(cross, dot)))
    winding = int(round(turning / TWO_PI))
    pos = int(np.sum(cross > zero_tol))
    neg = int(np.sum(cross < -zero_tol))
    convex = (pos == 0 or neg == 0) and abs(winding) == 1
    return ConvexityReport(convex, winding, pos, neg, len(pts), tuple(chart.c))


def hausdorff_distance(A, B) -> float:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if len(A) < 16 or len(B) < 16:
        raise TooFewSamples("Hausdorff distance needs at least 16 samples per curve")
    return max(directed_hausdorff(A, B)[0], directed_hausdorff(B, A)[0])


def set_distance(P: PiecewiseConic, R: PiecewiseConic, center: ProjPoint,
                 n: int = 512, chart: AffineChart = STANDARD_CHART) -> float:
    """Hausdorff distance between radial samples of two star-shaped curves."""
    return hausdorff_distance(P.radial_samples(center, n, chart),
                              R.radial_samples(center, n, chart))


# ---------------------------------------------------------------------------
# equivariant refinement and cyclic holonomy


def preserves_conic(g: Collineation, Q: Conic, tol: float = TOL) -> bool:
    return conic_distance(apply_to_conic(g, Q), Q) <= tol


def axis_translation(Q: Conic, axis: Leaf, u: float) -> Collineation:
    """Hyperbolic translation by u along a chord: the earthquake flow."""
    return bulge_transform(Q, axis, EARTHQUAKE_DIRECTION * u)


def orbit_lamination(Q: Conic, g: Collineation, seed: Leaf, N: int,
                     basepoint: ProjPoint | None = None,
                     require_chamber: bool = False) -> Lamination:
    """Leaves g^k(seed) for |k| <= N, all with the seed's weight."""
    if not isinstance(classify(g), PositiveHyperbolic):
        raise NotPositiveHyperbolic("orbit generator is not positive hyperbolic")
    if not preserves_conic(g, Q):
        raise NotConicPreserving("generator moves the base conic")
    disk = DiskModel(Q)
    if basepoint is None:
        basepoint = normalize_point(disk.Tinv @ np.array([0.0, 0.0, 1.0]))
    first = Lamination(Q, (seed, seed.pushed(g)), basepoint, require_chamber)
    if any(v.kind in ("crossing", "shared_endpoint")
           for v in validate_lamination(first).violations):
        raise OrbitSelfCrossing("seed leaf crosses its translate")
    leaves = [seed]
    fwd, bwd = seed, seed
    ginv = g.inverse()
    for _ in range(N):
        fwd, bwd = fwd.pushed(g), bwd.pushed(ginv)
        leaves = [bwd] + leaves + [fwd]
    L = Lamination(Q, tuple(leaves), basepoint, require_chamber)
    bad = [v for v in validate_lamination(L).violations
           if v.kind in ("crossing", "shared_endpoint")]
    if bad:
        raise OrbitSelfCrossing("orbit leaves cross: %s" % bad[0])
    return L


def deform_cyclic_holonomy(g: Collineation, leaf: Leaf,
                           weight: CartanElement | None = None) -> Collineation:
    """g times the leaf collineation for the axis of g.

    The weight is read in the eigenbasis (attracting, middle, repelling) of
    g, the leaf basis of the axis when g preserves a conic, so log
    eigenvalues shift by exactly the weight.
    """
    w = leaf.weight if weight is None else weight
    att, mid, rep = eigenbasis(g)
    ends = {(leaf.p, leaf.q), (leaf.q, leaf.p)}
    if not any(proj_equal(x, att, 1e-8) and proj_equal(y, rep, 1e-8) for x, y in ends):
        raise AxisMismatch("leaf endpoints are not the fixed points of g")
    M = np.column_stack([att.vec, mid.vec, rep.vec])
    B = M @ exp_cartan(w).m @ np.linalg.inv(M)
    return Collineation.from_matrix(g.m @ B)
