"""Projective linear algebra on RP^2.

Points and lines are stored as normalized homogeneous triples, collineations
as determinant-one 3x3 matrices, and conics as normalized symmetric
matrices. All values are immutable; every function here is pure.

Normalization conventions (these fix equality, hashing and the byte
layout of rendered output):

* points and lines are scaled so the largest-magnitude entry is +-1 and the
  first nonzero entry is positive;
* conic matrices are scaled the same way, reading entries in row-major
  order;
* collineations are divided by the real cube root of their determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from rp2.errors import (AtInfinity, CoincidentArguments, DegenerateConic,
                        EndpointsNotOnConic, NotPositiveHyperbolic,
                        PointNotOnConic, PoleOnChord, SingularTransform,
                        WitnessOnWrongComponent, ZeroVector)

TOL = 1e-9
ZERO_VECTOR_TOL = 1e-300
# entries below this (after scaling to unit max) do not decide the sign
SIGN_TOL = 1e-12
DEGENERATE_TOL = 1e-12
CHART_TOL = 1e-12

VectorLike = Union[Sequence[float], np.ndarray]


def _canonical(v: np.ndarray) -> np.ndarray:
    flat = v.reshape(-1)
    scale = np.max(np.abs(flat))
    if not np.isfinite(scale):
        raise SingularTransform("non-finite coordinates: %r" % (flat,))
    if scale <= ZERO_VECTOR_TOL:
        raise ZeroVector("all coordinates vanish: %r" % (flat,))
    out = v / scale
    for x in out.reshape(-1):
        if abs(x) > SIGN_TOL:
            if x < 0:
                out = -out
            break
    # avoid emitting -0.0, which would break byte-determinism of reports
    return out + 0.0


@dataclass(frozen=True)
class ProjPoint:
    """A point of RP^2 in normalized homogeneous coordinates."""
    coords: tuple

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def __repr__(self):
        return "ProjPoint(%.6g, %.6g, %.6g)" % self.coords


@dataclass(frozen=True)
class ProjLine:
    """A line of RP^2 given by dual coordinates (a, b, c): ax + by + cz = 0."""
    coeffs: tuple

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=float)

    def __repr__(self):
        return "ProjLine(%.6g, %.6g, %.6g)" % self.coeffs


def normalize_point(p: VectorLike) -> ProjPoint:
    v = _canonical(np.asarray(p, dtype=float).reshape(3))
    return ProjPoint(tuple(float(x) for x in v))


def normalize_line(l: VectorLike) -> ProjLine:
    v = _canonical(np.asarray(l, dtype=float).reshape(3))
    return ProjLine(tuple(float(x) for x in v))


def _pt(p) -> np.ndarray:
    if isinstance(p, ProjPoint):
        return p.vec
    return normalize_point(p).vec


def proj_equal(p, q, tol: float = TOL) -> bool:
    """Projective equality: all 2x2 minors of the normalized pair vanish."""
    a = p.vec if isinstance(p, (ProjPoint, ProjLine)) else _canonical(np.asarray(p, float))
    b = q.vec if isinstance(q, (ProjPoint, ProjLine)) else _canonical(np.asarray(q, float))
    return bool(np.max(np.abs(np.cross(a, b))) <= tol)


def incident(p: ProjPoint, l: ProjLine, tol: float = TOL) -> bool:
    return abs(float(np.dot(p.vec, l.vec))) <= tol


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The line through two distinct points."""
    if proj_equal(p, q):
        raise CoincidentArguments("join of coincident points %r, %r" % (p, q))
    return normalize_line(np.cross(p.vec, q.vec))


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    """The intersection point of two distinct lines."""
    if proj_equal(l, m):
        raise CoincidentArguments("meet of coincident lines %r, %r" % (l, m))
    return normalize_point(np.cross(l.vec, m.vec))


# ---------------------------------------------------------------------------
# collineations


@dataclass(frozen=True, eq=False)
class Collineation:
    """A projective transformation, stored as a determinant-one matrix."""
    m: np.ndarray

    @classmethod
    def from_matrix(cls, m) -> "Collineation":
        a = np.array(m, dtype=float).reshape(3, 3)
        d = float(np.linalg.det(a))
        if not math.isfinite(d) or abs(d) <= 1e-300:
            raise SingularTransform("determinant %r is not invertible" % d)
        a = a / np.cbrt(d)
        a.setflags(write=False)
        return cls(a)

    @classmethod
    def identity(cls) -> "Collineation":
        return cls.from_matrix(np.eye(3))

    def __matmul__(self, other: "Collineation") -> "Collineation":
        return Collineation.from_matrix(self.m @ other.m)

    def inverse(self) -> "Collineation":
        return Collineation.from_matrix(np.linalg.inv(self.m))

    def power(self, k: int) -> "Collineation":
        if k < 0:
            return self.inverse().power(-k)
        return Collineation.from_matrix(np.linalg.matrix_power(self.m, k))

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return apply(self, p)

    def __repr__(self):
        return "Collineation(%s)" % np.array2string(self.m, precision=6)


def apply(g: Collineation, p: ProjPoint) -> ProjPoint:
    return normalize_point(g.m @ p.vec)


def collineation_distance(g: Collineation, h: Collineation) -> float:
    """Max-entry distance between determinant-one representatives."""
    return float(np.max(np.abs(g.m - h.m)))


# ---------------------------------------------------------------------------
# conics


@dataclass(frozen=True, eq=False)
class Conic:
    """A conic {v : v^T q v = 0}, q symmetric and normalized up to scale."""
    q: np.ndarray

    @classmethod
    def from_matrix(cls, q) -> "Conic":
        a = np.array(q, dtype=float).reshape(3, 3)
        a = (a + a.T) / 2.0
        a = _canonical(a)
        a.setflags(write=False)
        return cls(a)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.q))

    @property
    def is_degenerate(self) -> bool:
        return abs(self.det) <= DEGENERATE_TOL

    def value(self, p: ProjPoint) -> float:
        v = p.vec
        return float(v @ self.q @ v)

    def contains(self, p: ProjPoint, tol: float = TOL) -> bool:
        return abs(self.value(p)) <= tol

    def has_real_points(self) -> bool:
        w = np.linalg.eigvalsh(self.q)
        return bool(w.min() < -DEGENERATE_TOL and w.max() > DEGENERATE_TOL)

    def is_interior(self, p: ProjPoint) -> bool:
        """True for points strictly inside a nondegenerate real conic.

        The sign of v^T q v * det(q) does not depend on the scale of q.
        """
        return self.value(p) * self.det > 0.0

    def __repr__(self):
        return "Conic(%s)" % np.array2string(self.q, precision=6)


UNIT_CIRCLE = Conic.from_matrix(np.diag([1.0, 1.0, -1.0]))
# y^2 - xz = 0, the conic of the rational curve u -> (1, u, u^2)
STANDARD_CONIC = Conic.from_matrix([[0, 0, -1], [0, 2, 0], [-1, 0, 0]])


def conic_distance(a: Conic, b: Conic) -> float:
    """Max-entry distance between normalized matrices, up to overall sign."""
    return float(min(np.max(np.abs(a.q - b.q)), np.max(np.abs(a.q + b.q))))


def conic_equal(a: Conic, b: Conic, tol: float = TOL) -> bool:
    return conic_distance(a, b) <= tol


def apply_to_conic(g: Collineation, Q: Conic) -> Conic:
    """Push a conic forward: p on Q iff g(p) on the result."""
    if Q.is_degenerate:
        raise DegenerateConic("cannot transport a degenerate conic")
    try:
        ginv = np.linalg.inv(g.m)
    except np.linalg.LinAlgError as exc:
        raise SingularTransform(str(exc)) from None
    return Conic.from_matrix(ginv.T @ Q.q @ ginv)


def tangent_line(Q: Conic, p: ProjPoint) -> ProjLine:
    if Q.is_degenerate:
        raise DegenerateConic("tangent line of a degenerate conic")
    if not Q.contains(p):
        raise PointNotOnConic("%r is not on the conic (residual %.3g)"
                              % (p, Q.value(p)))
    return normalize_line(Q.q @ p.vec)


def polar(Q: Conic, p: ProjPoint) -> ProjLine:
    """Polar line of any point; equals the tangent line for points on Q."""
    return normalize_line(Q.q @ p.vec)


def pole(Q: Conic, l: ProjLine) -> ProjPoint:
    if Q.is_degenerate:
        raise DegenerateConic("pole with respect to a degenerate conic")
    return normalize_point(np.linalg.solve(Q.q, l.vec))


# ---------------------------------------------------------------------------
# classification and eigenstructure


@dataclass(frozen=True)
class PositiveHyperbolic:
    s: float
    t: float

    @property
    def eigenvalues(self) -> tuple:
        return (math.exp(self.s), math.exp(self.t), math.exp(-self.s - self.t))


@dataclass(frozen=True)
class Other:
    reason: str


COMPLEX_PAIR = "complex pair"
REPEATED = "repeated eigenvalues"
NON_POSITIVE = "non-positive real root"


def _char_poly(m: np.ndarray) -> tuple:
    """Coefficients (b, c, d) of the monic characteristic polynomial."""
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    c2 = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
          + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
          + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    det = float(np.linalg.det(m))
    return -tr, c2, -det


def real_cubic_roots(b: float, c: float, d: float):
    """Roots of x^3 + b x^2 + c x + d when all three are real, else None.

    Trigonometric solution of the depressed cubic followed by one Newton
    step per root. Repeated roots are returned as (near-)equal values.
    """
    shift = -b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    scale = max(1.0, abs(b), abs(c) ** 0.5, abs(d) ** (1.0 / 3.0))
    if p >= -1e-14 * scale ** 2:
        if abs(p) <= 1e-14 * scale ** 2 and abs(q) <= 1e-14 * scale ** 3:
            roots = [shift] * 3
        else:
            return None
    else:
        arg = 1.5 * q / p * math.sqrt(-3.0 / p)
        if abs(arg) > 1.0 + 1e-12:
            return None
        arg = max(-1.0, min(1.0, arg))
        amp = 2.0 * math.sqrt(-p / 3.0)
        theta = math.acos(arg) / 3.0
        roots = [shift + amp * math.cos(theta - 2.0 * math.pi * k / 3.0)
                 for k in range(3)]
    refined = []
    for x in roots:
        f = ((x + b) * x + c) * x + d
        df = (3.0 * x + 2.0 * b) * x + c
        if abs(df) > 1e-12 * scale ** 2:
            x = x - f / df
        refined.append(x)
    return _merge_double_roots(sorted(refined, reverse=True), b, c, d, scale)


def _merge_double_roots(roots: list, b: float, c: float, d: float, scale: float) -> list:
    # A double root is only resolved to ~sqrt(eps) by the closed form. Two
    # close roots collapse onto the critical point between them when the
    # cubic vanishes there to rounding accuracy.
    eps = np.finfo(float).eps
    for k in range(2):
        x, y = roots[k], roots[k + 1]
        if x - y > 1e-6 * scale:
            continue
        disc = b * b - 3.0 * c
        if disc < 0:
            continue
        crit = [(-b + sgn * math.sqrt(disc)) / 3.0 for sgn in (1.0, -1.0)]
        z = min(crit, key=lambda u: abs(u - (x + y) / 2.0))
        f = ((z + b) * z + c) * z + d
        size = abs(z) ** 3 + abs(b) * z * z + abs(c) * abs(z) + abs(d)
        if abs(f) <= 64.0 * eps * size:
            roots[k] = roots[k + 1] = z
    return roots


def classify(g: Collineation):
    """PositiveHyperbolic(s, t) with eigenvalues e^s > e^t > e^(-s-t) > 0,
    or Other(reason)."""
    roots = real_cubic_roots(*_char_poly(g.m))
    if roots is None:
        return Other(COMPLEX_PAIR)
    if roots[-1] <= 0.0:
        # a repeated negative or zero root still counts as non-positive
        return Other(NON_POSITIVE)
    logs = [math.log(x) for x in roots]
    if logs[0] - logs[1] <= TOL or logs[1] - logs[2] <= TOL:
        return Other(REPEATED)
    return PositiveHyperbolic(logs[0], logs[1])


def _null_vector(a: np.ndarray) -> np.ndarray:
    cands = [np.cross(a[0], a[1]), np.cross(a[0], a[2]), np.cross(a[1], a[2])]
    return max(cands, key=lambda v: float(np.dot(v, v)))


def eigenbasis(g: Collineation) -> tuple:
    """Attracting, middle and repelling fixed points of a positive
    hyperbolic collineation."""
    c = classify(g)
    if not isinstance(c, PositiveHyperbolic):
        raise NotPositiveHyperbolic("classify gave %r" % (c,))
    out = []
    for lam in c.eigenvalues:
        v = _null_vector(g.m - lam * np.eye(3))
        out.append(normalize_point(v))
    return tuple(out)


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class AffineChart:
    """Affine chart on {<c, v> = 1} with planar coordinates <basis_i, v>."""
    c: tuple = (0.0, 0.0, 1.0)
    basis: tuple = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))

    def covector(self) -> np.ndarray:
        return np.array(self.c, dtype=float)

    def project_array(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized chart projection of an (n, 3) array."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 3)
        d = pts @ self.covector()
        if np.any(np.abs(d) <= CHART_TOL):
            raise AtInfinity("point on the chart's line at infinity")
        w = pts / d[:, None]
        return w @ np.array(self.basis, dtype=float).T


def chart_project(chart: AffineChart, p: ProjPoint) -> tuple:
    d = float(np.dot(chart.covector(), p.vec))
    if abs(d) <= CHART_TOL:
        raise AtInfinity("%r lies on the line at infinity of %r" % (p, chart))
    w = p.vec / d
    b = np.array(chart.basis, dtype=float)
    return float(b[0] @ w), float(b[1] @ w)


def chart_unproject(chart: AffineChart, xy) -> ProjPoint:
    """Inverse of chart_project."""
    b = np.array(chart.basis, dtype=float)
    a = np.vstack([b, chart.covector()])
    return normalize_point(np.linalg.solve(a, [xy[0], xy[1], 1.0]))


STANDARD_CHART = AffineChart()


# ---------------------------------------------------------------------------
# conic arcs

# pulled-back conic of a chord basis is beta * STANDARD_PATTERN
STANDARD_PATTERN = np.array([[0.0, 0.0, 1.0], [0.0, -2.0, 0.0], [1.0, 0.0, 0.0]])


def chord_basis(Q: Conic, p: ProjPoint, q: ProjPoint) -> np.ndarray:
    """Basis (p, r, q) with r the pole of the chord pq, scaled so that
    M^T Q M = beta * [[0,0,1],[0,-2,0],[1,0,0]].

    In this basis the conic is the rational curve u -> (1, u, u^2), with
    p at u = 0 and q at u = infinity. Column signs are fixed so that the
    first column is the normalized p and det(M) > 0.
    """
    if Q.is_degenerate:
        raise DegenerateConic("chord basis of a degenerate conic")
    if not (Q.contains(p) and Q.contains(q)):
        raise EndpointsNotOnConic("chord endpoints %r, %r not on conic" % (p, q))
    if proj_equal(p, q):
        raise CoincidentArguments("chord endpoints coincide: %r" % (p,))
    A = Q.q
    pv, qv = p.vec, q.vec
    r = normalize_point(np.linalg.solve(A, np.cross(pv, qv))).vec
    beta = float(pv @ A @ qv)
    gamma = float(r @ A @ r)
    if abs(gamma) <= DEGENERATE_TOL or abs(beta) <= DEGENERATE_TOL:
        raise PoleOnChord("pole of chord %r-%r lies on the conic" % (p, q))
    if -2.0 * beta / gamma < 0:
        qv = -qv
        beta = -beta
    r = r * math.sqrt(-2.0 * beta / gamma)
    M = np.column_stack([pv, r, qv])
    if np.linalg.det(M) < 0:
        M[:, 1] = -M[:, 1]
    return M


def _arc_side(M: np.ndarray, w: np.ndarray) -> float:
    """Sign of the rational parameter u of a conic point in basis M."""
    c = np.linalg.solve(M, w)
    v = c / np.max(np.abs(c))
    return float(v[1] * (v[0] + v[2]))


def _arc_vectors(M: np.ndarray, sigma: float, n: int) -> np.ndarray:
    phi = np.linspace(0.0, math.pi / 2.0, n)
    cs, sn = np.cos(phi), np.sin(phi)
    # homogeneous form of (1, u, u^2) with u = sigma * tan(phi)
    local = np.column_stack([cs * cs, sigma * sn * cs, sn * sn])
    local[0] = (1.0, 0.0, 0.0)
    local[-1] = (0.0, 0.0, 1.0)
    return local @ M.T


def arc_vectors(Q: Conic, p: ProjPoint, q: ProjPoint, side_witness: ProjPoint,
                n: int) -> np.ndarray:
    """Unnormalized (n, 3) samples of the arc p -> q through side_witness."""
    if n < 2:
        raise ValueError("need at least 2 samples, got %d" % n)
    try:
        M = chord_basis(Q, p, q)
    except (EndpointsNotOnConic, CoincidentArguments) as exc:
        raise EndpointsNotOnConic(str(exc)) from None
    if not Q.contains(side_witness):
        raise WitnessOnWrongComponent("witness %r is not on the conic" % (side_witness,))
    side = _arc_side(M, side_witness.vec)
    if abs(side) <= TOL:
        raise WitnessOnWrongComponent("witness %r coincides with an endpoint"
                                      % (side_witness,))
    return _arc_vectors(M, 1.0 if side > 0 else -1.0, n)


def sample_conic_arc(Q: Conic, p: ProjPoint, q: ProjPoint,
                     side_witness: ProjPoint, n: int) -> list:
    """n points on Q from p to q along the arc containing side_witness."""
    return [normalize_point(v) for v in arc_vectors(Q, p, q, side_witness, n)]


def on_arc(Q: Conic, p: ProjPoint, q: ProjPoint, side_witness: ProjPoint,
           pts: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Boolean mask: which of the (n, 3) conic points lie on the closed arc."""
    M = chord_basis(Q, p, q)
    sigma = _arc_side(M, side_witness.vec)
    c = np.linalg.solve(M, np.asarray(pts, dtype=float).T).T
    c = c / np.max(np.abs(c), axis=1)[:, None]
    side = c[:, 1] * (c[:, 0] + c[:, 2])
    return (side * sigma > 0) | (np.abs(c[:, 1]) <= tol)
