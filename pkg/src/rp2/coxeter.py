"""Reflection groups generated by 3x3 Cartan matrices.

For a Cartan matrix C the reflections are rho_i = I - E_ii C: rho_i changes
only the i-th coordinate, v -> v - (Cv)_i e_i, and fixes the line
(Cv)_i = 0 pointwise. All group arithmetic is exact on Python integers,
bounded to the signed 64-bit range; leaving that range is an error rather
than a silent wraparound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from rp2.errors import DegenerateCartan, IntegerOverflow, InvalidCartanMatrix
from rp2.projlin import AffineChart, normalize_point

INT64_MAX = 2 ** 63 - 1
ORDER_CAP = 64
MAX_ENUM_LENGTH = 20
INFINITE = math.inf


@dataclass(frozen=True)
class CartanMatrix:
    c: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.c)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise InvalidCartanMatrix("Cartan matrix must be 3x3")
        for i in range(3):
            for j in range(3):
                if i == j and rows[i][j] != 2:
                    raise InvalidCartanMatrix("diagonal entry c%d%d = %d != 2"
                                              % (i + 1, j + 1, rows[i][j]))
                if i != j and rows[i][j] > 0:
                    raise InvalidCartanMatrix("off-diagonal entry c%d%d = %d > 0"
                                              % (i + 1, j + 1, rows[i][j]))
        object.__setattr__(self, "c", rows)

    def row(self, i: int) -> tuple:
        return self.c[i]


DEFAULT_CARTAN = CartanMatrix(((2, -1, -1), (-2, 2, -1), (-1, -1, 2)))

IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _check(x: int, word) -> int:
    if x > INT64_MAX or x < -INT64_MAX - 1:
        raise IntegerOverflow(word)
    return x


def mat_mul(a: tuple, b: tuple, word=()) -> tuple:
    return tuple(
        tuple(_check(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j], word)
              for j in range(3))
        for i in range(3))


def mat_vec(a: tuple, v: tuple) -> tuple:
    return tuple(a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] for i in range(3))


def mat_det(a: tuple) -> int:
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def _cross(u: tuple, v: tuple) -> tuple:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class GroupElement:
    m: tuple
    word: tuple = ()

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def det(self) -> int:
        return mat_det(self.m)

    @property
    def word_str(self) -> str:
        return "".join(str(i) for i in self.word)

    def array(self) -> np.ndarray:
        return np.array(self.m, dtype=np.int64)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        w = self.word + other.word
        return GroupElement(mat_mul(self.m, other.m, w), w)


def reflections(C: CartanMatrix) -> tuple:
    gens = []
    for i in range(3):
        rows = [list(r) for r in IDENTITY]
        rows[i] = [IDENTITY[i][j] - C.c[i][j] for j in range(3)]
        gens.append(GroupElement(tuple(tuple(r) for r in rows), (i + 1,)))
    return tuple(gens)


def element_order(m: tuple, cap: int = ORDER_CAP):
    """Least k <= cap with m^k = I, or INFINITE."""
    acc = m
    for k in range(1, cap + 1):
        if acc == IDENTITY:
            return k
        acc = mat_mul(acc, m)
    return INFINITE


def product_orders(C: CartanMatrix) -> tuple:
    """Orders of rho1 rho2, rho2 rho3 and rho1 rho3, in that order."""
    r = reflections(C)
    return tuple(element_order(mat_mul(r[i].m, r[j].m))
                 for i, j in ((0, 1), (1, 2), (0, 2)))


def fundamental_vertices(C: CartanMatrix, chart_c=(1, 1, 1)) -> tuple:
    """Exact integer vertices v1, v2, v3; v_k = row_i x row_j for {i, j, k} =
    {1, 2, 3}, signed so that <chart_c, v_k> > 0 where possible."""
    rows = C.c
    out = []
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        v = _cross(rows[i], rows[j])
        if v == (0, 0, 0):
            raise DegenerateCartan("rows %d and %d are parallel" % (i + 1, j + 1))
        if sum(a * b for a, b in zip(chart_c, v)) < 0:
            v = tuple(-x for x in v)
        out.append(v)
    return tuple(out)


def fundamental_triangle(C: CartanMatrix) -> tuple:
    return tuple(normalize_point(v) for v in fundamental_vertices(C))


@dataclass
class Enumeration:
    """Group elements in BFS order with lexicographically least shortest words."""
    elements: list
    counts: list

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def even_subgroup(self) -> list:
        return [g for g in self.elements if g.length % 2 == 0]

    def by_matrix(self) -> dict:
        return {g.m: g for g in self.elements}


def enumerate_group(C: CartanMatrix, max_len: int) -> Enumeration:
    """Breadth-first closure under right multiplication by generators.

    Parents are visited in lexicographic word order and generators in index
    order, so the first word to reach an element is its lexicographically
    least shortest word.
    """
    if not 0 <= max_len <= MAX_ENUM_LENGTH:
        raise ValueError("max_len must be in [0, %d], got %r" % (MAX_ENUM_LENGTH, max_len))
    gens = reflections(C)
    start = GroupElement(IDENTITY, ())
    seen = {start.m}
    elements = [start]
    counts = [1]
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for g in frontier:
            for r in gens:
                h = g @ r
                if h.m not in seen:
                    seen.add(h.m)
                    nxt.append(h)
        counts.append(len(nxt))
        elements.extend(nxt)
        frontier = nxt
    return Enumeration(elements, counts)


@dataclass
class Tile:
    element: GroupElement
    vertices: tuple     # exact integer representatives g . v_k
    points: tuple       # normalized ProjPoints


@dataclass
class Tiling:
    base: tuple
    tiles: list
    chart: AffineChart = field(default_factory=lambda: AffineChart(c=(1.0, 1.0, 1.0)))

    def chart_triangles(self) -> np.ndarray:
        """(n, 3, 2) array of tile vertices in chart coordinates."""
        pts = np.array([t.vertices for t in self.tiles], dtype=float).reshape(-1, 3)
        return self.chart.project_array(pts).reshape(-1, 3, 2)

    def to_json(self) -> list:
        tri = self.chart_triangles()
        return [{"word": t.element.word_str,
                 "vertices": [[_sig12(x), _sig12(y)] for x, y in tri[k]]}
                for k, t in enumerate(self.tiles)]


def _sig12(x: float) -> float:
    return float("%.12g" % x)


def tiling(C: CartanMatrix, max_len: int, chart: AffineChart | None = None,
           even_only: bool = False) -> Tiling:
    """Orbit of the fundamental triangle under the enumerated group."""
    chart = chart or AffineChart(c=(1.0, 1.0, 1.0))
    base = fundamental_vertices(C, chart.c)
    enum = enumerate_group(C, max_len)
    elems = enum.even_subgroup() if even_only else enum.elements
    tiles = []
    for g in elems:
        verts = tuple(mat_vec(g.m, v) for v in base)
        tiles.append(Tile(g, verts, tuple(normalize_point(v) for v in verts)))
    return Tiling(tuple(normalize_point(v) for v in base), tiles, chart)


@dataclass
class TilingReport:
    n_tiles: int
    n_elements: int
    distinct_tiles: int
    positive_chart: bool
    overlaps: list

    @property
    def ok(self) -> bool:
        return (self.distinct_tiles == self.n_tiles == self.n_elements
                and self.positive_chart and not self.overlaps)


def _barycentric(tri: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of pts (m, 2) in each triangle tri (n, 3, 2)
    -> (m, n, 3)."""
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    v0, v1 = b - a, c - a
    den = v0[:, 0] * v1[:, 1] - v0[:, 1] * v1[:, 0]
    d = pts[:, None, :] - a[None, :, :]
    l1 = (d[..., 0] * v1[None, :, 1] - d[..., 1] * v1[None, :, 0]) / den
    l2 = (v0[None, :, 0] * d[..., 1] - v0[None, :, 1] * d[..., 0]) / den
    return np.stack([1.0 - l1 - l2, l1, l2], axis=-1)


def check_tiling(T: Tiling, n_elements: int | None = None, tol: float = 1e-9) -> TilingReport:
    """Free-orbit, positivity and sampled-interior disjointness checks."""
    c = T.chart.c
    positive = all(sum(ci * vi for ci, vi in zip(c, v)) > 0
                   for t in T.tiles for v in t.vertices)
    keys = {frozenset(t.vertices) for t in T.tiles}
    tri = T.chart_triangles()
    centroid = tri.mean(axis=1)
    mids = (tri + np.roll(tri, -1, axis=1)) / 2.0
    samples = np.concatenate([centroid[:, None, :], mids], axis=1)  # (n, 4, 2)
    n = len(T.tiles)
    flat = samples.reshape(-1, 2)
    owner = np.repeat(np.arange(n), 4)
    bary = _barycentric(tri, flat)
    inside = np.all(bary > tol, axis=-1)
    inside[np.arange(len(flat)), owner] = False
    hits = np.argwhere(inside)
    overlaps = sorted({(int(owner[i]), int(j)) for i, j in hits})
    return TilingReport(n, n if n_elements is None else n_elements,
                        len(keys), positive, overlaps)
