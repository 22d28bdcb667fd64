"""Root system of sl(3, R) on its diagonal Cartan subalgebra.

A Cartan element a(s, t) is the traceless diagonal matrix diag(s, t, -s-t).
Roots a -> a_i - a_j are stored as exact integer row vectors acting on
(s, t); root vectors h_ij are their duals under the trace form

    tr(a(s,t)^2) = 2 (s^2 + st + t^2) = 2 |s + w t|^2,   w = exp(i pi / 3).

The Weyl group is the symmetric group permuting (a_1, a_2, a_3), and the
closed Weyl chamber is {a(s, t) : s >= t >= -s/2}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from rp2.projlin import Collineation

CHAMBER_TOL = 1e-12
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class CartanElement:
    s: float
    t: float

    @property
    def diag(self) -> tuple:
        return (self.s, self.t, -self.s - self.t)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.array(self.diag, dtype=float))

    def __add__(self, other: "CartanElement") -> "CartanElement":
        return CartanElement(self.s + other.s, self.t + other.t)

    def __sub__(self, other: "CartanElement") -> "CartanElement":
        return CartanElement(self.s - other.s, self.t - other.t)

    def __neg__(self) -> "CartanElement":
        return CartanElement(-self.s, -self.t)

    def __mul__(self, k) -> "CartanElement":
        return CartanElement(k * self.s, k * self.t)

    __rmul__ = __mul__

    @property
    def norm(self) -> float:
        """Norm induced by the trace form."""
        return math.sqrt(trace_form(self, self))


def a(s, t) -> CartanElement:
    return CartanElement(s, t)


def from_diagonal(d) -> CartanElement:
    """Cartan element with diagonal (d_1, d_2, d_3); the trace must vanish."""
    if abs(d[0] + d[1] + d[2]) > 1e-9 * max(1.0, *map(abs, d)):
        raise ValueError("diagonal %r is not traceless" % (d,))
    return CartanElement(d[0], d[1])


@dataclass(frozen=True)
class Root:
    label: tuple
    row: tuple

    def __str__(self):
        return "alpha%d%d" % self.label


@dataclass(frozen=True)
class RootVector:
    label: tuple
    element: CartanElement

    def __str__(self):
        return "h%d%d" % self.label


_ROOT_TABLE = {
    (1, 2): (1, -1),
    (2, 1): (-1, 1),
    (2, 3): (1, 2),
    (3, 2): (-1, -2),
    (3, 1): (-2, -1),
    (1, 3): (2, 1),
}

_ROOT_VECTOR_TABLE = {
    (1, 2): (1, -1),
    (2, 1): (-1, 1),
    (2, 3): (0, 1),
    (3, 2): (0, -1),
    (3, 1): (-1, 0),
    (1, 3): (1, 0),
}

LABELS = tuple(_ROOT_TABLE)
ROOTS = {k: Root(k, v) for k, v in _ROOT_TABLE.items()}
ROOT_VECTORS = {k: RootVector(k, CartanElement(*v))
                for k, v in _ROOT_VECTOR_TABLE.items()}
SIMPLE_ROOTS = (ROOTS[1, 2], ROOTS[2, 3])
POSITIVE_LABELS = ((1, 2), (2, 3), (1, 3))


def root_value(alpha: Root, x: CartanElement):
    return alpha.row[0] * x.s + alpha.row[1] * x.t


def trace_form(x: CartanElement, y: CartanElement):
    return sum(u * v for u, v in zip(x.diag, y.diag))


def in_weyl_chamber(x: CartanElement, closed: bool = True) -> bool:
    a12 = root_value(ROOTS[1, 2], x)
    a23 = root_value(ROOTS[2, 3], x)
    if closed:
        return a12 >= -CHAMBER_TOL and a23 >= -CHAMBER_TOL
    return a12 > CHAMBER_TOL and a23 > CHAMBER_TOL


def is_regular(x: CartanElement, tol: float = CHAMBER_TOL) -> bool:
    return all(abs(root_value(r, x)) > tol for r in ROOTS.values())


WEYL_GROUP = tuple(itertools.permutations(range(3)))


def weyl_act(w: tuple, x: CartanElement) -> CartanElement:
    d = x.diag
    return CartanElement(d[w[0]], d[w[1]])


def weyl_orbit(x: CartanElement) -> list:
    return [weyl_act(w, x) for w in WEYL_GROUP]


def chamber_representative(x: CartanElement) -> CartanElement:
    """The orbit element in the closed chamber: the sorted diagonal."""
    d = sorted(x.diag, reverse=True)
    return CartanElement(d[0], d[1])


def exp_cartan(x: CartanElement) -> Collineation:
    return Collineation.from_matrix(np.diag(np.exp(np.array(x.diag, dtype=float))))


def H(t: float) -> Collineation:
    """One-parameter subgroup exp(a(t, 0)) = diag(e^t, 1, e^-t)."""
    return exp_cartan(CartanElement(t, 0.0))


def singular_rays() -> tuple:
    """Generators a(1,1), a(2,-1) of the chamber's boundary rays."""
    h = ROOT_VECTORS
    r1 = CartanElement(1, 1)
    r2 = CartanElement(2, -1)
    assert r1 == h[1, 3].element + h[2, 3].element
    assert r1 == h[1, 2].element + 2 * h[2, 3].element
    assert r2 == h[1, 2].element + h[1, 3].element
    assert r2 == 2 * h[1, 2].element + h[2, 3].element
    return r1, r2


def singular_decompositions() -> dict:
    """Each displayed decomposition of a singular element, checked exactly."""
    h = {k: v.element for k, v in ROOT_VECTORS.items()}
    r1, r2 = CartanElement(1, 1), CartanElement(2, -1)
    return {
        "a(1,1) = h13 + h23": r1 == h[1, 3] + h[2, 3],
        "a(1,1) = h12 + 2 h23": r1 == h[1, 2] + 2 * h[2, 3],
        "a(2,-1) = h12 + h13": r2 == h[1, 2] + h[1, 3],
        "a(2,-1) = 2 h12 + h23": r2 == 2 * h[1, 2] + h[2, 3],
        "a(1,0) = h13 = h12 + h23": (CartanElement(1, 0) == h[1, 3]
                                     == h[1, 2] + h[2, 3]),
    }


# fixed regular point of the open chamber used to order the roots
ORDERING_POINT = CartanElement(2, 1)


def root_ordering_check(point: CartanElement = ORDERING_POINT) -> list:
    """Roots sorted by decreasing value on an open-chamber point.

    Only the order-independent facts are asserted: the three positive
    roots are positive, the negatives mirror them, and alpha13 / alpha31
    are the extremes. The relative order of alpha12 and alpha23 depends on
    the point chosen.
    """
    if not in_weyl_chamber(point, closed=False):
        raise ValueError("ordering point %r must be in the open chamber" % (point,))
    ordered = sorted(ROOTS.values(), key=lambda r: root_value(r, point),
                     reverse=True)
    values = [root_value(r, point) for r in ordered]
    assert {r.label for r in ordered[:3]} == set(POSITIVE_LABELS)
    assert all(v > 0 for v in values[:3]) and all(v < 0 for v in values[3:])
    assert ordered[0].label == (1, 3) and ordered[-1].label == (3, 1)
    for r in ordered:
        i, j = r.label
        assert root_value(ROOTS[j, i], point) == -root_value(r, point)
    return ordered


def identity_checks(n_random: int = 1000, seed: int = 0) -> dict:
    """Every root-system identity as a name -> bool map.

    Reads the module tables at call time so a corrupted table is caught.
    """
    rng = np.random.default_rng(seed)
    pts = [CartanElement(float(s), float(t))
           for s, t in rng.uniform(-10.0, 10.0, size=(n_random, 2))]
    basis = (CartanElement(1, 0), CartanElement(0, 1))
    out = {}
    out["root table matches a_i - a_j"] = all(
        root_value(ROOTS[i, j], x) == x.diag[i - 1] - x.diag[j - 1]
        for (i, j) in LABELS for x in basis)
    out["alpha_ji = -alpha_ij"] = all(
        ROOTS[j, i].row == tuple(-v for v in ROOTS[i, j].row) for (i, j) in LABELS)
    out["trace-form duality tr(h_ij a) = alpha_ij(a)"] = all(
        abs(trace_form(ROOT_VECTORS[k].element, x) - root_value(ROOTS[k], x)) <= IDENTITY_TOL
        for k in LABELS for x in pts)
    out["tr(a^2) = 2(s^2 + st + t^2)"] = all(
        abs(trace_form(x, x) - 2 * (x.s ** 2 + x.s * x.t + x.t ** 2))
        <= IDENTITY_TOL for x in pts)
    out["trace form is Weyl invariant"] = all(
        abs(trace_form(weyl_act(w, x), weyl_act(w, y)) - trace_form(x, y))
        <= IDENTITY_TOL for w in WEYL_GROUP for x, y in zip(pts[:200], pts[200:400]))
    out["one Weyl-orbit element per regular a in the closed chamber"] = all(
        sum(in_weyl_chamber(y) for y in weyl_orbit(x)) == 1
        for x in pts if is_regular(x))
    out["chamber is alpha12 >= 0 and alpha23 >= 0"] = all(
        in_weyl_chamber(x) == (x.s >= x.t and x.t >= -x.s / 2) for x in pts)
    for name, ok in singular_decompositions().items():
        out[name] = ok
    r1, r2 = CartanElement(1, 1), CartanElement(2, -1)
    out["singular rays lie on the chamber walls"] = (
        root_value(ROOTS[1, 2], r1) == 0 and root_value(ROOTS[2, 3], r2) == 0
        and in_weyl_chamber(r1) and in_weyl_chamber(r2)
        and not in_weyl_chamber(r1, closed=False)
        and not in_weyl_chamber(r2, closed=False))
    try:
        root_ordering_check()
        out["positive/negative split and extremes of the root order"] = True
    except AssertionError:
        out["positive/negative split and extremes of the root order"] = False
    Ht = H(1.0).m
    out["H_t = exp(a(t,0)) = diag(e^t, 1, e^-t)"] = bool(
        np.max(np.abs(Ht - np.diag([math.e, 1.0, 1.0 / math.e]))) <= 1e-12)
    return out
