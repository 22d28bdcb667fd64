import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_conjugator
from rp2.errors import (AtInfinity, CoincidentArguments, EndpointsNotOnConic,
                        NotPositiveHyperbolic, PointNotOnConic,
                        WitnessOnWrongComponent, ZeroVector)
from rp2.projlin import (STANDARD_CHART, STANDARD_CONIC, UNIT_CIRCLE, AffineChart,
                         Collineation, Conic, Other, PositiveHyperbolic, apply,
                         apply_to_conic, chart_project, chart_unproject,
                         chord_basis, classify, conic_equal, eigenbasis, incident,
                         join, meet, normalize_line, normalize_point, on_arc, pole,
                         proj_equal, real_cubic_roots, sample_conic_arc, tangent_line)

coord = st.floats(-5.0, 5.0, allow_nan=False)
vec3 = st.tuples(coord, coord, coord).filter(lambda v: max(map(abs, v)) > 1e-3)


def rot_z(th):
    c, s = math.cos(th), math.sin(th)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


# -- points and lines -------------------------------------------------------

@pytest.mark.parametrize("raw, expected", [
    ((2, 2, 2), (1.0, 1.0, 1.0)),
    ((0, -3, 0), (0.0, 1.0, 0.0)),
    ((3, 4, 2), (0.75, 1.0, 0.5)),
    ((-1, 2, -4), (0.25, -0.5, 1.0)),
])
def test_normalize_point_examples(raw, expected):
    assert normalize_point(raw).coords == pytest.approx(expected, abs=1e-15)


def test_normalize_rejects_zero():
    with pytest.raises(ZeroVector):
        normalize_point((0.0, 0.0, 0.0))
    with pytest.raises(ZeroVector):
        normalize_point((1e-301, 0.0, -1e-302))


@given(vec3)
def test_normalize_idempotent_and_canonical(v):
    p = normalize_point(v)
    assert normalize_point(p.coords) == p
    assert max(map(abs, p.coords)) == pytest.approx(1.0)
    first = next(x for x in p.coords if abs(x) > 1e-12)
    assert first > 0


@given(vec3, st.floats(-100.0, 100.0).filter(lambda k: abs(k) > 1e-3))
def test_normalize_is_scale_invariant(v, k):
    a = normalize_point(v)
    b = normalize_point(tuple(k * x for x in v))
    assert proj_equal(a, b)


def test_join_meet_examples():
    assert join(normalize_point((1, 0, 0)), normalize_point((0, 1, 0))).coeffs == (0.0, 0.0, 1.0)
    m = meet(normalize_line((2, -1, -1)), normalize_line((-1, -1, 2)))
    assert proj_equal(m, normalize_point((1, 1, 1)))
    l = join(normalize_point((1, 0, 1)), normalize_point((-1, 0, 1)))
    assert l.coeffs == pytest.approx((0.0, 1.0, 0.0))


def test_join_meet_reject_coincident():
    p = normalize_point((1, 2, 3))
    with pytest.raises(CoincidentArguments):
        join(p, normalize_point((2, 4, 6)))
    with pytest.raises(CoincidentArguments):
        meet(normalize_line((1, 1, 1)), normalize_line((-3, -3, -3)))


@given(vec3, vec3)
def test_join_contains_both_points(u, v):
    p, q = normalize_point(u), normalize_point(v)
    if proj_equal(p, q, 1e-6):
        return
    l = join(p, q)
    assert incident(p, l) and incident(q, l)


# -- collineations ----------------------------------------------------------

def test_collineation_normalized_to_det_one():
    g = Collineation.from_matrix(np.diag([2.0, 4.0, 8.0]))
    assert np.linalg.det(g.m) == pytest.approx(1.0, abs=1e-12)
    h = Collineation.from_matrix(-np.eye(3) * 3.0)
    assert np.linalg.det(h.m) == pytest.approx(1.0, abs=1e-12)


def test_apply_examples():
    assert apply(Collineation.identity(), normalize_point((1, 2, 3))).coords == \
        pytest.approx((1 / 3, 2 / 3, 1.0))
    e = math.e
    img = apply(Collineation.from_matrix(np.diag([e, 1.0, 1 / e])), normalize_point((1, 1, 1)))
    assert proj_equal(img, normalize_point((e, 1.0, 1 / e)))
    rho1 = Collineation.from_matrix([[-1, 1, 1], [0, 1, 0], [0, 0, 1]])
    assert proj_equal(apply(rho1, normalize_point((1, 1, 1))), normalize_point((1, 1, 1)))


matrices = st.lists(st.floats(-2.0, 2.0), min_size=9, max_size=9).map(
    lambda xs: np.array(xs).reshape(3, 3)).filter(lambda m: abs(np.linalg.det(m)) > 0.1)


@given(matrices, matrices, vec3)
def test_apply_is_an_action(a, b, v):
    g, h = Collineation.from_matrix(a), Collineation.from_matrix(b)
    p = normalize_point(v)
    assert proj_equal(apply(g @ h, p), apply(g, apply(h, p)), 1e-8)


# -- conics -----------------------------------------------------------------

def test_conic_normalization():
    Q = Conic.from_matrix(np.diag([-2.0, -2.0, 2.0]))
    assert np.array_equal(Q.q, np.diag([1.0, 1.0, -1.0]))
    assert not Q.is_degenerate
    assert Conic.from_matrix(np.diag([1.0, 1.0, 0.0])).is_degenerate


def test_apply_to_conic_examples():
    assert conic_equal(apply_to_conic(Collineation.identity(), UNIT_CIRCLE), UNIT_CIRCLE)
    t = 0.7
    g = Collineation.from_matrix(np.diag([1.0, math.exp(t), 1.0]))
    expected = Conic.from_matrix([[0, 0, -1], [0, 2 * math.exp(-2 * t), 0], [-1, 0, 0]])
    assert conic_equal(apply_to_conic(g, STANDARD_CONIC), expected)


@given(matrices, matrices)
@settings(max_examples=50)
def test_apply_to_conic_contravariant_and_det_sign(a, b):
    g, h = Collineation.from_matrix(a), Collineation.from_matrix(b)
    lhs = apply_to_conic(g @ h, UNIT_CIRCLE)
    rhs = apply_to_conic(g, apply_to_conic(h, UNIT_CIRCLE))
    assert conic_equal(lhs, rhs, 1e-7)
    # congruence keeps the inertia: one eigenvalue sign differs from the others
    assert sorted(np.sign(np.linalg.eigvalsh(lhs.q))).count(1.0) in (1, 2)


def test_apply_to_conic_transports_points():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = Collineation.from_matrix(random_conjugator(rng))
        img = apply_to_conic(g, UNIT_CIRCLE)
        for th in rng.uniform(0, 2 * math.pi, size=5):
            p = normalize_point((math.cos(th), math.sin(th), 1.0))
            assert img.contains(apply(g, p), 1e-8)


def test_tangent_and_pole_examples():
    l = tangent_line(STANDARD_CONIC, normalize_point((1, 0, 0)))
    assert l.coeffs == pytest.approx((0.0, 0.0, 1.0))
    r = pole(UNIT_CIRCLE, normalize_line((0, 1, 0)))
    assert r.coords == pytest.approx((0.0, 1.0, 0.0))
    with pytest.raises(PointNotOnConic):
        tangent_line(UNIT_CIRCLE, normalize_point((0, 0, 1)))


def test_pole_tangent_round_trip():
    rng = np.random.default_rng(4)
    h = Collineation.from_matrix(np.eye(3) + 0.3 * rng.uniform(-1, 1, size=(3, 3)))
    Q = apply_to_conic(h, UNIT_CIRCLE)
    for th in rng.uniform(0, 2 * math.pi, size=100):
        p = apply(h, normalize_point((math.cos(th), math.sin(th), 1.0)))
        assert Q.contains(p)
        l = tangent_line(Q, p)
        assert incident(p, l)
        assert proj_equal(pole(Q, l), p)


# -- classification and eigenbasis -------------------------------------------

def test_real_cubic_roots_recovers_constructed_roots():
    rng = np.random.default_rng(5)
    for _ in range(200):
        r = np.sort(rng.uniform(-3, 3, size=3))
        b, c, d = -r.sum(), r[0] * r[1] + r[0] * r[2] + r[1] * r[2], -r.prod()
        roots = real_cubic_roots(b, c, d)
        assert np.allclose(sorted(roots), r, atol=1e-8)


def test_classify_examples():
    res = classify(Collineation.from_matrix(np.diag([2.0, 1.0, 0.5])))
    assert isinstance(res, PositiveHyperbolic)
    assert (res.s, res.t) == pytest.approx((math.log(2.0), 0.0), abs=1e-12)
    assert classify(Collineation.from_matrix(rot_z(math.pi / 2))) == Other("complex pair")
    rho23 = Collineation.from_matrix(np.array([[1, 0, 0], [2, -1, 1], [0, 0, 1]]) @
                                     np.array([[1, 0, 0], [0, 1, 0], [1, 1, -1]]))
    assert classify(rho23) == Other("complex pair")
    assert classify(Collineation.identity()) == Other("repeated eigenvalues")
    assert classify(Collineation.from_matrix(np.diag([-2.0, -1.0, 0.5]))) == \
        Other("non-positive real root")


def test_classify_conjugation_invariant():
    rng = np.random.default_rng(6)
    base = np.diag(np.exp([1.1, 0.2, -1.3]))
    for _ in range(100):
        m = random_conjugator(rng)
        res = classify(Collineation.from_matrix(m @ base @ np.linalg.inv(m)))
        assert isinstance(res, PositiveHyperbolic)
        assert res.s == pytest.approx(1.1, abs=1e-8)
        assert res.t == pytest.approx(0.2, abs=1e-8)


def test_eigenbasis_examples():
    g = np.diag([4.0, 2.0, 1 / 8])
    att, mid, rep = eigenbasis(Collineation.from_matrix(g))
    assert (att.coords, mid.coords, rep.coords) == ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0),
                                                    (0.0, 0.0, 1.0))
    with pytest.raises(NotPositiveHyperbolic):
        eigenbasis(Collineation.from_matrix(rot_z(1.0)))


def test_eigenbasis_round_trip_and_residuals():
    rng = np.random.default_rng(7)
    for _ in range(50):
        m = random_conjugator(rng)
        g = Collineation.from_matrix(m @ np.diag([4.0, 2.0, 1 / 8]) @ np.linalg.inv(m))
        vs = eigenbasis(g)
        g2 = g @ g
        for k, v in enumerate(vs):
            assert proj_equal(v, normalize_point(m[:, k]), 1e-8)
            gv = g.m @ v.vec
            lam = gv @ v.vec / (v.vec @ v.vec)
            assert np.linalg.norm(gv - lam * v.vec) <= 1e-9 * np.linalg.norm(g.m)
        assert all(proj_equal(a, b, 1e-8) for a, b in zip(vs, eigenbasis(g2)))


# -- charts -----------------------------------------------------------------

def test_chart_project_examples():
    assert chart_project(STANDARD_CHART, normalize_point((3, 4, 2))) == pytest.approx((1.5, 2.0))
    c111 = AffineChart(c=(1.0, 1.0, 1.0))
    assert chart_project(c111, normalize_point((1, 1, 1))) == pytest.approx((1 / 3, 1 / 3))
    with pytest.raises(AtInfinity):
        chart_project(STANDARD_CHART, normalize_point((1, 0, 0)))


def test_chart_round_trip():
    chart = AffineChart(c=(1.0, 1.0, 1.0), basis=((1.0, -0.5, -0.5), (0.0, 0.8, -0.8)))
    for xy in [(0.1, 0.2), (-1.0, 3.0), (0.0, 0.0)]:
        assert chart_project(chart, chart_unproject(chart, xy)) == pytest.approx(xy, abs=1e-12)


# -- arcs -------------------------------------------------------------------

P, Qp = normalize_point((1, 0, 1)), normalize_point((-1, 0, 1))


def test_chord_basis_pulls_back_to_standard_pattern():
    M = chord_basis(UNIT_CIRCLE, P, Qp)
    assert np.abs(M[:, 1]) == pytest.approx([0.0, 2.0, 0.0])
    pulled = M.T @ UNIT_CIRCLE.q @ M
    beta = pulled[0, 2]
    assert pulled / beta == pytest.approx(np.array([[0, 0, 1], [0, -2, 0], [1, 0, 0]]), abs=1e-12)
    assert np.linalg.det(M) > 0


def test_sample_conic_arc_examples():
    up = sample_conic_arc(UNIT_CIRCLE, P, Qp, normalize_point((0, 1, 1)), 3)
    assert [proj_equal(a, b) for a, b in zip(up, [P, normalize_point((0, 1, 1)), Qp])] == [True] * 3
    down = sample_conic_arc(UNIT_CIRCLE, P, Qp, normalize_point((0, -1, 1)), 3)
    assert proj_equal(down[1], normalize_point((0, -1, 1)))
    two = sample_conic_arc(UNIT_CIRCLE, P, Qp, normalize_point((0, 1, 1)), 2)
    assert proj_equal(two[0], P) and proj_equal(two[1], Qp)


def test_sample_conic_arc_on_conic_and_side():
    pts = sample_conic_arc(UNIT_CIRCLE, normalize_point((1, 0, 1)),
                           normalize_point((0, 1, 1)), normalize_point((-1, 0, 1)), 200)
    assert all(UNIT_CIRCLE.contains(p) for p in pts)
    # the long way round passes through the lower half
    assert min(chart_project(STANDARD_CHART, p)[1] for p in pts) == pytest.approx(-1.0, abs=1e-3)
    mask = on_arc(UNIT_CIRCLE, normalize_point((1, 0, 1)), normalize_point((0, 1, 1)),
                  normalize_point((-1, 0, 1)), np.array([[0.6, 0.8, 1.0], [0.0, -1.0, 1.0]]))
    assert mask.tolist() == [False, True]


def test_sample_conic_arc_errors():
    with pytest.raises(EndpointsNotOnConic):
        sample_conic_arc(UNIT_CIRCLE, normalize_point((0, 0, 1)), Qp, normalize_point((0, 1, 1)), 5)
    with pytest.raises(WitnessOnWrongComponent):
        sample_conic_arc(UNIT_CIRCLE, P, Qp, normalize_point((0, 0.5, 1)), 5)
    with pytest.raises(WitnessOnWrongComponent):
        sample_conic_arc(UNIT_CIRCLE, P, Qp, P, 5)


def test_classify_repeated_versus_close_eigenvalues():
    rng = np.random.default_rng(8)
    m = random_conjugator(rng)
    for d, tag in [((4.0, 4.0, -8.0), "repeated eigenvalues"),
                   ((1.0, -0.5, -0.5), "repeated eigenvalues"),
                   ((1.0, 1.0 - 1e-5, -2.0 + 1e-5), None)]:
        g = Collineation.from_matrix(np.diag(np.exp(d)))
        res = classify(g)
        if tag:
            assert res == Other(tag)
        else:
            assert isinstance(res, PositiveHyperbolic)
            assert (res.s, res.t) == pytest.approx(d[:2], abs=1e-9)
    g = Collineation.from_matrix(m @ np.diag(np.exp([0.5, 0.5, -1.0])) @ np.linalg.inv(m))
    assert classify(g) == Other("repeated eigenvalues")
