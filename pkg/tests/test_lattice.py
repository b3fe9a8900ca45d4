import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etdyn.lattice import (
    PlanarLattice,
    RankError,
    classify_lattice,
    dual_torsion_points,
    enumerate_sublattices,
    normal_form,
    parse_lattice,
    planar_projection,
    smith_normal_form,
)


def same_subgroup(r1, r2):
    """Mutual containment by least squares, independent of the HNF code."""
    def inside(basis, v):
        A = np.array(basis, dtype=float).T
        x, *_ = np.linalg.lstsq(A, np.array(v, dtype=float), rcond=None)
        xi = np.round(x)
        return np.allclose(x, xi, atol=1e-9) and np.allclose(A @ xi, v)
    return all(inside(r1, v) for v in r2) and all(inside(r2, v) for v in r1)


def test_normal_form_examples():
    a = normal_form([(1, 0, 0), (0, 1, -1)])
    b = normal_form([(0, 1, -1), (1, 0, 0)])
    assert a == b and a.rows == ((1, 0, 0), (0, 1, -1))
    c = normal_form([(2, 0, 0), (1, 1, 0)])
    assert c.rows == ((1, 1, 0), (0, 2, 0))
    assert normal_form(c.rows) == c
    with pytest.raises(RankError):
        normal_form([(1, 2, 3), (2, 4, 6)])


def test_parse_lattice():
    assert parse_lattice("1,0,0;0,1,-1").rows == ((1, 0, 0), (0, 1, -1))
    for bad in ["1,0,0", "1,0;0,1", "a,b,c;d,e,f", "1,0,0;2,0,0"]:
        with pytest.raises(ValueError):
            parse_lattice(bad)


def test_classify_examples():
    assert classify_lattice(parse_lattice("1,0,0;0,1,0")).tag == "planar"
    ax = classify_lattice(parse_lattice("1,1,0;0,0,1"))
    assert ax.tag == "axis" and ax.axis == 1
    gen = classify_lattice(parse_lattice("1,0,0;0,1,-1"))
    assert gen.tag == "generic" and gen.n == (1, 0, 0) and gen.m == (0, -1, 1)


def test_planar_projection_examples():
    for rows, index in [(((1, 0, 0), (0, -1, 1)), 1), (((2, 0, 0), (0, 1, 1)), 2),
                        (((1, 1, 0), (1, -1, 2)), 2)]:
        case = classify_lattice(normal_form(rows))
        pl = planar_projection(case)
        assert pl.index == index
        assert same_subgroup(case.lattice.rows, (case.n, case.m))


vec = st.tuples(*[st.integers(-4, 4)] * 3)
unimod = st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda m: abs(m[0] * m[3] - m[1] * m[2]) == 1)


def _independent(a, b):
    return any(np.cross(a, b))


@settings(max_examples=150, deadline=None)
@given(vec, vec, unimod)
def test_classify_basis_independent(a, b, m):
    if not _independent(a, b):
        return
    p, q, r, s = m
    a2 = tuple(p * x + q * y for x, y in zip(a, b))
    b2 = tuple(r * x + s * y for x, y in zip(a, b))
    l1, l2 = normal_form([a, b]), normal_form([a2, b2])
    assert l1 == l2
    c = classify_lattice(l1)
    assert c.tag == classify_lattice(l2).tag
    if c.tag == "generic":
        assert c.n[2] == 0 and c.m3 >= 1
        assert np.gcd.reduce(c.n) >= 1
        assert same_subgroup((a, b), (c.n, c.m))
        # n generates the intersection with the plane: nothing smaller in it
        g = int(np.gcd.reduce([x for x in c.n if x]))
        assert g == 1 or not l1.contains(tuple(x // g for x in c.n))
    elif c.tag == "planar":
        assert a[2] == 0 and b[2] == 0
    else:
        assert l1.contains((0, 0, c.axis)) and c.axis > 0
        assert all(not l1.contains((0, 0, k)) for k in range(1, c.axis))


def test_dual_torsion_examples():
    pts = dual_torsion_points(PlanarLattice(((2, 0), (0, 2))))
    vals = sorted((round(a.real), round(b.real)) for a, b in (p.value() for p in pts))
    assert vals == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert [p.turns for p in dual_torsion_points(PlanarLattice(((1, 0), (0, 1))))] == [(0, 0)]
    pts = dual_torsion_points(PlanarLattice(((1, 1), (1, -1))))
    assert sorted(p.turns for p in pts) == [(0, 0), (Fraction(1, 2), Fraction(1, 2))]


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(-5, 5)] * 4))
def test_dual_torsion_characters(m):
    a, b, c, d = m
    det = a * d - b * c
    if det == 0:
        return
    L = PlanarLattice(((a, b), (c, d)))
    pts = dual_torsion_points(L)
    assert len(pts) == abs(det) == L.index
    assert (0, 0) in [p.turns for p in pts]
    for p in pts:
        for row in L.rows:
            assert p.pairing(row).denominator == 1


def test_smith_examples():
    assert smith_normal_form([[2, 0], [0, 2]])[1] == ((2, 0), (0, 2))
    assert smith_normal_form([[1, 1], [1, -1]])[1] == ((1, 0), (0, 2))
    assert smith_normal_form([[1, 0], [0, 1]])[1] == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [2, 4]])


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[st.integers(-9, 9)] * 4))
def test_smith_properties(m):
    A = np.array(m, dtype=object).reshape(2, 2)
    if A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0] == 0:
        return
    U, D, V = smith_normal_form(A.tolist())
    U, D, V = (np.array(x, dtype=object) for x in (U, D, V))
    assert (U.dot(D).dot(V) == A).all()
    det = lambda M: M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    assert D[0, 0] > 0 and D[1, 1] > 0 and D[1, 1] % D[0, 0] == 0
    assert D[0, 1] == 0 and D[1, 0] == 0
    assert abs(det(D)) == abs(det(A))


def _brute_force_count(bound):
    rng = range(-bound, bound + 1)
    vecs = [v for v in itertools.product(rng, repeat=3) if any(v)]
    reps = {}
    for a, b in itertools.combinations(vecs, 2):
        if not _independent(a, b):
            continue
        # bucket by the normal line and covolume, then compare by containment
        key = tuple(np.abs(np.cross(a, b)))
        bucket = reps.setdefault(key, [])
        if not any(same_subgroup((a, b), r) for r in bucket):
            bucket.append((a, b))
    return sum(len(v) for v in reps.values())


def test_enumerate_bound1():
    fam = enumerate_sublattices(1)
    rows = {l.rows for l in fam}
    assert len(rows) == len(fam)
    for want in ["1,0,0;0,1,0", "1,0,0;0,0,1", "0,1,0;0,0,1", "1,0,0;0,1,-1"]:
        assert parse_lattice(want).rows in rows
    assert len(fam) == _brute_force_count(1) == 34
    assert [l.rows for l in fam] == [l.rows for l in enumerate_sublattices(1)]


def test_enumerate_bound2_distinct():
    fam = enumerate_sublattices(2)
    assert len({l.rows for l in fam}) == len(fam) == 810
    with pytest.raises(ValueError):
        enumerate_sublattices(0)
