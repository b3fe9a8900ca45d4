import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etdyn.classify import (
    CYCLOTOMIC_CUTOFF,
    SystemPresentation,
    eisenstein,
    is_cpe_sublattice,
    is_ET,
    is_expanding,
    is_triangular,
    mixing_sweep,
    recheck_witness,
    zero_entropy_report,
)
from etdyn.laurent import IntLaurentPoly, parse_poly
from etdyn.lattice import parse_lattice
from etdyn.mahler import mahler_1d_jensen, mahler_2d

from conftest import system

ZETA3 = cmath.exp(2j * math.pi / 3)


def g1(text):
    return parse_poly(text, 1)


def f2(text):
    return parse_poly(text, 2)


def test_expanding_examples():
    ok, margin = is_expanding(g1("u3-2"))
    assert ok and margin == pytest.approx(1, abs=1e-12)
    ok, margin = is_expanding(g1("u3^2+2*u3+10"))
    assert ok and margin == pytest.approx(math.sqrt(10) - 1, abs=1e-12)
    assert not is_expanding(g1("u3+1"))[0]
    assert not is_expanding(g1("2*u3-1"))[0]
    assert not is_expanding(g1("(u3-2)*(u3^2+1)"))[0]
    # roots outside but not monic
    assert not is_expanding(g1("2*u3+5"))[0]


def test_triangular_examples():
    assert is_triangular(f2("1+u1+u2")) == (True, 1)
    assert is_triangular(f2("1+u1^2+u2^2")) == (True, 2)
    assert not is_triangular(f2("1+u1+u1*u2"))[0]
    assert not is_triangular(f2("2+u1+u2"))[0]
    assert is_triangular(f2("1 - u1^2 + 7*u1 + 3*u1*u2 + u2^2"))[0]


def test_is_et_examples():
    for f, g in [("1+u1+u2", "u3-2"), ("1+u1^2+u2^2", "u3-2"), ("1+u1+u2", "u3+2"),
                 ("1+u1+u2", "u3-4"), ("1+u1+u2", "u3^2+2*u3+10"), ("1+u1+u2", "u3^2+4*u3+10")]:
        rep = is_ET(system("s", f, g))
        assert rep.is_ET, (f, g)
    assert is_ET(system("helmet", "1+u1+u2", "u3-2")).summary() == "ET: yes (a=1, margin=1)"
    bad = is_ET(system("b", "1+u1+u2", "2*u3-1"))
    assert not bad.is_ET
    assert any("monic" in d for d in bad.diagnostics)
    assert any("unit disc" in d for d in bad.diagnostics)
    bad = is_ET(system("b", "1+u1+u1*u2", "u3+1"))
    assert not bad.is_ET and len(bad.diagnostics) == 2
    assert bad.summary().startswith("ET: no (")


def test_presentation_validation():
    with pytest.raises(ValueError):
        SystemPresentation("x", f2("1+u1"), g1("u3^-1-2"))
    with pytest.raises(ValueError):
        SystemPresentation("x", f2("0"), g1("u3-2"))
    with pytest.raises(ValueError):
        SystemPresentation("x", g1("u3-2"), g1("u3-2"))


def test_eisenstein():
    assert eisenstein(g1("u3^2+2*u3+10"), 2)
    assert eisenstein(g1("u3^2+4*u3+10"), 2)
    assert not eisenstein(g1("u3^2-1"), 2)
    assert not eisenstein(g1("u3^2+2*u3+4"), 2)
    with pytest.raises(ValueError):
        eisenstein(g1("u3-2"), 4)


# -- product stability of ET -------------------------------------------------


@st.composite
def triangular(draw):
    a = draw(st.integers(1, 3))
    terms = {(0, 0): draw(st.sampled_from([-1, 1])), (a, 0): draw(st.sampled_from([-1, 1])),
             (0, a): draw(st.sampled_from([-1, 1]))}
    for i in range(a + 1):
        for j in range(a + 1 - i):
            if (i, j) not in terms and draw(st.booleans()):
                terms[(i, j)] = draw(st.integers(-4, 4))
    return IntLaurentPoly(terms, 2)


@st.composite
def expanding(draw):
    p = IntLaurentPoly.constant(1, 1)
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["lin", "quad"]))
        if kind == "lin":
            k = draw(st.sampled_from([-5, -3, -2, 2, 3, 4]))
            p = p * IntLaurentPoly.from_coeffs([-k, 1])
        else:
            p = p * IntLaurentPoly.from_coeffs(draw(st.sampled_from([[10, 2, 1], [10, 4, 1], [3, 3, 1], [5, 0, 1]])))
    return p


@settings(max_examples=25, deadline=None)
@given(triangular(), triangular(), expanding(), expanding())
def test_et_product_stability(f, fp, g, gp):
    assert is_triangular(f)[0] and is_triangular(fp)[0]
    assert is_expanding(g)[0] and is_expanding(gp)[0]
    ok, a = is_triangular(f * fp)
    assert ok and a == is_triangular(f)[1] + is_triangular(fp)[1]
    assert is_expanding(g * gp)[0]


# -- mixing --------------------------------------------------------------------


def test_mixing_known_witnesses(helmet):
    rep = mixing_sweep(helmet, 2, radii=(), extra_x1=(ZETA3, 1, -2))
    assert len(rep.entries) == 124 and rep.all_certified
    by_n = {e.n: e for e in rep.entries}
    e = by_n[(0, 0, 1)]
    x1, x2, z = e.witness
    assert abs(x1 - ZETA3) < 1e-12 and abs(x2 - ZETA3 ** 2) < 1e-9 and abs(z - 2) < 1e-12
    assert e.value == pytest.approx(1.0)  # |2 - 1|
    e = by_n[(1, -1, 0)]
    assert e.value > e.error


def test_mixing_default_grid(helmet):
    rep = mixing_sweep(helmet, 2)
    assert rep.all_certified and len(rep.certified()) == 124


def test_mixing_no_false_certificates(tilted_pair):
    rep = mixing_sweep(tilted_pair[0], 1)
    for e in rep.certified():
        assert e.value - e.error > 0
        assert recheck_witness(tilted_pair[0], e, dps=40) > e.error


def test_mixing_inconclusive_fallback():
    # an empty sample leaves every exponent inconclusive
    s = SystemPresentation("t", f2("1+u1+u2"), g1("u3-2"))
    rep = mixing_sweep(s, 1, radii=(), nodes=0)
    assert rep.entries and not rep.certified()
    assert all(e.status == "inconclusive" and e.witness is None for e in rep.entries)


# -- structural reports --------------------------------------------------------


def test_zero_entropy(helmet):
    r = zero_entropy_report(helmet)
    assert r.zero_entropy and "not principal" in r.reason
    assert zero_entropy_report(system("P2", "1+u1+u2", "u3+2")).zero_entropy
    with pytest.raises(ValueError):
        zero_entropy_report(system("c", "3", "u3-2"))


def test_cpe_examples(helmet, tilted_pair):
    # m = (0,-1,1) here, so the relation is 2 w3^-1 + 1 + w1 with log M = log 2
    ok, ev = is_cpe_sublattice(helmet, parse_lattice("1,0,0;0,1,-1"))
    assert ok and ev["case"] == "generic"
    assert ev["log_mahler"] == pytest.approx(math.log(2), abs=1e-7)
    ok, ev = is_cpe_sublattice(helmet, parse_lattice("1,0,0;0,1,1"))
    assert ok and ev["log_mahler"] == pytest.approx(mahler_2d(f2("2+2*u1+u2")).value, abs=1e-7)
    ok, ev = is_cpe_sublattice(tilted_pair[0], parse_lattice("1,0,0;0,1,-1"))
    assert ok and ev["log_mahler"] == pytest.approx(math.log(10), abs=1e-6)
    ok, ev = is_cpe_sublattice(helmet, parse_lattice("1,0,0;0,1,0"))
    assert ok and ev["source"] == "f" and ev["log_mahler"] == pytest.approx(0.3230659, abs=1e-6)
    ok, ev = is_cpe_sublattice(helmet, parse_lattice("1,1,0;0,0,1"))
    assert ok and ev["source"] == "g" and ev["log_mahler"] == pytest.approx(math.log(2))


def test_kronecker_dichotomy():
    assert mahler_2d(f2("u1*(u2-1)*(u2+1)")).value < CYCLOTOMIC_CUTOFF
    assert mahler_1d_jensen(g1("2*u3-1")).value > CYCLOTOMIC_CUTOFF
    assert mahler_1d_jensen(g1("u3^4-u3^2+1")).value < CYCLOTOMIC_CUTOFF
