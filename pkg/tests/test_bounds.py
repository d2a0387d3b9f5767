import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DOUBLE_RATIO_40_2, REGULAR_VOL, V3, V8
import math
from isvol import trunc
from isvol.bounds import (
    GENUS_TWO_FLAG,
    BoundReport,
    Kind,
    ManifoldDescriptor,
    amenable_equality,
    certified_Vl,
    degree_bounds,
    isv_bounds,
)
from isvol.errors import BadGenus, MissingField

ELL_2 = trunc.ell_g(2)


def test_mg_exact():
    r = isv_bounds(ManifoldDescriptor(Kind.MG, g=5))
    assert r.exact == r.lower == r.upper == 5.0
    r = isv_bounds(ManifoldDescriptor(Kind.MG, g=2))
    assert GENUS_TWO_FLAG in r.flags
    with pytest.raises(BadGenus):
        ManifoldDescriptor(Kind.MG, g=1)


def test_cusped_exact():
    r = isv_bounds(ManifoldDescriptor(Kind.CUSPED_HYPERBOLIC, volume=2 * V3))
    assert r.exact == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(MissingField):
        isv_bounds(ManifoldDescriptor(Kind.CUSPED_HYPERBOLIC))


def test_geodesic_lower_bound():
    r = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=2 * 3.226, return_length=ELL_2))
    assert r.lower == pytest.approx(2.0, abs=1e-3)
    assert r.upper is None and r.exact is None
    r = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=V8))
    assert r.lower == pytest.approx(1.0)
    r = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=7.0, return_length=1.0, complexity_upper=2))
    assert r.lower == pytest.approx(7.0 / V8)
    assert GENUS_TWO_FLAG in r.flags
    with pytest.raises(MissingField):
        isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY))


def test_generic():
    r = isv_bounds(ManifoldDescriptor(Kind.GENERIC, complexity_upper=4))
    assert r.upper == 4.0 and r.exact is None and r.notes
    with pytest.raises(MissingField):
        isv_bounds(ManifoldDescriptor(Kind.GENERIC))


def test_report_rejects_crossed_bounds():
    with pytest.raises(ValueError):
        BoundReport(3.0, 2.0)


def test_certified_constant():
    assert certified_Vl(ELL_2)[0] == pytest.approx(REGULAR_VOL[math.pi / 6], abs=1e-9)
    assert certified_Vl(ELL_2 + 0.1)[0] == pytest.approx(V8)


@pytest.mark.parametrize("g", [2, 3, 4, 7])
def test_mg_agrees_with_geodesic_bound(g):
    ell = trunc.ell_g(g)
    vol = g * trunc.regular_volume(ell)
    exact = isv_bounds(ManifoldDescriptor(Kind.MG, g=g)).exact
    lower = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=vol, return_length=ell)).lower
    assert lower == pytest.approx(exact, abs=1e-6)


@given(st.floats(0.1, 50), st.floats(0.0, 10), st.floats(0.05, 3.0))
def test_lower_bound_monotone_in_volume(v, dv, ell):
    a = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=v, return_length=ell))
    b = isv_bounds(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=v + dv, return_length=ell))
    assert b.lower >= a.lower


def test_degree_examples():
    d = degree_bounds(6, 2)
    assert (d.ideal, d.boundary) == (3, 5)
    d = degree_bounds(4, 4)
    assert (d.ideal, d.double, d.boundary) == (1, 1, 1)
    d = degree_bounds(40, 2)
    assert d.double_ratio / d.ideal_ratio == pytest.approx(DOUBLE_RATIO_40_2, abs=1e-9)
    assert d.double_ratio / d.ideal_ratio == pytest.approx(1.135, abs=0.01)
    with pytest.raises(BadGenus):
        degree_bounds(2, 3)
    with pytest.raises(BadGenus):
        degree_bounds(5, 1)


def test_ideal_bound_is_best():
    for gp in (2, 3, 4):
        for g in range(gp, 31):
            d = degree_bounds(g, gp)
            assert d.ideal_ratio <= d.double_ratio + 1e-12 and d.ideal_ratio <= d.boundary_ratio
            assert d.ideal <= d.double and d.ideal <= d.boundary
            if g > gp:
                assert d.ideal_ratio < d.double_ratio and d.ideal_ratio < d.boundary_ratio


def test_amenable_equality():
    s = amenable_equality(ManifoldDescriptor(Kind.CUSPED_HYPERBOLIC, volume=2 * V3))
    assert "vol/v3" in s and "= 2 " in s
    s = amenable_equality(ManifoldDescriptor(Kind.GEODESIC_BOUNDARY, volume=7.0))
    assert "<=" in s and "=" not in s.replace("<=", "")
    s = amenable_equality(ManifoldDescriptor(Kind.GENERIC, amenable_boundary=True))
    assert s == "isv(M) = ||M|| (amenable boundary)"
