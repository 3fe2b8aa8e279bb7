import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.distribution import CurvatureFrame, PolyVectorField, chi_fields
from ginv.invariants import curvature_invariants
from ginv.jetgauge import (
    GaugeParam,
    JetFrame,
    curvature_components,
    gauge_action,
    gauge_family,
    gauge_vector_field,
    lagrangian_from_curvature,
    prolong_vertical,
    utiyama_check,
)
from ginv.liealg import abelian, build_standard
from ginv.poly import MultiPoly, parse_poly


def jp(text, frame):
    return parse_poly(text, frame.names())


def test_frame_layout():
    f = JetFrame(3, 2)
    assert f.num_vars == 3 + 6 + 18
    names = f.names()
    assert len(set(names)) == f.num_vars
    assert names[:4] == ["x1", "x2", "x3", "A^1_1"]
    assert f.name(f.a(2, 3)) == "A^2_3"
    assert f.name(f.jet(2, 1, 3)) == "A^2_1,3"
    assert f.jet(1, 1, 1) == 9 and f.jet(2, 3, 3) == f.num_vars - 1
    with pytest.raises(ValueError):
        f.jet(3, 1, 1)


def test_gauge_param_rejects_mixed_variable_counts():
    with pytest.raises(ValueError):
        GaugeParam((MultiPoly.zero(2), MultiPoly.zero(3)))
    g = GaugeParam.parse(["x1^2 - 1/2*x2", "0"], 2)
    assert g.to_texts() == ["x1^2 - 1/2*x2", "0"]


def test_abelian_curvature_components():
    f = JetFrame(3, 2)
    comps = curvature_components(abelian(2), 3)
    cf = CurvatureFrame(3, 2)
    assert len(comps) == 6
    assert comps[cf.index(2, 1, 3)] == jp("A^2_1,3 - A^2_3,1", f)


def test_sl2_curvature_component(sl2):
    f = JetFrame(2, 3)
    comps = curvature_components(sl2, 2)
    want = jp("A^1_1,2 - A^1_2,1 - 2*A^1_1*A^2_2 + 2*A^2_1*A^1_2", f)
    assert comps[CurvatureFrame(2, 3).index(1, 1, 2)] == want


def test_so4_component_count(so4):
    comps = curvature_components(so4, 3)
    assert len(comps) == 18
    assert all(p.degree() <= 2 for p in comps)


def test_quadratic_part_tracks_structure_constants(heis):
    cf = CurvatureFrame(3, 3)
    comps = curvature_components(heis, 3)
    for (i, j) in cf.pairs:
        assert comps[cf.index(1, i, j)].degree() == 1
        assert comps[cf.index(3, i, j)].degree() == 1
        assert comps[cf.index(2, i, j)].degree() == 2


def test_gauge_field_abelian_constant():
    g = GaugeParam.parse(["3", "-1/2"], 2)
    assert gauge_vector_field(abelian(2), 2, g).is_zero()


def test_gauge_field_heisenberg(heis):
    n = 2
    f = JetFrame(n, 3)
    g = GaugeParam.parse(["x1", "0", "0"], n)
    want = {f.a(1, 1): MultiPoly.constant(f.num_vars, -1)}
    for i in (1, 2):
        want[f.a(2, i)] = -f.var(0) * f.var(f.a(3, i))
    assert gauge_vector_field(heis, n, g) == PolyVectorField(f.num_vars, want)


def test_gauge_field_sl2_constant(sl2):
    n = 3
    f = JetFrame(n, 3)
    g = GaugeParam.parse(["0", "1", "0"], n)
    # c^1_{21} = -2 and c^3_{23} = 2; this is minus the chi_2 pattern
    want = {}
    for i in range(1, n + 1):
        want[f.a(1, i)] = -2 * f.var(f.a(1, i))
        want[f.a(3, i)] = 2 * f.var(f.a(3, i))
    assert gauge_vector_field(sl2, n, g) == PolyVectorField(f.num_vars, want)


def test_gauge_field_shape_errors(sl2):
    with pytest.raises(ValueError):
        gauge_vector_field(sl2, 2, GaugeParam.parse(["0", "1"], 2))
    with pytest.raises(ValueError):
        gauge_vector_field(sl2, 3, GaugeParam.parse(["0", "1", "0"], 2))


def test_prolong_zero_and_x_only():
    f = JetFrame(2, 1)
    assert prolong_vertical(PolyVectorField(f.num_vars), f).is_zero()
    v = f.var(0) ** 2 * f.var(1)
    pro = prolong_vertical(PolyVectorField(f.num_vars, {f.a(1, 2): v}), f)
    assert pro.coefficient(f.jet(1, 2, 1)) == 2 * f.var(0) * f.var(1)
    assert pro.coefficient(f.jet(1, 2, 2)) == f.var(0) ** 2
    assert pro.coefficient(f.jet(1, 1, 1)).is_zero()


def test_prolong_heisenberg(heis):
    n = 3
    f = JetFrame(n, 3)
    pro = gauge_action(heis, n, GaugeParam.parse(["x1", "0", "0"], n))
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            want = -f.var(0) * f.var(f.jet(3, i, k))
            if k == 1:
                want = want - f.var(f.a(3, i))
            assert pro.coefficient(f.jet(2, i, k)) == want
            assert pro.coefficient(f.jet(1, i, k)).is_zero()


def test_prolong_rejects_non_vertical():
    f = JetFrame(2, 1)
    with pytest.raises(ValueError):
        prolong_vertical(PolyVectorField(f.num_vars, {f.x(1): f.var(0)}), f)
    with pytest.raises(ValueError):
        prolong_vertical(PolyVectorField(f.num_vars, {f.jet(1, 1, 2): f.var(0)}), f)


base_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4,
).map(lambda t: MultiPoly(2, t))


@settings(max_examples=25)
@given(st.tuples(base_polys, base_polys, base_polys), st.tuples(base_polys, base_polys, base_polys))
def test_linearity_in_g(a, b):
    spec = build_standard("sl2")
    f = JetFrame(2, 3)
    ga, gb = GaugeParam(a), GaugeParam(b)
    gs = GaugeParam(tuple(p + q for p, q in zip(a, b)))
    xa, xb = gauge_vector_field(spec, 2, ga), gauge_vector_field(spec, 2, gb)
    assert gauge_vector_field(spec, 2, gs) == xa + xb
    assert prolong_vertical(xa + xb, f) == prolong_vertical(xa, f) + prolong_vertical(xb, f)


@pytest.mark.parametrize("text", ["x1^2*x2", "x1 - 5*x2^2 + 7", "1/3*x1*x2"])
def test_maxwell_case(text):
    cf = CurvatureFrame(2, 1)
    L = cf.var(1, 1, 2)
    assert utiyama_check(L, abelian(1), 2, GaugeParam.parse([text], 2)).ok


def test_negative_control_reports_residual(sl2):
    f = JetFrame(2, 3)
    L = f.var(f.a(1, 1))
    rep = utiyama_check(L, sl2, 2, GaugeParam.parse(["x1", "0", "0"], 2), on_curvature=False)
    assert not rep.ok
    # -1 from the derivative of g, plus the adjoint term c^1_{12} x1 A^2_1
    assert rep.residual == "2*x1*A^2_1 - 1"


@pytest.mark.parametrize("name", ["sl2", "so3"])
@pytest.mark.parametrize("n", [2, 3])
def test_utiyama_over_gauge_family(name, n):
    spec = build_standard(name)
    comps = curvature_components(spec, n)
    for inv in curvature_invariants(spec, n):
        for g in gauge_family(spec.m, n):
            assert utiyama_check(inv.poly, spec, n, g, components=comps).ok, inv.source


@pytest.mark.parametrize("name,n", [("so4", 2), ("so4", 3), ("sl3", 2)])
def test_utiyama_full_family_larger_algebras(name, n):
    spec = build_standard(name)
    comps = curvature_components(spec, n)
    lagrangians = [inv.poly.compose(comps) for inv in curvature_invariants(spec, n)]
    for g in gauge_family(spec.m, n):
        act = gauge_action(spec, n, g)
        assert all(act.apply(L).is_zero() for L in lagrangians), g.to_texts()


@pytest.mark.parametrize("name,n", [("sl3", 3), ("so5", 2)])
def test_utiyama_sampled_parameters(name, n):
    # the composed Lagrangians run to tens of thousands of terms; X_C is linear in g,
    # so a quadratic monomial in one component and a constant in another suffice here
    spec = build_standard(name)
    zero = MultiPoly.zero(n)
    quad = MultiPoly.variable(n, 0) * MultiPoly.variable(n, 1)
    params = [
        GaugeParam((quad,) + (zero,) * (spec.m - 1)),
        GaugeParam((zero,) * (spec.m - 1) + (MultiPoly.constant(n, 1),)),
    ]
    comps = curvature_components(spec, n)
    for inv in curvature_invariants(spec, n):
        for g in params:
            assert utiyama_check(inv.poly, spec, n, g, components=comps).ok


def test_non_invariant_curvature_functional_fails(sl2):
    cf = CurvatureFrame(2, 3)
    rep = utiyama_check(cf.var(1, 1, 2), sl2, 2, GaugeParam.parse(["0", "1", "0"], 2))
    assert not rep.ok


@pytest.mark.parametrize("name", ["sl2", "so3", "so4", "heisenberg3", "abelian:2"])
def test_adjoint_transport(name):
    # for constant g: X^(1)(R^a o Omega) = -(sum_b g^b chi_b(R^a)) o Omega
    spec = build_standard(name)
    n = 3
    cf = CurvatureFrame(n, spec.m)
    comps = curvature_components(spec, n)
    chis = chi_fields(spec, n)
    for b in range(spec.m):
        g = GaugeParam(tuple(MultiPoly.constant(n, int(a == b)) for a in range(spec.m)))
        action = gauge_action(spec, n, g)
        for k in range(cf.num_vars):
            lhs = action.apply(comps[k])
            rhs = -chis[b].apply(MultiPoly.variable(cf.num_vars, k))
            assert lhs == lagrangian_from_curvature(rhs, spec, n, comps)


def test_gauge_family_shape():
    fam = gauge_family(3, 2)
    # 1 + 2 + 3 monomials in each of 3 components
    assert len(fam) == 18
    assert all(sum(not p.is_zero() for p in g.g) == 1 for g in fam)
    assert max(p.degree() for g in fam for p in g.g) == 2


def test_lagrangian_shape_error(sl2):
    with pytest.raises(ValueError):
        lagrangian_from_curvature(MultiPoly.zero(4), sl2, 2)
