from fractions import Fraction

import pytest

from contactcheck.contact import (
    ContactChart,
    HomogeneousFunction,
    SectionMap,
    canonical_cocycle_check,
    check_invariance_identities,
    check_scaling_identities,
    cstructure_from_charts,
    degree_of,
    euler_field,
    evaluation_pairing,
    fibered_chart,
    hamiltonian_field,
    homogeneous_space_dim,
    hopf_chart,
    hopf_sections,
    immersion_rank,
    monomial_basis,
    pairing_with_theta,
    poisson_function,
    projective_line_cstructure,
    quotient_checks,
    reconstruct_cstructure,
    scaling_degree,
    verify_axioms,
)
from contactcheck.forms import ChartSpace, PolyForm, PolyVectorField, exterior_derivative, lie_derivative
from contactcheck.laurent import LaurentPoly
from contactcheck.linalg import rank
from contactcheck.poly import MultiPoly
from contactcheck.sampling import SeededSampler
from contactcheck.scalars import GaussianRational, gq


def all_pass(results):
    bad = [r for r in results if r.status == "fail"]
    assert not bad, bad
    return True


# -- axioms ------------------------------------------------------------------------


def test_fibered_axioms_delta_3():
    cc = fibered_chart(0, 3)
    sampler = SeededSampler(1)
    all_pass(verify_axioms(cc, [sampler.point(cc) for _ in range(4)]))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_hopf_axioms(n):
    cc = hopf_chart(n)
    assert cc.delta == 2
    sampler = SeededSampler(2)
    all_pass(verify_axioms(cc, [sampler.point(cc) for _ in range(3)]))


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        fibered_chart(0, 0)
    chart = ChartSpace(["z"], "lam")
    theta = PolyForm(chart, 1, {(0,): chart.coeff_const(1)})
    with pytest.raises(ValueError):
        ContactChart(chart, theta, 0, {"z": 0, "lam": 1})


def test_inhomogeneous_theta_rejected():
    chart = ChartSpace(["z"], "lam")
    theta = PolyForm(chart, 1, {(0,): chart.coeff_const(1) + chart.coeff_var("lam")})
    with pytest.raises(ValueError):
        ContactChart(chart, theta, 1, {"z": 0, "lam": 1})


# -- Euler fields --------------------------------------------------------------------


def test_euler_field_fibered():
    cc = fibered_chart(0, 3)
    xi = euler_field(cc)
    expected = PolyVectorField(
        cc.chart, {1: cc.chart.coeff_var("lam").scale(GaussianRational(Fraction(-1, 3)))}
    )
    assert xi == expected


@pytest.mark.parametrize("n", [0, 1])
def test_euler_field_hopf(n):
    cc = hopf_chart(n)
    xi = euler_field(cc)
    half = GaussianRational(Fraction(-1, 2))
    expected = PolyVectorField(
        cc.chart,
        {i: cc.chart.coeff_var(f"z{i}").scale(half) for i in range(2 * n + 2)},
    )
    assert xi == expected


def test_euler_field_properties():
    for cc in (hopf_chart(0), fibered_chart(1, 2), fibered_chart(0, -2)):
        xi = euler_field(cc)
        # theta(Xi) = 0 and iota_Xi dtheta = -theta
        assert pairing_with_theta(cc, xi).is_zero()
        from contactcheck.forms import interior_product

        assert interior_product(xi, exterior_derivative(cc.theta)) == -cc.theta
        # scaling invariance of the components
        from contactcheck.contact import field_scaling_degrees

        degrees = field_scaling_degrees(cc, xi)
        assert all(v == [0] for v in degrees.values())


# -- Hamiltonian fields -----------------------------------------------------------------


def test_hamiltonian_examples_hopf0():
    cc = hopf_chart(0)
    z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")
    assert hamiltonian_field(cc, z0 * z0) == PolyVectorField(cc.chart, {1: z0})
    half = GaussianRational(Fraction(1, 2))
    expected = PolyVectorField(cc.chart, {0: z0.scale(-half), 1: z1.scale(half)})
    assert hamiltonian_field(cc, z0 * z1) == expected


def test_hamiltonian_fibered_closed_form():
    # f = lam^delta g(z): X = -(lam g'/delta) dlam + g dz
    cc = fibered_chart(0, 3)
    g = MultiPoly.variable("z0") ** 2
    f = LaurentPoly("lam", {3: g})
    X = hamiltonian_field(cc, f)
    expected = PolyVectorField(
        cc.chart,
        {
            0: LaurentPoly("lam", {0: g}),
            1: LaurentPoly("lam", {1: g.diff("z0").scale(Fraction(-1, 3))}),
        },
    )
    assert X == expected


def test_hamiltonian_defining_equation_randomized():
    sampler = SeededSampler(7)
    for cc in (hopf_chart(1), fibered_chart(0, -2), fibered_chart(1, 3)):
        lo = 0 if cc.chart.fiber_var is None else -2
        for ell in range(lo, 4):
            f = sampler.homogeneous(cc, ell)
            X = hamiltonian_field(cc, f.coeff)
            from contactcheck.forms import interior_product

            df = exterior_derivative(PolyForm.function(cc.chart, f.coeff))
            assert interior_product(X, exterior_derivative(cc.theta)) == -df


def test_hamiltonian_linearity_and_i_scaling():
    cc = hopf_chart(0)
    z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")
    f, g = z0 * z0, z0 * z1
    Xf, Xg = hamiltonian_field(cc, f), hamiltonian_field(cc, g)
    assert hamiltonian_field(cc, f + g) == Xf + Xg
    i = gq(0, 1)
    assert hamiltonian_field(cc, f.scale(i)) == Xf.scale(i)


# -- homogeneity degrees -------------------------------------------------------------------


def test_degree_examples():
    h = hopf_chart(0)
    z0, z1 = h.chart.coeff_var("z0"), h.chart.coeff_var("z1")
    assert degree_of(h, z0 * z1) == 2
    f = fibered_chart(0, 3)
    lam3 = LaurentPoly.fiber_power("lam", 3)
    z = MultiPoly.variable("z0")
    assert degree_of(f, lam3 * LaurentPoly.from_poly(z * z, "lam")) == 3
    # inhomogeneous
    assert degree_of(h, z0 + z0 * z0) is None
    assert scaling_degree(h, z0 + z0 * z0) is None


def test_degree_euler_vs_scaling_agree():
    sampler = SeededSampler(13)
    for cc in (hopf_chart(0), hopf_chart(1), fibered_chart(0, 2), fibered_chart(0, -1)):
        lo = 0 if cc.chart.fiber_var is None else -2
        for ell in range(lo, 5):
            f = sampler.homogeneous(cc, ell)
            assert degree_of(cc, f.coeff) == scaling_degree(cc, f.coeff) == ell


# -- identity suites -----------------------------------------------------------------------


def test_scaling_suite_spec_pair():
    cc = hopf_chart(0)
    z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")
    f = HomogeneousFunction(cc, z0 * z0, 2)
    g = HomogeneousFunction(cc, z1 * z1, 2)
    all_pass(check_scaling_identities(cc, f, g))
    # frozen expected values for this pair
    assert poisson_function(cc, z0 * z0, z1 * z1) == z0 * z1 + z0 * z1
    bracket = hamiltonian_field(cc, z0 * z0).bracket(hamiltonian_field(cc, z1 * z1))
    assert bracket == PolyVectorField(cc.chart, {0: -z0, 1: z1})


def test_scaling_suite_equal_functions():
    cc = hopf_chart(0)
    z0 = cc.chart.coeff_var("z0")
    f = HomogeneousFunction(cc, z0 * z0, 2)
    all_pass(check_scaling_identities(cc, f, f))
    assert poisson_function(cc, f.coeff, f.coeff).is_zero()


def test_quadratic_bracket_algebra_dimension():
    """Brackets of the three quadratic fields on C^2 close on a 3-dim algebra."""
    cc = hopf_chart(0)
    z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")
    quads = [z0 * z0, z0 * z1, z1 * z1]
    fields = [hamiltonian_field(cc, q) for q in quads]

    def flat(X):
        out = []
        for i in range(2):
            comp = X.components.get(i, cc.chart.coeff_zero())
            poly = comp.parts.get(0, MultiPoly.zero(("z0", "z1"))).with_vars(("z0", "z1"))
            out.extend([poly.terms.get((1, 0), gq(0)), poly.terms.get((0, 1), gq(0))])
        return out

    basis = [flat(X) for X in fields]
    assert rank(basis) == 3
    for a in fields:
        for b in fields:
            assert rank(basis + [flat(a.bracket(b))]) == 3


def test_invariance_suite():
    sampler = SeededSampler(3)
    for cc in (hopf_chart(0), fibered_chart(0, 3), fibered_chart(1, -2)):
        samples = [sampler.homogeneous(cc, cc.delta) for _ in range(5)]
        all_pass(check_invariance_identities(cc, samples))


def test_invariance_fails_off_degree():
    """ell != delta: L_{X_f} theta = ((ell - delta)/delta) df, nonzero for nonconstant f."""
    cc = hopf_chart(0)
    z0 = cc.chart.coeff_var("z0")
    f = z0 * z0 * z0  # degree 3, delta 2
    X = hamiltonian_field(cc, f)
    lie = lie_derivative(X, cc.theta)
    df = exterior_derivative(PolyForm.function(cc.chart, f))
    assert lie == df.scale(GaussianRational(Fraction(3 - 2, 2)))
    assert not lie.is_zero()


def test_zero_function_trivially_invariant():
    cc = hopf_chart(0)
    X = hamiltonian_field(cc, cc.chart.coeff_zero())
    assert X.is_zero()
    assert lie_derivative(X, cc.theta).is_zero()


def test_poisson_jacobi_randomized():
    """Jacobi for {f, g} := dtheta(X'_f, X'_g) on seeded triples."""
    sampler = SeededSampler(17)
    for cc in (hopf_chart(0), fibered_chart(0, 2)):
        lo = 0 if cc.chart.fiber_var is None else -1
        for _ in range(4):
            f = sampler.homogeneous(cc, lo + 2).coeff
            g = sampler.homogeneous(cc, lo + 1).coeff
            h = sampler.homogeneous(cc, lo + 3).coeff
            total = (
                poisson_function(cc, poisson_function(cc, f, g), h)
                + poisson_function(cc, poisson_function(cc, g, h), f)
                + poisson_function(cc, poisson_function(cc, h, f), g)
            )
            assert total.is_zero()


# -- sections and cocycles ------------------------------------------------------------------


def test_projective_line_cocycle():
    cs = projective_line_cstructure()
    u1 = MultiPoly.variable("u1")
    from contactcheck.ratfunc import RationalFunction

    assert cs.factors[(0, 1)] == RationalFunction.from_poly(-(u1 * u1))
    all_pass(canonical_cocycle_check(cs, 0))


def test_hopf_sections_give_contact_forms():
    cc = hopf_chart(1)
    cs = reconstruct_cstructure(cc, hopf_sections(1))
    src = cs.gammas[0].chart
    expected = (
        PolyForm.d_var(src, "u2")
        + PolyForm.d_var(src, "u3").scale(src.coeff_var("u1"))
        - PolyForm.d_var(src, "u1").scale(src.coeff_var("u3"))
    )
    assert cs.gammas[0] == expected
    # gauge ratio between charts 0 and 1 is the coordinate u1, factor its square
    from contactcheck.ratfunc import RationalFunction

    assert cs.factors[(0, 1)] == cs.gauges[(0, 1)] ** 2
    all_pass(canonical_cocycle_check(cs, 1))


def test_fibered_unit_section():
    cc = fibered_chart(0, 2)
    src = ChartSpace(["z0"])
    section = SectionMap(
        "S", src, {"z0": src.coeff_var("z0"), "lam": src.coeff_const(1)}, unit_var="lam"
    )
    cs = reconstruct_cstructure(cc, [section])
    assert cs.gammas[0] == PolyForm.d_var(src, "z0")


def test_constant_gauge_sections():
    cc = fibered_chart(0, 3)
    src = ChartSpace(["z0"])
    s1 = SectionMap("S1", src, {"z0": src.coeff_var("z0"), "lam": src.coeff_const(2)}, "lam")
    s2 = SectionMap("S2", src, {"z0": src.coeff_var("z0"), "lam": src.coeff_const(1)}, "lam")
    cs = reconstruct_cstructure(cc, [s1, s2])
    from contactcheck.ratfunc import RationalFunction

    assert cs.gauges[(0, 1)] == RationalFunction.const(2)
    assert cs.factors[(0, 1)] == RationalFunction.const(8)  # c^delta


def test_bad_section_rejected():
    cc = hopf_chart(0)
    src = ChartSpace(["u1"])
    bad = SectionMap(
        "B", src, {"z0": src.coeff_const(1), "z1": src.coeff_var("u1") + src.coeff_const(1)}, "z0"
    )
    with pytest.raises(ValueError):
        reconstruct_cstructure(cc, [bad])


# -- quotient ---------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [0, 1])
def test_quotient_suite(n):
    sampler = SeededSampler(29)
    cc = hopf_chart(n)
    monomials = [sampler.monomial(cc, d, 6) for d in (0, 1, 2, 3, 4, 5, 6)]
    all_pass(quotient_checks(n, monomials))


def test_quotient_descent_classification():
    cc = hopf_chart(0)
    z0, z1 = cc.chart.coeff_var("z0"), cc.chart.coeff_var("z1")
    flip = {name: -MultiPoly.variable(name) for name in cc.chart.base_vars}
    assert (z0 * z1).substitute_base(flip) == z0 * z1  # even descends
    assert (z0).substitute_base(flip) == -z0  # odd does not
    assert len(monomial_basis(1, 2)) == 3  # even quadratics on C^2


# -- immersion ---------------------------------------------------------------------------------


def test_immersion_rank_quadratics_point():
    cc = hopf_chart(0)
    basis = monomial_basis(1, 2)
    fs = [HomogeneousFunction(cc, cc.chart.coeff_from_poly(p), 2) for p in basis]
    rep = immersion_rank(cc, fs, [{"z0": gq(1), "z1": gq(1)}])
    assert rep.rows[0]["jacobian_rank"] == 2
    assert rep.rows[0]["span_rank"] == 2
    assert rep.rows[0]["f_nonzero"]
    assert rep.all_full() and rep.consistent()


def test_immersion_single_function_deficient():
    cc = hopf_chart(0)
    z0 = cc.chart.coeff_var("z0")
    fs = [HomogeneousFunction(cc, z0 * z0, 2)]
    rep = immersion_rank(cc, fs, [{"z0": gq(1), "z1": gq(1)}])
    assert rep.rows[0]["jacobian_rank"] == 1
    assert not rep.all_full()


def test_immersion_linear_coordinates():
    cc = hopf_chart(0)
    fs = [
        HomogeneousFunction(cc, cc.chart.coeff_var("z0"), 1),
        HomogeneousFunction(cc, cc.chart.coeff_var("z1"), 1),
    ]
    rep = immersion_rank(cc, fs, [{"z0": gq(2), "z1": gq(-3)}])
    assert rep.rows[0]["jacobian_rank"] == 2


def test_immersion_validations():
    cc = hopf_chart(0)
    z0 = cc.chart.coeff_var("z0")
    with pytest.raises(ValueError):
        immersion_rank(cc, [], [])
    with pytest.raises(ValueError):
        immersion_rank(
            cc,
            [HomogeneousFunction(cc, cc.chart.coeff_const(1), 0)],
            [],
        )
    with pytest.raises(ValueError):
        immersion_rank(
            cc,
            [HomogeneousFunction(cc, z0, 1)],
            [{"z0": gq(0), "z1": gq(0)}],
        )
    fib = fibered_chart(0, 1)
    lam = LaurentPoly.fiber_power("lam", 1)
    with pytest.raises(ValueError):
        immersion_rank(
            fib,
            [HomogeneousFunction(fib, lam, 1)],
            [{"z0": gq(1), "lam": gq(0)}],
        )


# -- section spaces ------------------------------------------------------------------------------


def test_homogeneous_space_dims():
    assert homogeneous_space_dim(1, 2) == 3
    assert homogeneous_space_dim(3, 1) == 4
    assert homogeneous_space_dim(3, 2) == 10
    assert len(monomial_basis(3, 2)) == 10
    with pytest.raises(ValueError):
        homogeneous_space_dim(0, 2)
    with pytest.raises(ValueError):
        homogeneous_space_dim(2, -1)


def test_evaluation_pairing_matches_evaluate():
    basis = monomial_basis(2, 3)
    sampler = SeededSampler(31)
    point = {f"z{i}": sampler.gaussian() for i in range(3)}
    for phi in basis[:5]:
        assert evaluation_pairing(phi, point) == phi.evaluate(point)


def test_section_space_injectivity_on_samples():
    """A nonzero section has a nonzero value at some small rational point."""
    from itertools import product

    for phi_terms in [{(2, 0): gq(1), (0, 2): gq(-1)}, {(1, 1): gq(0, 1)}]:
        phi = MultiPoly(("z0", "z1"), phi_terms)
        found = False
        for a, b in product(range(-2, 3), repeat=2):
            if not phi.evaluate({"z0": gq(a), "z1": gq(b)}).is_zero():
                found = True
                break
        assert found


# -- symplectic duality ------------------------------------------------------------------------


def test_dual_field_lie_derivative_of_symplectic():
    """For any 1-form w, the dtheta-dual field Z (iota_Z dtheta = -w)
    satisfies L_Z dtheta = -dw exactly."""
    from contactcheck.contact import _solve_contraction
    from contactcheck.forms import exterior_derivative as d

    sampler = SeededSampler(43)
    cc = hopf_chart(1)
    for _ in range(4):
        terms = {}
        for i in range(4):
            terms[(i,)] = sampler.homogeneous(cc, sampler.integer(0, 3)).coeff
        omega = PolyForm(cc.chart, 1, terms)
        dual = _solve_contraction(cc, -omega)
        assert lie_derivative(dual, d(cc.theta)) == -d(omega)


def test_fibered_top_power_exact_coefficient():
    """(d theta)^(n+1) = (n+1)! * delta * lam^((n+1)delta - 1) * (dlam wedge volume)
    up to the orientation sign of the sorted coordinate order."""
    import math

    for n, delta in [(0, 3), (0, -2), (1, 2), (1, -1), (2, 1)]:
        cc = fibered_chart(n, delta)
        top = exterior_derivative(cc.theta).wedge_power(n + 1)
        key = tuple(range(cc.dim))
        assert set(top.terms) == {key}
        coeff = top.terms[key]
        expected_power = (n + 1) * delta - 1
        assert set(coeff.parts) == {expected_power}
        value = coeff.parts[expected_power].constant_value()
        assert value.norm_sq() == (math.factorial(n + 1) * abs(delta)) ** 2


def test_single_chart_cocycle_vacuous():
    src = ChartSpace(["u1"])
    gamma = PolyForm.d_var(src, "u1")
    from contactcheck.contact import cstructure_from_charts

    cs = cstructure_from_charts(["only"], [gamma], {}, 0)
    assert canonical_cocycle_check(cs, 0) == []


def test_laurent_rational_bridge_round_trips():
    """The solver's Laurent <-> rational-function lift is exact both ways."""
    from contactcheck.contact import _laurent_to_rf, _rf_to_laurent

    sampler = SeededSampler(314)
    for cc in (hopf_chart(1), fibered_chart(1, -2), fibered_chart(0, 3)):
        lo = 0 if cc.chart.fiber_var is None else -2
        for ell in range(lo, 4):
            f = sampler.homogeneous(cc, ell).coeff
            assert _rf_to_laurent(cc, _laurent_to_rf(cc, f)) == f
