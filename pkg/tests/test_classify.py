import pytest

from contactlab import corpus
from contactlab.classify import (AGF, ALMOST_COSYMPLECTIC, COSYMPLECTIC, KENMOTSU, LC, NONE,
                                 IndeterminatePivot, Rejected, check_lc_equations, classify,
                                 f_constraint, first_equation_residual, integrability_check,
                                 rigidity_check, solve_s, transverse_lee)
from contactlab.expr import Expr, parse
from contactlab.forms import KForm, d, d0, interior, wedge
from contactlab.structure import AlmostContactStructure, fundamental_form, validate


def E(text, s):
    return parse(text, s.chart)


def one(s, **comps):
    return KForm.one_form(s.chart, {k: E(v, s) for k, v in comps.items()})


def test_alpha_example_dim3(ex1):
    s = ex1.structure
    # -i_xi(exp(x) dx^dz) with xi = exp(-x) d_z: cofactor gives +exp(x) exp(-x) dx
    assert transverse_lee(s) == one(s, x="1")
    assert interior(s.xi, transverse_lee(s)).is_zero()
    assert first_equation_residual(s).is_zero()


def test_s_example_dim3(ex1):
    s = ex1.structure
    assert solve_s(s) == E("1/2*exp(-x)", s)


def test_s_example_dim5(ex3):
    assert solve_s(ex3.structure) == E("1/2", ex3.structure)


def test_lc_equations_known_pairs(ex1, ex3):
    s = ex1.structure
    assert check_lc_equations(s, E("1/2*exp(-x)", s), one(s, x="1")).passed
    s = ex3.structure
    assert check_lc_equations(s, E("1/2 - z1", s), one(s, z1="z1")).passed


def test_lc_equations_wrong_f(ex1):
    s = ex1.structure
    res = check_lc_equations(s, Expr.const(s.chart, 0), one(s, x="1"))
    assert res.closed.is_zero() and res.first.is_zero()
    assert not res.second.is_zero()
    assert not res.passed


def test_classify_example_dim3(ex1):
    s = ex1.structure
    rep = classify(s)
    assert rep.tags == [LC]
    assert rep.gauge == "h0"
    assert rep.f == E("1/2*exp(-x)", s)
    assert rep.omega == one(s, x="1")
    assert "omega not proportional to eta" in rep.notes
    assert rep.rigidity.alpha == one(s, x="1")
    assert not rep.rigidity.proportional
    assert not rep.rigidity.theorem_violation
    assert not rep.normal


def test_classify_example_dim5_candidate_gauge(ex3):
    s = ex3.structure
    rep = classify(s, f=E("1/2 - z1", s), omega=one(s, z1="z1"))
    assert LC in rep.tags
    assert rep.gauge == "candidate"
    assert rep.f == E("1/2 - z1", s)
    assert rep.omega == one(s, z1="z1")
    # the h=0 gauge is also closed and gives the almost Kenmotsu pair
    assert rep.alternate_gauges == [("h0", E("1/2", s), KForm.zero(s.chart, 1))]
    assert AGF in rep.tags and KENMOTSU in rep.tags
    assert rep.lam == E("-1 + z1*(1/2 - z1)", s)
    assert rep.rigidity.alpha.is_zero()
    assert rep.rigidity.h == E("z1", s)
    assert rep.rigidity.proportional


def test_classify_flat(flat5):
    s = flat5.structure
    rep = classify(s)
    assert rep.tags == [COSYMPLECTIC, ALMOST_COSYMPLECTIC, AGF, LC]
    assert rep.f.is_zero() and rep.omega.is_zero()
    assert rep.normal


def test_classify_omega_only_candidate(ex3):
    s = ex3.structure
    rep = classify(s, omega=one(s, z1="z1"))
    assert rep.f == E("1/2 - z1", s)
    assert rep.gauge_note == "candidate omega: f = s - omega(xi)"


def test_classify_is_idempotent(ex1):
    a, b = classify(ex1.structure), classify(ex1.structure)
    assert a.tags == b.tags and a.f == b.f and a.omega == b.omega
    assert a.residuals == b.residuals


def test_claimed_tags_backed_by_zero_residuals(ex1, ex3, product_rescaled, flat5):
    needed = {
        ALMOST_COSYMPLECTIC: ["d eta", "d Phi"],
        AGF: ["d eta", "d Phi - 2 s eta^Phi"],
        LC: ["d omega", "d eta - omega^eta", "d Phi - 2 f eta^Phi - 2 omega^Phi"],
    }
    for entry in (ex1, ex3, product_rescaled, flat5):
        rep = classify(entry.structure)
        assert interior(entry.structure.xi, rep.alpha).is_zero()
        for tag in rep.tags:
            for key in needed.get(tag, []):
                assert rep.residuals[key].is_zero(), (entry.name, tag, key)


def test_gauge_covariance_example_dim3(ex1):
    s = ex1.structure
    f0, om0 = E("1/2*exp(-x)", s), one(s, x="1")
    reports = []
    for c in (1, -2):
        u = E("exp(-x)", s) * c
        # side conditions for the shift
        assert wedge(d0(u) + om0.scale(u), s.eta).is_zero()
        f, om = f0 - u, om0 + s.eta.scale(u)
        assert om == one(s, x="1", z=str(c))
        assert check_lc_equations(s, f, om).passed
        rep = classify(s, f=f, omega=om)
        assert rep.has(LC)
        reports.append(rep)
        # gauge invariant s = f + omega(xi)
        assert f + interior(s.xi, om).unwrap() == solve_s(s)
    base = classify(s)
    for rep in reports:
        assert rep.alpha == base.alpha and rep.s == base.s


def test_integrability_example_dim3(ex1):
    s = ex1.structure
    rep = integrability_check(s, E("1/2*exp(-x)", s), one(s, x="1"))
    assert rep.dim3_df_equals_minus_f_omega
    assert rep.consistent
    assert rep.triple.is_zero() and rep.eta_phi_identity.is_zero()


def test_integrability_shifted_dim3_flag_only(ex1):
    s = ex1.structure
    f = E("1/2*exp(-x) - exp(-x)", s)
    om = one(s, x="1", z="1")
    rep = integrability_check(s, f, om)
    # (1/2 - c) c exp(-x) dz with c = 1
    assert rep.df_plus_f_omega == one(s, z="-1/2*exp(-x)")
    assert rep.dim3_df_equals_minus_f_omega is False
    assert rep.consistent


def test_integrability_example_dim5(ex3):
    s = ex3.structure
    rep = integrability_check(s, E("1/2 - z1", s), one(s, z1="z1"))
    assert rep.lam == E("-1 + z1/2 - z1^2", s)
    assert rep.lam_residual.is_zero() and rep.consistent


def test_integrability_f_zero(flat5):
    s = flat5.structure
    rep = integrability_check(s, Expr.const(s.chart, 0), KForm.zero(s.chart, 1))
    assert rep.lam.is_zero()


def test_f_constraint_rescaled_dim5():
    s = corpus.get("example_dim5_rescaled").structure
    fp = E("(1/2 - z1)*exp(z1^2/2)", s)
    rep = f_constraint(s, fp)
    assert rep.triple.is_zero()
    # eta' = exp(-z1^2/2) dz1, so rho = f'_z1 / exp(-z1^2/2)
    rho = fp.partial("z1") * E("exp(z1^2/2)", s)
    assert rep.rho == rho
    assert rep.rho == E("(-1 + z1/2 - z1^2)*exp(z1^2)", s)
    assert rep.rho_residual.is_zero()


def test_f_constraint_dim3_and_constant(ex1, flat5):
    s = ex1.structure
    rep = f_constraint(s, E("1/2*exp(-x)", s))
    assert rep.triple.degree == 4 and rep.triple.is_zero()
    assert rep.rho is None and "no restriction" in rep.note
    s = flat5.structure
    assert f_constraint(s, E("3", s)).rho.is_zero()


def test_rigidity_zero_omega(flat5):
    s = flat5.structure
    r = rigidity_check(s, KForm.zero(s.chart, 1))
    assert r.proportional and r.h.is_zero()


def test_eta_phi_identity_on_lc_entries(ex1, ex3, product_rescaled):
    for entry, kw in ((ex1, {}), (ex3, {"f": "1/2 - z1", "omega": {"z1": "z1"}}), (product_rescaled, {})):
        s = entry.structure
        rep = classify(s, **kw)
        assert rep.has(LC)
        eta_phi = wedge(s.eta, fundamental_form(s))
        assert d(eta_phi) == wedge(rep.omega, eta_phi).scale(3)


def test_not_lc_reports_none():
    # standard contact form eta = dz - y dx: d eta = dx^dy is not alpha^eta
    s = AlmostContactStructure.from_data(
        ("x", "y", "z"), eta={"z": "1", "x": "-y"}, xi={"z": "1"},
        phi=[["0", "-1", "0"], ["1", "0", "0"], ["0", "-y", "0"]],
        g=[["1 + y^2", "0", "-y"], ["0", "1", "0"], ["-y", "0", "1"]])
    assert validate(s).ok
    rep = classify(s)
    assert rep.tags == [NONE]
    assert not rep.classified
    assert any("no Lee form" in n for n in rep.notes)
    assert not rep.residuals["d eta - alpha^eta"].is_zero()


def test_solve_s_errors():
    s = AlmostContactStructure.from_data(
        ("x", "y", "z"), eta={"z": "1"}, xi={"z": "1"},
        phi=[["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]],
        g=[["1 + exp(x)", "0", "0"], ["0", "1 + exp(x)", "0"], ["0", "0", "1"]])
    with pytest.raises(IndeterminatePivot):
        solve_s(s)
    # candidates still let the classifier check directly
    rep = classify(s, f=0, omega={})
    assert rep.has(LC)
    # two planes scaled at different rates: i_xi d Phi is not a multiple of Phi
    phi = [["0"] * 5 for _ in range(5)]
    phi[2][0], phi[0][2], phi[3][1], phi[1][3] = "1", "-1", "1", "-1"
    g = [["0"] * 5 for _ in range(5)]
    g[0][0] = g[2][2] = "exp(z)"
    g[1][1] = g[3][3] = "exp(2*z)"
    g[4][4] = "1"
    s2 = AlmostContactStructure.from_data(("x1", "x2", "y1", "y2", "z"), eta={"z": "1"},
                                          xi={"z": "1"}, phi=phi, g=g)
    assert validate(s2).ok
    with pytest.raises(Rejected):
        solve_s(s2)
    rep = classify(s2)
    assert rep.tags == [NONE] and rep.s is None
    with pytest.raises(ValueError):
        classify(s2, gauge="bogus")
