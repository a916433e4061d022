"""Membership in the almost generalized f-cosymplectic hierarchy.

The Lee form is not read from the structure directly.  Two contractions
with the Reeb field recover the gauge-invariant data:

* ``alpha = -i_xi(d eta)``, the part of the Lee form killed by ``xi``;
* ``s`` with ``i_xi(d Phi) = 2 s Phi``, which equals ``f + omega(xi)``.

Every claim is then re-checked by multiplying the full wedge equations
through and asserting the residual is exactly zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .expr import DivisionError, Expr, as_expr, div_exact
from .forms import KForm, d, d0, interior, wedge
from .structure import AlmostContactStructure, fundamental_form, normality_tensor

ALMOST_COSYMPLECTIC = "almost-cosymplectic"
COSYMPLECTIC = "cosymplectic"
AGF = "almost-generalized-f-cosymplectic"
KENMOTSU = "almost-Kenmotsu"
LC = "lc-almost-generalized-f-cosymplectic"
NONE = "none"

# most specific first
TAG_ORDER = (COSYMPLECTIC, ALMOST_COSYMPLECTIC, KENMOTSU, AGF, LC)


class ClassificationError(ValueError):
    pass


class IndeterminatePivot(ClassificationError):
    """No single-monomial coefficient of Phi to divide by; supply a candidate f."""


class Rejected(ClassificationError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


def transverse_lee(s: AlmostContactStructure) -> KForm:
    """``alpha = -i_xi(d eta)``; ``alpha(xi) = 0`` by construction."""
    return -interior(s.xi, d(s.eta))


def first_equation_residual(s: AlmostContactStructure, alpha: KForm | None = None) -> KForm:
    """``d eta - alpha ^ eta``; nonzero means no Lee form can exist."""
    alpha = transverse_lee(s) if alpha is None else alpha
    return d(s.eta) - wedge(alpha, s.eta)


def solve_s(s: AlmostContactStructure, Phi: KForm | None = None) -> Expr:
    """The gauge-invariant scalar ``s = f + omega(xi)``.

    Divides one coefficient of ``i_xi(d Phi)`` by twice the matching
    coefficient of ``Phi`` (the first single-monomial one in tuple order),
    then asserts ``i_xi(d Phi) = 2 s Phi`` in full.
    """
    Phi = fundamental_form(s) if Phi is None else Phi
    contracted = interior(s.xi, d(Phi))
    for idx, c in Phi.sorted_items():
        if c.as_monomial() is None:
            continue
        try:
            val = div_exact(contracted.coeff(idx), 2 * c)
        except DivisionError:
            continue
        break
    else:
        raise IndeterminatePivot("no single-monomial pivot in Phi; indeterminate, supply candidate f")
    residual = contracted - Phi.scale(2 * val)
    if not residual.is_zero():
        raise Rejected("i_xi(d Phi) is not proportional to Phi", residual)
    return val


@dataclass
class LcResiduals:
    closed: KForm   # d omega
    first: KForm    # d eta - omega ^ eta
    second: KForm   # d Phi - 2 f eta ^ Phi - 2 omega ^ Phi

    @property
    def passed(self) -> bool:
        return self.closed.is_zero() and self.first.is_zero() and self.second.is_zero()

    def as_dict(self) -> dict:
        return {
            "d omega": self.closed,
            "d eta - omega^eta": self.first,
            "d Phi - 2 f eta^Phi - 2 omega^Phi": self.second,
        }


def check_lc_equations(s: AlmostContactStructure, f, omega: KForm,
                       Phi: KForm | None = None) -> LcResiduals:
    f = as_expr(f, s.chart)
    Phi = fundamental_form(s) if Phi is None else Phi
    return LcResiduals(
        closed=d(omega),
        first=d(s.eta) - wedge(omega, s.eta),
        second=d(Phi) - wedge(s.eta, Phi).scale(2 * f) - wedge(omega, Phi).scale(2),
    )


def _along_eta(s: AlmostContactStructure, beta: KForm):
    """Coefficient ``c`` and residual of ``beta = c eta``; uses ``eta(xi) = 1``."""
    c = interior(s.xi, beta).unwrap()
    return c, beta - s.eta.scale(c)


@dataclass
class IntegrabilityReport:
    df_plus_f_omega: KForm
    triple: KForm                 # (df + f omega) ^ eta ^ Phi
    eta_phi_identity: KForm       # d(eta ^ Phi) - 3 omega ^ eta ^ Phi
    lam: Expr | None = None       # dim >= 5
    lam_residual: KForm | None = None
    dim3_df_equals_minus_f_omega: bool | None = None

    @property
    def consistent(self) -> bool:
        ok = self.triple.is_zero() and self.eta_phi_identity.is_zero()
        if self.lam_residual is not None:
            ok = ok and self.lam_residual.is_zero()
        return ok


def integrability_check(s: AlmostContactStructure, f, omega: KForm,
                        Phi: KForm | None = None) -> IntegrabilityReport:
    f = as_expr(f, s.chart)
    Phi = fundamental_form(s) if Phi is None else Phi
    eta_phi = wedge(s.eta, Phi)
    combo = d0(f) + omega.scale(f)
    rep = IntegrabilityReport(
        df_plus_f_omega=combo,
        triple=wedge(combo, eta_phi),
        eta_phi_identity=d(eta_phi) - wedge(omega, eta_phi).scale(3),
    )
    if s.dim == 3:
        # the 4-form above vanishes identically here; report the pointwise claim separately
        rep.dim3_df_equals_minus_f_omega = combo.is_zero()
    else:
        rep.lam, rep.lam_residual = _along_eta(s, combo)
    return rep


@dataclass
class FConstraintReport:
    triple: KForm                 # df ^ eta ^ Phi
    rho: Expr | None = None
    rho_residual: KForm | None = None
    note: str = ""

    @property
    def consistent(self) -> bool:
        ok = self.triple.is_zero()
        if self.rho_residual is not None:
            ok = ok and self.rho_residual.is_zero()
        return ok


def f_constraint(s: AlmostContactStructure, f, Phi: KForm | None = None) -> FConstraintReport:
    f = as_expr(f, s.chart)
    Phi = fundamental_form(s) if Phi is None else Phi
    df = d0(f)
    rep = FConstraintReport(triple=wedge(wedge(df, s.eta), Phi))
    if s.dim == 3:
        rep.note = "dimension 3: df^eta^Phi is a 4-form, no restriction on f"
    else:
        rep.rho, rep.rho_residual = _along_eta(s, df)
    return rep


@dataclass
class RigidityReport:
    alpha: KForm
    h: Expr
    proportional: bool
    theorem_violation: bool


def rigidity_check(s: AlmostContactStructure, omega: KForm) -> RigidityReport:
    """Split ``omega = alpha + h eta`` with ``h = omega(xi)``."""
    h = interior(s.xi, omega).unwrap()
    alpha = omega - s.eta.scale(h)
    proportional = alpha.is_zero()
    return RigidityReport(alpha, h, proportional, theorem_violation=s.dim >= 5 and not proportional)


@dataclass
class ClassificationReport:
    tags: list
    alpha: KForm
    s: Expr | None = None
    f: Expr | None = None
    omega: KForm | None = None
    rho: Expr | None = None
    lam: Expr | None = None
    normal: bool = False
    residuals: dict = field(default_factory=dict)
    gauge: str = ""
    gauge_note: str = ""
    notes: list = field(default_factory=list)
    rigidity: RigidityReport | None = None
    integrability: IntegrabilityReport | None = None
    f_constraint: FConstraintReport | None = None
    alternate_gauges: list = field(default_factory=list)  # [(label, f, omega)]

    def has(self, tag: str) -> bool:
        return tag in self.tags

    @property
    def classified(self) -> bool:
        return self.tags != [NONE]


def _normality_forms(s: AlmostContactStructure) -> dict:
    """Components ``N^k`` of the normality tensor as 2-forms."""
    N = normality_tensor(s)
    return {
        f"N^{name}": KForm(s.chart, 2, {ij: v.comps[k] for ij, v in N.items()})
        for k, name in enumerate(s.chart.coords)
    }


def classify(s: AlmostContactStructure, f=None, omega=None, gauge: str = "auto") -> ClassificationReport:
    """Run the classification ladder.

    ``gauge`` is ``"h0"`` (take ``omega = alpha``), ``"candidate"`` (use the
    supplied ``f`` and/or ``omega``) or ``"auto"`` (candidate when one is
    given, else h0).
    """
    if gauge not in ("auto", "h0", "candidate"):
        raise ValueError(f"unknown gauge {gauge!r}")
    ch = s.chart
    f_cand = None if f is None else as_expr(f, ch)
    if omega is not None and not isinstance(omega, KForm):
        omega = KForm.one_form(ch, omega)
    om_cand = omega
    if gauge == "auto":
        gauge = "candidate" if (f_cand is not None or om_cand is not None) else "h0"
    if gauge == "candidate" and f_cand is None and om_cand is None:
        raise ValueError("gauge 'candidate' needs a candidate f or omega")

    Phi = fundamental_form(s)
    deta = d(s.eta)
    dPhi = d(Phi)
    eta_phi = wedge(s.eta, Phi)
    alpha = transverse_lee(s)
    first = deta - wedge(alpha, s.eta)
    rep = ClassificationReport(tags=[], alpha=alpha)
    R = rep.residuals
    R["d eta"] = deta
    R["d Phi"] = dPhi
    R["d eta - alpha^eta"] = first
    tags = set()

    try:
        sval = solve_s(s, Phi)
        rep.s = sval
    except IndeterminatePivot as exc:
        sval = None
        rep.notes.append(str(exc))
    except Rejected as exc:
        sval = None
        R["i_xi d Phi - 2 s Phi"] = exc.residual
        rep.notes.append(f"rejected: {exc}")

    # (1) almost cosymplectic / cosymplectic
    if deta.is_zero() and dPhi.is_zero():
        tags.add(ALMOST_COSYMPLECTIC)
        Nforms = _normality_forms(s)
        R.update(Nforms)
        rep.normal = all(v.is_zero() for v in Nforms.values())
        if rep.normal:
            tags.add(COSYMPLECTIC)
    else:
        rep.normal = all(v.is_zero() for v in _normality_forms(s).values())

    # (2) almost generalized f-cosymplectic, f = s in the gauge omega = 0
    if deta.is_zero() and sval is not None:
        res = dPhi - eta_phi.scale(2 * sval)
        R["d Phi - 2 s eta^Phi"] = res
        if res.is_zero():
            tags.add(AGF)
            rep.f_constraint = f_constraint(s, sval, Phi)
            rep.rho = rep.f_constraint.rho
            if sval.is_constant() and not sval.is_zero():
                tags.add(KENMOTSU)
                R["d s"] = d0(sval)

    # (3) locally conformal class
    chosen = None
    if sval is not None and first.is_zero():
        second = dPhi - eta_phi.scale(2 * sval) - wedge(alpha, Phi).scale(2)
        R["d Phi - 2 s eta^Phi - 2 alpha^Phi"] = second
        if second.is_zero():
            chosen = _resolve_gauge(s, rep, gauge, sval, alpha, f_cand, om_cand)
    elif sval is None and f_cand is not None and om_cand is not None:
        rep.gauge = "candidate"
        rep.gauge_note = "no pivot for s; candidate (f, omega) checked directly"
        chosen = (f_cand, om_cand)
    elif not first.is_zero():
        rep.notes.append("d eta is not of the form alpha^eta: no Lee form exists")

    if chosen is not None:
        fc, oc = chosen
        lc = check_lc_equations(s, fc, oc, Phi)
        R.update(lc.as_dict())
        if lc.passed:
            tags.add(LC)
            rep.f, rep.omega = fc, oc
            rep.integrability = integrability_check(s, fc, oc, Phi)
            rep.lam = rep.integrability.lam
            rep.rigidity = rigidity_check(s, oc)
            if not rep.rigidity.proportional:
                rep.notes.append("omega not proportional to eta")
            if rep.rigidity.theorem_violation:
                rep.notes.append("dim >= 5 with transverse Lee part: rigidity violated")
            if not rep.integrability.consistent:
                rep.notes.append("integrability identity failed: inconsistent input")
        else:
            rep.notes.append("chosen gauge does not give a closed Lee form")

    if rep.f is None and AGF in tags:
        rep.f, rep.omega = sval, KForm.zero(ch, 1)

    rep.tags = [t for t in TAG_ORDER if t in tags] or [NONE]
    return rep


def _resolve_gauge(s, rep, gauge, sval, alpha, f_cand, om_cand):
    eta = s.eta
    h0_closed = d(alpha).is_zero()
    if gauge == "candidate":
        rep.gauge = "candidate"
        if f_cand is not None:
            omega = alpha + eta.scale(sval - f_cand)
            rep.gauge_note = "candidate f: omega = alpha + (s - f) eta"
            if om_cand is not None and om_cand != omega:
                rep.notes.append(f"supplied omega {om_cand} differs from alpha + (s - f) eta = {omega}")
                omega = om_cand
                rep.gauge_note = "candidate (f, omega) checked as supplied"
            f = f_cand
        else:
            omega = om_cand
            f = sval - interior(s.xi, om_cand).unwrap()
            rep.gauge_note = "candidate omega: f = s - omega(xi)"
        if h0_closed and (f != sval or omega != alpha):
            rep.alternate_gauges.append(("h0", sval, alpha))
            rep.notes.append(f"gauge h=0 also closed: f = {sval}, omega = {alpha}")
        return f, omega
    rep.gauge = "h0"
    rep.gauge_note = "gauge h=0: omega = alpha, f = s"
    if not h0_closed:
        rep.notes.append("d alpha != 0: gauge h=0 gives no closed Lee form; supply candidate f")
        return None
    return sval, alpha
