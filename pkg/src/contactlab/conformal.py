"""Conformal rescaling ``(phi, e^s xi, e^-s eta, e^-2s g)`` by a polynomial ``s``."""
from __future__ import annotations

from dataclasses import dataclass

from .classify import check_lc_equations
from .expr import Expr, as_expr
from .forms import KForm, d, d0, wedge
from .structure import AlmostContactStructure, fundamental_form, validate


class NonPolynomialSigma(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ConformalChange:
    sigma: Expr

    def __post_init__(self):
        if not self.sigma.is_polynomial():
            raise NonPolynomialSigma(f"sigma must be an exp-free polynomial, got {self.sigma}")

    @classmethod
    def of(cls, sigma, chart) -> "ConformalChange":
        return cls(as_expr(sigma, chart))

    def factor(self, k: int) -> Expr:
        """``exp(k * sigma)``."""
        return (self.sigma * k).exp()


def rescale(s: AlmostContactStructure, c, check: bool = True) -> AlmostContactStructure:
    if not isinstance(c, ConformalChange):
        c = ConformalChange.of(c, s.chart)
    up, down, down2 = c.factor(1), c.factor(-1), c.factor(-2)
    out = AlmostContactStructure(
        chart=s.chart,
        phi=s.phi,
        xi=s.xi.scale(up),
        eta=s.eta.scale(down),
        g=[[down2 * v for v in row] for row in s.g],
        domain=s.domain,
        samples=s.samples,
    )
    if check:
        rep = validate(out, count=1)
        if not rep.ok:
            bad = ", ".join(ch.name for ch in rep.failures())
            raise PreconditionError(f"rescaled structure fails {bad}; input was not a valid structure")
        if fundamental_form(out) != fundamental_form(s).scale(down2):
            raise AssertionError("Phi' != exp(-2 sigma) Phi")
    return out


def transform_pair(f, omega: KForm, c: ConformalChange):
    """``(f, omega)`` on ``s`` becomes ``(f e^sigma, omega - d sigma)`` on the rescaled structure."""
    f = as_expr(f, omega.chart)
    return f * c.factor(1), omega - d0(c.sigma)


@dataclass
class CorollaryReport:
    case: str                # "f=0", "f constant" or "general"
    structure: AlmostContactStructure
    f_prime: Expr            # f exp(sigma)
    d_eta_prime: KForm
    d_phi_residual: KForm    # d Phi' - 2 f e^sigma eta' ^ Phi'

    @property
    def passed(self) -> bool:
        return self.d_eta_prime.is_zero() and self.d_phi_residual.is_zero()

    @property
    def almost_cosymplectic(self) -> bool:
        return self.case == "f=0" and self.passed


def verify_corollary(s: AlmostContactStructure, c, f) -> CorollaryReport:
    """Rescale by ``sigma`` where ``omega = d sigma`` and check the rescaled equations."""
    if not isinstance(c, ConformalChange):
        c = ConformalChange.of(c, s.chart)
    f = as_expr(f, s.chart)
    pre = check_lc_equations(s, f, d0(c.sigma))
    if not pre.passed:
        raise PreconditionError("(f, d sigma) does not satisfy the Lee-form equations on the input")
    out = rescale(s, c)
    Phi2 = fundamental_form(out)
    f_prime = f * c.factor(1)
    if f.is_zero():
        case = "f=0"
    elif f.is_constant():
        case = "f constant"
    else:
        case = "general"
    return CorollaryReport(
        case=case,
        structure=out,
        f_prime=f_prime,
        d_eta_prime=d(out.eta),
        d_phi_residual=d(Phi2) - wedge(out.eta, Phi2).scale(2 * f_prime),
    )
