"""Almost contact metric structures, their axioms, the fundamental 2-form
and the normality tensor."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .expr import Chart, Expr, as_expr
from .forms import KForm, VectorField, apply, d, form_power, interior, lie_bracket, wedge

DEFAULT_SAMPLES = 5
DEFAULT_BOX = (0.1, 1.0)


def sample_count() -> int:
    raw = os.environ.get("CONTACTLAB_SAMPLES")
    if raw is None:
        return DEFAULT_SAMPLES
    n = int(raw)
    if n < 1:
        raise ValueError("CONTACTLAB_SAMPLES must be positive")
    return n


def _matrix(chart: Chart, rows, name: str):
    rows = [list(r) for r in rows]
    if len(rows) != chart.dim or any(len(r) != chart.dim for r in rows):
        raise ValueError(f"{name} must be a {chart.dim}x{chart.dim} matrix")
    return tuple(tuple(as_expr(v, chart) for v in r) for r in rows)


@dataclass(frozen=True)
class AlmostContactStructure:
    """``(phi, xi, eta, g)`` on one chart.

    ``phi`` uses the column convention ``phi(d_j) = sum_i phi[i][j] d_i``.
    ``domain`` is a box of per-coordinate ``(lo, hi)`` ranges used only to
    draw numeric sample points; ``samples`` overrides it with explicit points.
    """

    chart: Chart
    phi: tuple
    xi: VectorField
    eta: KForm
    g: tuple
    domain: tuple | None = None
    samples: tuple | None = None

    def __post_init__(self):
        ch = self.chart
        object.__setattr__(self, "phi", _matrix(ch, self.phi, "phi"))
        object.__setattr__(self, "g", _matrix(ch, self.g, "g"))
        if self.xi.chart != ch or self.eta.chart != ch:
            raise ValueError("xi and eta must live on the structure's chart")
        if self.eta.degree != 1:
            raise ValueError("eta must be a 1-form")
        if ch.dim % 2 == 0:
            raise ValueError(f"almost contact structures need odd dimension, got {ch.dim}")
        if self.domain is not None:
            dom = tuple((float(lo), float(hi)) for lo, hi in self.domain)
            if len(dom) != ch.dim:
                raise ValueError("domain box must have one range per coordinate")
            object.__setattr__(self, "domain", dom)
        if self.samples is not None:
            pts = tuple(tuple(float(v) for v in p) for p in self.samples)
            if any(len(p) != ch.dim for p in pts):
                raise ValueError("sample points must match the chart dimension")
            object.__setattr__(self, "samples", pts)

    @classmethod
    def from_data(cls, coords: Sequence[str], *, eta: Mapping, xi: Mapping, phi, g,
                  domain=None, samples=None) -> "AlmostContactStructure":
        """Build from coordinate names, expression strings (or Exprs) and
        nested lists, the way structure files spell it."""
        chart = coords if isinstance(coords, Chart) else Chart(tuple(coords))
        return cls(
            chart=chart,
            phi=phi,
            xi=VectorField.from_map(chart, xi),
            eta=KForm.one_form(chart, eta),
            g=g,
            domain=domain,
            samples=samples,
        )

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def n(self) -> int:
        return (self.chart.dim - 1) // 2

    def phi_of(self, X: VectorField) -> VectorField:
        dim = self.dim
        return VectorField(self.chart, [
            sum((self.phi[i][j] * X.comps[j] for j in range(dim) if X.comps[j]),
                Expr.const(self.chart, 0))
            for i in range(dim)
        ])

    def metric(self, X: VectorField, Y: VectorField) -> Expr:
        out = Expr.const(self.chart, 0)
        for i in range(self.dim):
            if not X.comps[i]:
                continue
            for j in range(self.dim):
                if Y.comps[j] and self.g[i][j]:
                    out = out + X.comps[i] * self.g[i][j] * Y.comps[j]
        return out

    def basis(self, i: int) -> VectorField:
        return VectorField.coordinate(self.chart, i)

    def sample_points(self, count: int | None = None) -> list:
        if self.samples:
            return [list(p) for p in self.samples]
        count = sample_count() if count is None else count
        box = self.domain or tuple(DEFAULT_BOX for _ in range(self.dim))
        rng = np.random.default_rng(0)
        lo = np.array([b[0] for b in box])
        hi = np.array([b[1] for b in box])
        return [list(lo + (hi - lo) * rng.random(self.dim)) for _ in range(count)]


@dataclass
class AxiomCheck:
    name: str
    residual: dict = field(default_factory=dict)  # label -> nonzero Expr

    @property
    def passed(self) -> bool:
        return not self.residual


@dataclass
class SampleCheck:
    point: list
    leading_minors: list
    positive_definite: bool
    phi_rank: int


@dataclass
class ValidationReport:
    checks: list
    samples: list
    expected_rank: int

    @property
    def ok(self) -> bool:
        """All symbolic axioms hold (numeric checks are advisory)."""
        return all(c.passed for c in self.checks)

    @property
    def numeric_ok(self) -> bool:
        return all(s.positive_definite and s.phi_rank == self.expected_rank for s in self.samples)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _nonzero(entries) -> dict:
    return {k: v for k, v in entries if not v.is_zero()}


def validate(s: AlmostContactStructure, count: int | None = None) -> ValidationReport:
    ch, dim, n = s.chart, s.dim, s.n
    phi, g = s.phi, s.g
    eta = s.eta.components()
    xi = s.xi.comps
    zero = Expr.const(ch, 0)

    def mm(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(dim) if a[i][k] and b[k][j]), zero)
                 for j in range(dim)] for i in range(dim)]

    checks = []
    phi2 = mm(phi, phi)
    checks.append(AxiomCheck("phi_squared", _nonzero(
        (f"phi^2 + Id - eta(x)xi [{i}][{j}]", phi2[i][j] + (1 if i == j else 0) - xi[i] * eta[j])
        for i in range(dim) for j in range(dim))))
    eta_xi = sum((e * x for e, x in zip(eta, xi)), zero)
    checks.append(AxiomCheck("eta_xi", _nonzero([("eta(xi) - 1", eta_xi - 1)])))
    checks.append(AxiomCheck("phi_xi", _nonzero(
        (f"phi(xi)[{i}]", sum((phi[i][j] * xi[j] for j in range(dim)), zero)) for i in range(dim))))
    checks.append(AxiomCheck("eta_phi", _nonzero(
        (f"eta(phi(d_{ch.coords[j]}))", sum((eta[i] * phi[i][j] for i in range(dim)), zero))
        for j in range(dim))))
    checks.append(AxiomCheck("g_symmetric", _nonzero(
        (f"g[{i}][{j}] - g[{j}][{i}]", g[i][j] - g[j][i])
        for i in range(dim) for j in range(i + 1, dim))))
    phiT = [[phi[j][i] for j in range(dim)] for i in range(dim)]
    gphi = mm(mm(phiT, g), phi)
    checks.append(AxiomCheck("g_compatible", _nonzero(
        (f"g(phi d_{ch.coords[i]}, phi d_{ch.coords[j]}) - g + eta eta",
         gphi[i][j] - g[i][j] + eta[i] * eta[j])
        for i in range(dim) for j in range(dim))))
    checks.append(AxiomCheck("eta_metric_dual", _nonzero(
        (f"g(xi, d_{ch.coords[j]}) - eta_{ch.coords[j]}",
         sum((xi[i] * g[i][j] for i in range(dim)), zero) - eta[j])
        for j in range(dim))))
    # a vanishing volume form is the failure, so its residual is the zero Expr
    vol = volume_form(s)
    vol_check = AxiomCheck("volume_nonzero")
    if vol.is_zero():
        vol_check.residual["eta^Phi^n"] = Expr.const(ch, 0)
    checks.append(vol_check)
    samples = _numeric_checks(s, count)
    return ValidationReport(checks, samples, 2 * n)


def _numeric_checks(s: AlmostContactStructure, count) -> list:
    out = []
    for pt in s.sample_points(count):
        G = np.array([[e.eval(pt) for e in row] for row in s.g])
        P = np.array([[e.eval(pt) for e in row] for row in s.phi])
        minors = [float(np.linalg.det(G[:k, :k])) for k in range(1, s.dim + 1)]
        out.append(SampleCheck(
            point=[float(v) for v in pt],
            leading_minors=minors,
            positive_definite=all(m > 0 for m in minors),
            phi_rank=int(np.linalg.matrix_rank(P)),
        ))
    return out


def fundamental_form(s: AlmostContactStructure) -> KForm:
    """``Phi(X, Y) = g(X, phi Y)`` as a 2-form."""
    dim = s.dim
    zero = Expr.const(s.chart, 0)
    gphi = [[sum((s.g[i][k] * s.phi[k][j] for k in range(dim)), zero) for j in range(dim)]
            for i in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            if not (gphi[i][j] + gphi[j][i]).is_zero():
                raise ValueError(f"Phi is not antisymmetric at ({i}, {j}); structure is invalid")
    Phi = KForm(s.chart, 2, {(i, j): gphi[i][j] for i in range(dim) for j in range(i + 1, dim)})
    if not interior(s.xi, Phi).is_zero():
        raise ValueError("i_xi Phi != 0; structure is invalid")
    return Phi


def volume_form(s: AlmostContactStructure) -> KForm:
    """``eta ^ Phi^n`` (degree ``dim``)."""
    try:
        Phi = fundamental_form(s)
    except ValueError:
        return KForm.zero(s.chart, s.dim)
    return wedge(s.eta, form_power(Phi, s.n))


def nijenhuis(s: AlmostContactStructure) -> dict:
    """``[phi, phi](d_i, d_j)`` for all ``i < j``, from the bracket formula."""
    dim = s.dim
    out = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            X, Y = s.basis(i), s.basis(j)
            pX, pY = s.phi_of(X), s.phi_of(Y)
            t = s.phi_of(s.phi_of(lie_bracket(X, Y)))
            t = t + lie_bracket(pX, pY)
            t = t - s.phi_of(lie_bracket(pX, Y))
            t = t - s.phi_of(lie_bracket(X, pY))
            out[(i, j)] = t
    return out


def normality_tensor(s: AlmostContactStructure) -> dict:
    """``N = [phi, phi] + 2 d(eta) (x) xi`` on pairs ``i < j``."""
    deta = d(s.eta)
    out = {}
    for (i, j), v in nijenhuis(s).items():
        c = apply(deta, s.basis(i), s.basis(j))
        out[(i, j)] = v + s.xi.scale(2 * c)
    return out


def is_normal(s: AlmostContactStructure) -> bool:
    return all(v.is_zero() for v in normality_tensor(s).values())
