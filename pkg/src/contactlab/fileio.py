"""JSON structure files and report serialization."""
from __future__ import annotations

import json
from typing import Any

from .classify import ClassificationReport
from .corpus import Candidates, CorpusEntry
from .expr import Chart, Expr, ParseError, parse
from .forms import KForm, VectorField
from .structure import AlmostContactStructure, ValidationReport


class SchemaError(ValueError):
    """Structure file does not match the schema; ``where`` names the field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def _parse_at(text, chart: Chart, where: str) -> Expr:
    if not isinstance(text, str):
        raise SchemaError(f"expression string expected, got {type(text).__name__}", where)
    try:
        return parse(text, chart)
    except ParseError as exc:
        raise SchemaError(f"{exc.message} at position {exc.pos} in {text!r}", where) from exc


def _parse_map(obj, chart: Chart, where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError("object mapping coordinate names to expressions expected", where)
    out = {}
    for k, v in obj.items():
        if k not in chart.coords:
            raise SchemaError(f"unknown coordinate {k!r}", where)
        out[k] = _parse_at(v, chart, f"{where}.{k}")
    return out


def _parse_matrix(obj, chart: Chart, where: str) -> list:
    dim = chart.dim
    if not isinstance(obj, list) or len(obj) != dim or any(not isinstance(r, list) or len(r) != dim for r in obj):
        raise SchemaError(f"{dim}x{dim} array expected", where)
    return [[_parse_at(v, chart, f"{where}[{i}][{j}]") for j, v in enumerate(row)]
            for i, row in enumerate(obj)]


def structure_from_dict(doc: dict):
    """``(structure, candidates, name)`` from a decoded structure document."""
    if not isinstance(doc, dict):
        raise SchemaError("top-level object expected")
    for key in ("dim", "coords", "eta", "xi", "phi", "g"):
        if key not in doc:
            raise SchemaError("missing required field", key)
    coords = doc["coords"]
    if not isinstance(coords, list) or not all(isinstance(c, str) for c in coords):
        raise SchemaError("list of coordinate names expected", "coords")
    try:
        chart = Chart(tuple(coords))
    except ValueError as exc:
        raise SchemaError(str(exc), "coords") from exc
    if doc["dim"] != chart.dim:
        raise SchemaError(f"dim {doc['dim']} does not match {chart.dim} coordinates", "dim")
    eta = _parse_map(doc["eta"], chart, "eta")
    xi = _parse_map(doc["xi"], chart, "xi")
    phi = _parse_matrix(doc["phi"], chart, "phi")
    g = _parse_matrix(doc["g"], chart, "g")
    samples = doc.get("samples")
    if samples is not None:
        if not isinstance(samples, list) or any(
                not isinstance(p, list) or len(p) != chart.dim for p in samples):
            raise SchemaError(f"list of length-{chart.dim} float vectors expected", "samples")
    domain = doc.get("domain")
    try:
        s = AlmostContactStructure.from_data(chart, eta=eta, xi=xi, phi=phi, g=g,
                                             domain=domain, samples=samples)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    cand = Candidates()
    if "candidates" in doc:
        c = doc["candidates"]
        if not isinstance(c, dict):
            raise SchemaError("object expected", "candidates")
        f = _parse_at(c["f"], chart, "candidates.f") if "f" in c else None
        om = KForm.one_form(chart, _parse_map(c["omega"], chart, "candidates.omega")) if "omega" in c else None
        sig = _parse_at(c["sigma"], chart, "candidates.sigma") if "sigma" in c else None
        cand = Candidates(f, om, sig)
    return s, cand, doc.get("name")


def load_structure(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    return structure_from_dict(doc)


def form_to_map(form: KForm) -> dict:
    names = form.chart.coords
    return {names[i]: str(c) for (i,), c in form.sorted_items()}


def field_to_map(X: VectorField) -> dict:
    return {name: str(c) for name, c in zip(X.chart.coords, X.comps) if c}


def structure_to_dict(s: AlmostContactStructure, candidates: Candidates | None = None,
                      name: str | None = None) -> dict:
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    doc["dim"] = s.dim
    doc["coords"] = list(s.chart.coords)
    doc["eta"] = form_to_map(s.eta)
    doc["xi"] = field_to_map(s.xi)
    doc["phi"] = [[str(v) for v in row] for row in s.phi]
    doc["g"] = [[str(v) for v in row] for row in s.g]
    if candidates is not None and any(v is not None for v in (candidates.f, candidates.omega, candidates.sigma)):
        c = {}
        if candidates.f is not None:
            c["f"] = str(candidates.f)
        if candidates.omega is not None:
            c["omega"] = form_to_map(candidates.omega)
        if candidates.sigma is not None:
            c["sigma"] = str(candidates.sigma)
        doc["candidates"] = c
    if s.domain is not None:
        doc["domain"] = [list(r) for r in s.domain]
    if s.samples is not None:
        doc["samples"] = [list(p) for p in s.samples]
    return doc


def entry_to_dict(entry: CorpusEntry) -> dict:
    return structure_to_dict(entry.structure, entry.candidates, entry.name)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# reports

def _s(v):
    return None if v is None else str(v)


def validation_to_dict(rep: ValidationReport) -> dict:
    return {
        "ok": rep.ok,
        "numeric_ok": rep.numeric_ok,
        "axioms": {
            c.name: {"pass": c.passed, "residual": {k: str(v) for k, v in c.residual.items()}}
            for c in rep.checks
        },
        "samples": [
            {"point": p.point, "leading_minors": p.leading_minors,
             "positive_definite": p.positive_definite, "phi_rank": p.phi_rank}
            for p in rep.samples
        ],
        "expected_phi_rank": rep.expected_rank,
    }


def classification_to_dict(rep: ClassificationReport) -> dict:
    out: dict[str, Any] = {
        "tags": list(rep.tags),
        "gauge": rep.gauge,
        "gauge_note": rep.gauge_note,
        "alpha": str(rep.alpha),
        "s": _s(rep.s),
        "f": _s(rep.f),
        "omega": _s(rep.omega),
        "rho": _s(rep.rho),
        "lambda": _s(rep.lam),
        "normal": rep.normal,
        "normality_convention": "N = [phi,phi] + 2 d(eta) (x) xi with non-halved d",
        "residuals": {k: {"zero": v.is_zero(), "value": str(v)} for k, v in rep.residuals.items()},
        "notes": list(rep.notes),
        "alternate_gauges": [{"gauge": g, "f": str(f), "omega": str(o)} for g, f, o in rep.alternate_gauges],
    }
    if rep.rigidity is not None:
        r = rep.rigidity
        out["rigidity"] = {"alpha": str(r.alpha), "h": str(r.h), "proportional": r.proportional,
                           "theorem_violation": r.theorem_violation}
    if rep.integrability is not None:
        i = rep.integrability
        out["integrability"] = {
            "df_plus_f_omega": str(i.df_plus_f_omega),
            "triple_zero": i.triple.is_zero(),
            "eta_phi_identity_zero": i.eta_phi_identity.is_zero(),
            "lambda": _s(i.lam),
            "lambda_residual_zero": None if i.lam_residual is None else i.lam_residual.is_zero(),
            "dim3_df_equals_minus_f_omega": i.dim3_df_equals_minus_f_omega,
            "consistent": i.consistent,
        }
    if rep.f_constraint is not None:
        c = rep.f_constraint
        out["f_constraint"] = {
            "triple_zero": c.triple.is_zero(), "rho": _s(c.rho),
            "rho_residual_zero": None if c.rho_residual is None else c.rho_residual.is_zero(),
            "note": c.note,
        }
    return out


def render_validation(rep: ValidationReport) -> str:
    lines = []
    for c in rep.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}")
        for k, v in c.residual.items():
            lines.append(f"      {k} = {v}")
    pd = sum(p.positive_definite for p in rep.samples)
    rk = sum(p.phi_rank == rep.expected_rank for p in rep.samples)
    lines.append(f"numeric: g positive definite at {pd}/{len(rep.samples)} samples, "
                 f"rank phi = {rep.expected_rank} at {rk}/{len(rep.samples)}")
    if not rep.numeric_ok:
        lines.append("WARNING: numeric spot checks failed")
    return "\n".join(lines)


def render_classification(rep: ClassificationReport) -> str:
    lines = [f"tags: {', '.join(rep.tags)}"]
    if rep.gauge:
        lines.append(f"gauge: {rep.gauge} ({rep.gauge_note})")
    lines.append(f"alpha (transverse Lee part): {rep.alpha}")
    lines.append(f"s = f + omega(xi): {_s(rep.s)}")
    if rep.f is not None:
        lines.append(f"f: {rep.f}")
    if rep.omega is not None:
        lines.append(f"omega: {rep.omega}")
    if rep.rho is not None:
        lines.append(f"rho (df = rho eta): {rep.rho}")
    if rep.lam is not None:
        lines.append(f"lambda (df + f omega = lambda eta): {rep.lam}")
    lines.append(f"normal: {'yes' if rep.normal else 'no'} (non-halved d eta convention)")
    if rep.rigidity is not None:
        r = rep.rigidity
        lines.append(f"rigidity: omega = alpha + h eta with alpha = {r.alpha}, h = {r.h}; "
                     f"proportional: {'yes' if r.proportional else 'no'}")
    for note in rep.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
