"""Built-in structures: the three worked examples, their rescalings and a
flat cosymplectic baseline.  Each entry carries candidate ``(f, omega, sigma)``
data and an ``expected`` block that :func:`verify_entry` reproduces."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .classify import AGF, ALMOST_COSYMPLECTIC, COSYMPLECTIC, KENMOTSU, LC, ClassificationReport, classify
from .conformal import rescale, transform_pair, ConformalChange
from .expr import Chart, Expr, as_expr
from .forms import KForm
from .structure import AlmostContactStructure

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Candidates:
    f: Expr | None = None
    omega: KForm | None = None
    sigma: Expr | None = None


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    structure: AlmostContactStructure
    candidates: Candidates = Candidates()
    expected: dict = field(default_factory=dict)
    notes: str = ""


def _zeros(dim):
    return [["0"] * dim for _ in range(dim)]


def example_dim3() -> CorpusEntry:
    coords = ("x", "y", "z")
    phi = _zeros(3)
    phi[1][0] = "1"    # phi d_x = d_y
    phi[0][1] = "-1"   # phi d_y = -d_x
    g = [["exp(z)", "0", "0"], ["0", "exp(z)", "0"], ["0", "0", "exp(2*x)"]]
    s = AlmostContactStructure.from_data(
        coords, eta={"z": "exp(x)"}, xi={"z": "exp(-x)"}, phi=phi, g=g,
        domain=[(0.1, 2.0), (-1.0, 1.0), (0.1, 2.0)],
    )
    ch = s.chart
    return CorpusEntry(
        name="example_dim3",
        structure=s,
        candidates=Candidates(as_expr("1/2*exp(-x)", ch), KForm.one_form(ch, {"x": "1"}),
                              as_expr("x", ch)),
        expected={
            "tags": [LC],
            "f": "1/2*exp(-x)",
            "omega": {"x": "1"},
            "alpha": {"x": "1"},
            "s": "1/2*exp(-x)",
            "Phi": "-exp(z) dx^dy",
            "proportional": False,
            "normal": False,
        },
        notes="3-dimensional example, chart x != 0, z != 0 kept as a sample box only",
    )


def _product_structure():
    coords = ("theta", "x1", "y1", "x2", "y2")
    phi = _zeros(5)
    # J d_x = -d_y, J d_y = d_x, so that Phi = dx1^dy1 + dx2^dy2
    phi[2][1], phi[1][2] = "-1", "1"
    phi[4][3], phi[3][4] = "-1", "1"
    g = [["1" if i == j else "0" for j in range(5)] for i in range(5)]
    return AlmostContactStructure.from_data(
        coords, eta={"theta": "1"}, xi={"theta": "1"}, phi=phi, g=g,
        domain=[(-1.0, 1.0)] * 5,
    )


def example_product(rescaled: bool = False) -> CorpusEntry:
    """Circle times flat R^4 (universal-cover chart in theta)."""
    s = _product_structure()
    ch = s.chart
    zero_form = KForm.zero(ch, 1)
    if not rescaled:
        return CorpusEntry(
            name="product",
            structure=s,
            candidates=Candidates(Expr.const(ch, 0), zero_form, as_expr("theta", ch)),
            expected={
                "tags": [COSYMPLECTIC, ALMOST_COSYMPLECTIC, AGF, LC],
                "f": "0", "omega": {}, "alpha": {}, "s": "0",
                "Phi": "dx1^dy1 + dx2^dy2",
                "normal": True, "proportional": True,
            },
            notes="cosymplectic product; sigma is the rescaling applied to get 'product_rescaled'",
        )
    c = ConformalChange.of("theta", ch)
    s2 = rescale(s, c)
    f2, om2 = transform_pair(Expr.const(ch, 0), zero_form, c)
    return CorpusEntry(
        name="product_rescaled",
        structure=s2,
        candidates=Candidates(f2, om2, as_expr("-theta", ch)),
        expected={
            "tags": [AGF, LC],
            "f": "0", "omega": {"theta": "-1"}, "alpha": {}, "s": "-exp(theta)",
            "h": "-exp(theta)",
            "proportional": True,
        },
        notes="Lee form -d theta is closed but not exact on the circle (annotation, not computed)",
    )


def _antiderivative(b: Expr, coord: str) -> Expr:
    i = b.chart.index(coord)
    terms = {}
    for (m, p), c in b.items():
        k = m[i]
        terms[(m[:i] + (k + 1,) + m[i + 1:], p)] = c / (k + 1)
    return Expr(b.chart, terms)


def example_dim5(b="z1") -> CorpusEntry:
    """5-dimensional example with ``b`` a polynomial in ``z1`` only."""
    coords = ("x", "y1", "y2", "z1", "z2")
    ch = Chart(coords)
    b = as_expr(b, ch)
    if any(b.depends_on(c) for c in coords if c != "z1"):
        raise ValueError(f"b must depend on z1 only, got {b}")
    if not b.is_polynomial():
        raise ValueError("b must be a polynomial so that its antiderivative stays in the ring")
    if b.is_constant():
        raise ValueError("b must be non-constant")
    X, Y1, Y2, Z1, Z2 = range(5)
    phi = _zeros(5)
    phi[Y1][X] = "1"     # phi d_x = d_y1
    phi[X][Y1] = "-1"    # phi d_y1 = -d_x
    phi[Y2][Z2] = "1"    # phi d_z2 = d_y2
    phi[Z2][Y2] = "-1"   # phi d_y2 = -d_z2
    g = _zeros(5)
    for i in (X, Y1, Y2, Z2):
        g[i][i] = "exp(z1)"
    g[Z1][Z1] = "1"
    s = AlmostContactStructure.from_data(
        ch, eta={"z1": "1"}, xi={"z1": "1"}, phi=phi, g=g,
        domain=[(-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (0.1, 1.5), (-1.0, 1.0)],
    )
    f = Expr.const(ch, HALF) - b
    db = b.partial("z1")
    lam = -db + b * (Expr.const(ch, HALF) - b)
    return CorpusEntry(
        name="example_dim5",
        structure=s,
        candidates=Candidates(f, KForm.one_form(ch, {"z1": b}), _antiderivative(b, "z1")),
        expected={
            "tags": [KENMOTSU, AGF, LC],
            "f": str(f), "omega": {"z1": str(b)}, "alpha": {}, "s": "1/2",
            "lambda": str(lam), "h": str(b),
            "Phi": "-exp(z1) dx^dy1 + exp(z1) dy2^dz2",
            "proportional": True,
        },
        notes="b instantiated as a polynomial in z1 (default z1)",
    )


def _rescaled_entry(base: CorpusEntry, name: str, expected: dict, notes: str) -> CorpusEntry:
    c = ConformalChange(base.candidates.sigma)
    s2 = rescale(base.structure, c)
    f2, om2 = transform_pair(base.candidates.f, base.candidates.omega, c)
    ch = s2.chart
    return CorpusEntry(name, s2, Candidates(f2, om2, Expr.const(ch, 0)), expected, notes)


def example_dim3_rescaled() -> CorpusEntry:
    return _rescaled_entry(
        example_dim3(), "example_dim3_rescaled",
        {"tags": [KENMOTSU, AGF, LC], "f": "1/2", "omega": {}, "alpha": {}, "s": "1/2"},
        "example_dim3 rescaled by sigma = x; f exp(sigma) = 1/2",
    )


def example_dim5_rescaled() -> CorpusEntry:
    return _rescaled_entry(
        example_dim5(), "example_dim5_rescaled",
        {"tags": [AGF, LC], "f": "1/2*exp(1/2*z1^2) - z1*exp(1/2*z1^2)",
         "omega": {}, "alpha": {}, "s": "1/2*exp(1/2*z1^2) - z1*exp(1/2*z1^2)"},
        "example_dim5 rescaled by sigma = z1^2/2",
    )


def flat_cosymplectic(n: int = 2) -> CorpusEntry:
    if n < 1:
        raise ValueError("n must be >= 1")
    coords = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1)) + ("z",)
    dim = 2 * n + 1
    phi = _zeros(dim)
    for i in range(n):
        phi[n + i][i] = "1"    # phi d_xi = d_yi
        phi[i][n + i] = "-1"   # phi d_yi = -d_xi
    g = [["1" if i == j else "0" for j in range(dim)] for i in range(dim)]
    s = AlmostContactStructure.from_data(coords, eta={"z": "1"}, xi={"z": "1"}, phi=phi, g=g,
                                         domain=[(-1.0, 1.0)] * dim)
    ch = s.chart
    return CorpusEntry(
        name=f"flat{dim}",
        structure=s,
        candidates=Candidates(Expr.const(ch, 0), KForm.zero(ch, 1), Expr.const(ch, 0)),
        expected={
            "tags": [COSYMPLECTIC, ALMOST_COSYMPLECTIC, AGF, LC],
            "f": "0", "omega": {}, "alpha": {}, "s": "0", "normal": True, "proportional": True,
        },
        notes=f"flat R^{dim} with constant standard structure",
    )


BUILDERS = {
    "example_dim3": example_dim3,
    "example_dim3_rescaled": example_dim3_rescaled,
    "product": lambda: example_product(False),
    "product_rescaled": lambda: example_product(True),
    "example_dim5": example_dim5,
    "example_dim5_rescaled": example_dim5_rescaled,
    "flat3": lambda: flat_cosymplectic(1),
    "flat5": lambda: flat_cosymplectic(2),
}


def names() -> list:
    return list(BUILDERS)


@lru_cache(maxsize=None)
def _built(name: str) -> CorpusEntry:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(BUILDERS)}") from None


def get(name: str, verify: bool = True) -> CorpusEntry:
    entry = _built(name)
    if verify:
        problems = verify_entry(entry)
        if problems:
            raise AssertionError(f"corpus entry {name} does not reproduce: {problems}")
    return entry


def all_entries(verify: bool = True) -> list:
    return [get(n, verify) for n in BUILDERS]


def classify_entry(entry: CorpusEntry) -> ClassificationReport:
    c = entry.candidates
    if c.f is not None and c.omega is not None:
        return classify(entry.structure, f=c.f, omega=c.omega, gauge="candidate")
    return classify(entry.structure)


def _form_map(form: KForm) -> dict:
    names = form.chart.coords
    return {names[i]: str(c) for (i,), c in form.sorted_items()}


@lru_cache(maxsize=None)
def _verify_cached(name: str) -> tuple:
    return tuple(_verify(_built(name)))


def verify_entry(entry: CorpusEntry) -> list:
    """List of mismatches between ``entry.expected`` and the pipeline (empty = ok)."""
    if BUILDERS.get(entry.name) and _built(entry.name) is entry:
        return list(_verify_cached(entry.name))
    return _verify(entry)


def _verify(entry: CorpusEntry) -> list:
    from .structure import fundamental_form, validate, is_normal

    exp = entry.expected
    s = entry.structure
    out = []
    if not validate(s, count=1).ok:
        out.append("structure does not validate")
        return out
    rep = classify_entry(entry)
    if "tags" in exp and rep.tags != exp["tags"]:
        out.append(f"tags {rep.tags} != {exp['tags']}")
    if "f" in exp and (rep.f is None or str(rep.f) != exp["f"]):
        out.append(f"f {rep.f} != {exp['f']}")
    if "omega" in exp and (rep.omega is None or _form_map(rep.omega) != exp["omega"]):
        out.append(f"omega {rep.omega} != {exp['omega']}")
    if "alpha" in exp and _form_map(rep.alpha) != exp["alpha"]:
        out.append(f"alpha {rep.alpha} != {exp['alpha']}")
    if "s" in exp and str(rep.s) != exp["s"]:
        out.append(f"s {rep.s} != {exp['s']}")
    if "lambda" in exp and str(rep.lam) != exp["lambda"]:
        out.append(f"lambda {rep.lam} != {exp['lambda']}")
    if "Phi" in exp and str(fundamental_form(s)) != exp["Phi"]:
        out.append(f"Phi {fundamental_form(s)} != {exp['Phi']}")
    if "normal" in exp and is_normal(s) != exp["normal"]:
        out.append(f"normal {not exp['normal']} != {exp['normal']}")
    if "proportional" in exp or "h" in exp:
        rig = rep.rigidity
        if rig is None:
            out.append("no rigidity block (not in the lc class)")
        else:
            if "proportional" in exp and rig.proportional != exp["proportional"]:
                out.append(f"proportional {rig.proportional} != {exp['proportional']}")
            if "h" in exp and str(rig.h) != exp["h"]:
                out.append(f"h {rig.h} != {exp['h']}")
    return out
