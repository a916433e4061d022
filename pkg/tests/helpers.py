"""Random exp-polynomial expressions, forms and fields for property tests.

Generators take a ``random.Random`` so the acceptance suite can run them in
seeded loops and hypothesis can drive them through an integer seed.
"""
import random
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from contactlab.expr import Chart, Expr
from contactlab.forms import KForm, VectorField

CHART3 = Chart(("x", "y", "z"))
CHART4 = Chart(("x", "y", "z", "w"))


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, 3))


def random_exponent(rng: random.Random, dim: int) -> dict:
    """Small polynomial exponent: empty, linear, or with one quadratic term."""
    kind = rng.random()
    if kind < 0.4:
        return {}
    p = {}
    for _ in range(rng.randint(1, 2)):
        m = [0] * dim
        m[rng.randrange(dim)] = 1
        if kind > 0.85:
            m[rng.randrange(dim)] += 1
        p[tuple(m)] = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
    return p


def random_expr(rng: random.Random, chart: Chart = CHART3, max_terms: int = 3) -> Expr:
    dim = chart.dim
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, 2) if rng.random() < 0.4 else 0 for _ in range(dim))
        pkey = tuple(sorted(random_exponent(rng, dim).items()))
        terms[(mono, pkey)] = terms.get((mono, pkey), 0) + random_rational(rng)
    return Expr(chart, terms)


def random_form(rng: random.Random, chart: Chart, degree: int, max_terms: int = 2) -> KForm:
    idxs = list(combinations(range(chart.dim), degree))
    if degree == 0:
        return KForm.scalar(random_expr(rng, chart))
    picked = rng.sample(idxs, min(len(idxs), rng.randint(1, max_terms)))
    return KForm(chart, degree, {i: random_expr(rng, chart, 2) for i in picked})


def random_field(rng: random.Random, chart: Chart) -> VectorField:
    return VectorField(chart, [random_expr(rng, chart, 2) if rng.random() < 0.7 else 0
                               for _ in range(chart.dim)])


def random_point(rng: random.Random, dim: int, lo=-0.8, hi=0.8) -> list:
    return [rng.uniform(lo, hi) for _ in range(dim)]


def _seeds():
    return st.integers(0, 2**32 - 1).map(random.Random)


def exprs(chart: Chart = CHART3):
    return _seeds().map(lambda r: random_expr(r, chart))


def forms(chart: Chart, degree: int):
    return _seeds().map(lambda r: random_form(r, chart, degree))


def any_forms(chart: Chart, max_degree: int | None = None):
    top = chart.dim if max_degree is None else max_degree
    return st.integers(0, top).flatmap(lambda k: forms(chart, k))


def fields(chart: Chart):
    return _seeds().map(lambda r: random_field(r, chart))


def central_difference(e: Expr, i: int, point, h: float = 1e-5) -> float:
    up = list(point)
    dn = list(point)
    up[i] += h
    dn[i] -= h
    return (e.eval(up) - e.eval(dn)) / (2 * h)


def fd_close(symbolic: float, numeric: float, scale: float, rel: float = 1e-5,
             floor: float = 1e-7) -> bool:
    """Relative agreement against the derivative or the function size.

    The floor covers the O(h^2) truncation error where both sizes vanish.
    """
    return abs(symbolic - numeric) <= max(rel * max(abs(symbolic), abs(scale)), floor)
