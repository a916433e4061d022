"""Differential forms and vector fields with Expr coefficients on one chart.

Forms are stored sparsely over strictly increasing index tuples.  The
exterior derivative is the non-halved one, and evaluation uses the
determinant convention, so ``(dx^dy)(d/dx, d/dy) = 1`` and
``da(X, Y) = X a(Y) - Y a(X) - a([X, Y])`` for 1-forms.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .expr import Chart, ChartMismatch, Expr, as_expr


def sort_sign(indices: Sequence[int]):
    """Sorted tuple and permutation sign, or ``(None, 0)`` on a repeated index."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None, 0
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def _same_chart(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"charts differ: {a.chart} vs {b.chart}")


class VectorField:
    """Coordinate-frame vector field ``sum_i comps[i] * d/dx^i``."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence):
        comps = tuple(as_expr(c, chart) for c in comps)
        if len(comps) != chart.dim:
            raise ValueError(f"vector field needs {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.comps = comps

    @classmethod
    def coordinate(cls, chart: Chart, coord) -> "VectorField":
        i = coord if isinstance(coord, int) else chart.index(coord)
        return cls(chart, [1 if k == i else 0 for k in range(chart.dim)])

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, [0] * chart.dim)

    @classmethod
    def from_map(cls, chart: Chart, comps: Mapping[str, object]) -> "VectorField":
        vals = [0] * chart.dim
        for name, v in comps.items():
            vals[chart.index(name)] = v
        return cls(chart, vals)

    def __getitem__(self, i):
        return self.comps[i]

    def __add__(self, other):
        _same_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.comps])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorField":
        c = as_expr(c, self.chart)
        return VectorField(self.chart, [c * a for a in self.comps])

    def __call__(self, f: Expr) -> Expr:
        """Directional derivative ``X(f)``."""
        out = Expr.const(self.chart, 0)
        for i, a in enumerate(self.comps):
            if a:
                out = out + a * f.partial(i)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _same_chart(self, other)
        return self.comps == other.comps

    def __hash__(self):
        return hash((self.chart, self.comps))

    def eval(self, point):
        return [c.eval(point) for c in self.comps]

    def __str__(self):
        parts = [(c, f"d/d{name}") for c, name in zip(self.comps, self.chart.coords) if c]
        return _join_terms(parts)

    def __repr__(self):
        return f"VectorField({str(self)!r})"


class KForm:
    """Differential k-form ``sum_I c_I dx^I`` over increasing tuples ``I``."""

    __slots__ = ("chart", "degree", "_terms")

    def __init__(self, chart: Chart, degree: int, terms: Mapping | None = None, _trusted=False):
        if not 0 <= degree:
            raise ValueError("negative degree")
        self.chart = chart
        self.degree = degree
        if _trusted:
            self._terms = terms
            return
        acc: dict = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not match degree {degree}")
            if any(not 0 <= i < chart.dim for i in idx):
                raise ValueError(f"index {idx} out of range for dim {chart.dim}")
            key, sign = sort_sign(idx)
            if key is None:
                continue
            c = as_expr(c, chart)
            _bump(acc, key, c if sign > 0 else -c)
        self._terms = acc

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "KForm":
        return cls(chart, degree, {}, _trusted=True)

    @classmethod
    def scalar(cls, e: Expr) -> "KForm":
        """Wrap an Expr as a 0-form."""
        return cls(e.chart, 0, {(): e} if e else {}, _trusted=True)

    @classmethod
    def dx(cls, chart: Chart, *coords) -> "KForm":
        idx = [c if isinstance(c, int) else chart.index(c) for c in coords]
        return cls(chart, len(idx), {tuple(idx): 1})

    @classmethod
    def one_form(cls, chart: Chart, comps) -> "KForm":
        """1-form from a coordinate-name map or a full coefficient list."""
        if isinstance(comps, Mapping):
            return cls(chart, 1, {(chart.index(k),): v for k, v in comps.items()})
        comps = list(comps)
        if len(comps) != chart.dim:
            raise ValueError(f"1-form needs {chart.dim} components")
        return cls(chart, 1, {(i,): v for i, v in enumerate(comps)})

    def unwrap(self) -> Expr:
        if self.degree != 0:
            raise ValueError(f"unwrap needs a 0-form, got degree {self.degree}")
        return self._terms.get((), Expr.const(self.chart, 0))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, idx) -> Expr:
        idx = tuple(i if isinstance(i, int) else self.chart.index(i) for i in idx)
        key, sign = sort_sign(idx)
        if key is None:
            return Expr.const(self.chart, 0)
        c = self._terms.get(key, Expr.const(self.chart, 0))
        return c if sign > 0 else -c

    def components(self) -> list:
        """Coefficients of a 1-form as a dense list."""
        if self.degree != 1:
            raise ValueError("components() is for 1-forms")
        return [self.coeff((i,)) for i in range(self.chart.dim)]

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other):
        if not isinstance(other, KForm):
            raise TypeError("KForm expected")
        _same_chart(self, other)
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            _bump(acc, k, c)
        return KForm(self.chart, self.degree, acc, _trusted=True)

    def __neg__(self):
        return KForm(self.chart, self.degree, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KForm":
        c = as_expr(c, self.chart)
        acc = {}
        for k, v in self._terms.items():
            p = c * v
            if p:
                acc[k] = p
        return KForm(self.chart, self.degree, acc, _trusted=True)

    def __rmul__(self, c):
        if isinstance(c, KForm):
            return NotImplemented
        return self.scale(c)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        _same_chart(self, other)
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self._terms.items())))

    def sorted_items(self):
        return sorted(self._terms.items())

    def __str__(self):
        if self.degree == 0:
            return str(self.unwrap())
        names = self.chart.coords
        parts = [(c, "^".join("d" + names[i] for i in idx)) for idx, c in self.sorted_items()]
        return _join_terms(parts)

    def __repr__(self):
        return f"KForm({self.degree}, {str(self)!r})"


def _bump(acc: dict, key, c: Expr):
    if key in acc:
        v = acc[key] + c
        if v:
            acc[key] = v
        else:
            del acc[key]
    elif c:
        acc[key] = c


def _join_terms(parts) -> str:
    """Render ``[(coeff, basis_label)]`` as ``"coeff basis + ..."``."""
    if not parts:
        return "0"
    out = []
    for n, (c, label) in enumerate(parts):
        mono = c.as_monomial()
        if mono is not None:
            neg = mono[0] < 0
            body = str(-c if neg else c)
            piece = label if body == "1" else f"{body} {label}"
        else:
            neg = False
            piece = f"({c}) {label}"
        if n == 0:
            out.append(("-" if neg else "") + piece)
        else:
            out.append((" - " if neg else " + ") + piece)
    return "".join(out)


def wedge(a: KForm, b: KForm) -> KForm:
    _same_chart(a, b)
    deg = a.degree + b.degree
    acc: dict = {}
    if deg <= a.chart.dim:
        for i, ca in a.items():
            for j, cb in b.items():
                key, sign = sort_sign(i + j)
                if key is None:
                    continue
                p = ca * cb
                _bump(acc, key, p if sign > 0 else -p)
    return KForm(a.chart, deg, acc, _trusted=True)


def wedge_all(forms: Iterable[KForm]) -> KForm:
    forms = list(forms)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def form_power(a: KForm, k: int) -> KForm:
    """``a^k`` under the wedge product; ``a^0`` is the constant 0-form 1."""
    out = KForm.scalar(Expr.const(a.chart, 1))
    for _ in range(k):
        out = wedge(out, a)
    return out


def d(a: KForm) -> KForm:
    acc: dict = {}
    dim = a.chart.dim
    for idx, c in a.items():
        for i in range(dim):
            if i in idx:
                continue
            dc = c.partial(i)
            if not dc:
                continue
            key, sign = sort_sign((i,) + idx)
            _bump(acc, key, dc if sign > 0 else -dc)
    return KForm(a.chart, a.degree + 1, acc, _trusted=True)


def d0(f: Expr) -> KForm:
    """Differential of a function."""
    return d(KForm.scalar(f))


def interior(X: VectorField, a: KForm) -> KForm:
    _same_chart(X, a)
    if a.degree < 1:
        raise ValueError("interior product needs a form of degree >= 1")
    acc: dict = {}
    for idx, c in a.items():
        for r, i in enumerate(idx):
            xi = X.comps[i]
            if not xi:
                continue
            p = xi * c
            _bump(acc, idx[:r] + idx[r + 1:], p if r % 2 == 0 else -p)
    return KForm(a.chart, a.degree - 1, acc, _trusted=True)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _same_chart(X, Y)
    dim = X.chart.dim
    comps = []
    for i in range(dim):
        comps.append(X(Y.comps[i]) - Y(X.comps[i]))
    return VectorField(X.chart, comps)


def apply(a: KForm, *fields: VectorField) -> Expr:
    """Evaluate ``a(X_1, ..., X_k)``."""
    if len(fields) == 1 and isinstance(fields[0], (list, tuple)):
        fields = tuple(fields[0])
    if len(fields) != a.degree:
        raise ValueError(f"{a.degree}-form applied to {len(fields)} vector fields")
    out = a
    for X in fields:
        out = interior(X, out)
    return out.unwrap()


def eval_form(a: KForm, point) -> dict:
    return {idx: c.eval(point) for idx, c in a.sorted_items()}
