"""Constant-coefficient exterior algebra on a symplectic vector space.

Basis covectors are indexed ``e_1*..e_n*`` -> ``0..n-1`` and
``f_1*..f_n*`` -> ``n..2n-1``; the symplectic form is
``Omega = sum_i e_i* ^ f_i*``.  Everything is exact (``int``/``Fraction``)
and deliberately independent of :mod:`contactlab.forms`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

MAX_N = 6


def _check_n(n: int):
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError(f"n must be an integer in 1..{MAX_N}, got {n!r}")


def _canon(idx):
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None, 0
    # parity by inversion count
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return tuple(sorted(idx)), (-1) ** inv


def _add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def ext_wedge(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, ca in a.items():
        for j, cb in b.items():
            key, sign = _canon(i + j)
            if key is not None:
                _add(out, key, sign * ca * cb)
    return out


def ext_power(a: dict, k: int) -> dict:
    out = {(): 1}
    for _ in range(k):
        out = ext_wedge(out, a)
    return out


def ext_interior(X, a: dict) -> dict:
    out: dict = {}
    for idx, c in a.items():
        for r, i in enumerate(idx):
            if X[i]:
                _add(out, idx[:r] + idx[r + 1:], (-1) ** r * X[i] * c)
    return out


def ext_scale(c, a: dict) -> dict:
    return {k: c * v for k, v in a.items() if c * v}


def ext_from_factors(factors) -> dict:
    """Wedge of basis covectors in the given order."""
    out = {(): 1}
    for i in factors:
        out = ext_wedge(out, {(i,): 1})
    return out


@dataclass(frozen=True)
class SymplecticSpace:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def e(self, i: int) -> int:
        return i - 1

    def f(self, i: int) -> int:
        return self.n + i - 1

    def label(self, k: int) -> str:
        return f"e{k + 1}" if k < self.n else f"f{k - self.n + 1}"

    @property
    def omega(self) -> dict:
        return {(self.e(i), self.f(i)): 1 for i in range(1, self.n + 1)}

    def volume_factors(self) -> list:
        """Factor order of ``nu = e1* ^ f1* ^ ... ^ en* ^ fn*``."""
        out = []
        for i in range(1, self.n + 1):
            out += [self.e(i), self.f(i)]
        return out

    def omitted(self, k: int) -> dict:
        """``nu`` with covector ``k`` deleted, other factors in their original order."""
        return ext_from_factors([j for j in self.volume_factors() if j != k])

    def is_nondegenerate(self) -> bool:
        return bool(ext_power(self.omega, self.n))


@dataclass
class LefschetzMatrix:
    n: int
    rows: list       # increasing (2n-1)-tuples
    cols: list       # covector labels
    entries: list    # rows x cols, ints

    @property
    def rank(self) -> int:
        return exact_rank(self.entries)

    @property
    def injective(self) -> bool:
        return self.rank == 2 * self.n

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]


def lefschetz_map(V: SymplecticSpace, alpha) -> dict:
    """``alpha ^ Omega^(n-1)`` for a covector given as a length-2n sequence."""
    a = {(k,): c for k, c in enumerate(alpha) if c}
    return ext_wedge(a, ext_power(V.omega, V.n - 1))


def lefschetz_matrix(n: int) -> LefschetzMatrix:
    _check_n(n)
    V = SymplecticSpace(n)
    rows = list(combinations(range(2 * n), 2 * n - 1))
    Om = ext_power(V.omega, n - 1)
    entries = [[0] * (2 * n) for _ in rows]
    pos = {r: i for i, r in enumerate(rows)}
    for k in range(2 * n):
        for idx, c in ext_wedge({(k,): 1}, Om).items():
            entries[pos[idx]][k] = c
    return LefschetzMatrix(n, rows, [V.label(k) for k in range(2 * n)], entries)


def exact_rank(M) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    A = [[Fraction(v) for v in row] for row in M]
    if not A:
        return 0
    rank = 0
    ncols = len(A[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][col]:
                fac = A[r][col] / A[rank][col]
                A[r] = [x - fac * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def nullity(M) -> int:
    return len(M[0]) - exact_rank(M)


@dataclass
class VolumeIdentity:
    covector: str        # "e_i" or "f_i"
    lhs: dict            # covector ^ Omega^(n-1)
    omitted: dict        # nu with the partner deleted
    sign: int            # lhs = sign * (n-1)! * omitted; 0 if no such sign


def volume_identities(n: int) -> list:
    """Both families ``e_i* ^ Omega^(n-1) = (n-1)! nu_(f_i omitted)`` and
    ``f_i* ^ Omega^(n-1) = (n-1)! nu_(e_i omitted)``, with the observed sign."""
    _check_n(n)
    V = SymplecticSpace(n)
    fact = math.factorial(n - 1)
    Om = ext_power(V.omega, n - 1)
    out = []
    for i in range(1, n + 1):
        for cov, partner, name in ((V.e(i), V.f(i), f"e_{i}"), (V.f(i), V.e(i), f"f_{i}")):
            lhs = ext_wedge({(cov,): 1}, Om)
            nu_hat = V.omitted(partner)
            sign = 0
            for sgn in (1, -1):
                if lhs == ext_scale(sgn * fact, nu_hat):
                    sign = sgn
            out.append(VolumeIdentity(name, lhs, nu_hat, sign))
    return out


def omitted_volume_identity(n: int) -> bool:
    """True iff every identity holds with sign +1 (omitted factors kept in order)."""
    return all(v.sign == 1 for v in volume_identities(n))


def contraction_identity(n: int, X) -> bool:
    """``i_X(Omega^n) == n (i_X Omega) ^ Omega^(n-1)`` exactly."""
    _check_n(n)
    V = SymplecticSpace(n)
    X = [Fraction(v) for v in X]
    if len(X) != 2 * n:
        raise ValueError(f"X needs {2 * n} components")
    lhs = ext_interior(X, ext_power(V.omega, n))
    rhs = ext_scale(n, ext_wedge(ext_interior(X, V.omega), ext_power(V.omega, n - 1)))
    return lhs == rhs


def random_rational_vector(dim: int, rng: random.Random, bound: int = 9) -> list:
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim)]


def contraction_sweep(n: int, trials: int = 20, seed: int = 0) -> bool:
    """Contraction identity on all basis vectors plus ``trials`` random rational vectors."""
    _check_n(n)
    rng = random.Random(seed)
    vecs = [[1 if k == j else 0 for k in range(2 * n)] for j in range(2 * n)]
    vecs += [random_rational_vector(2 * n, rng) for _ in range(trials)]
    return all(contraction_identity(n, X) for X in vecs)
