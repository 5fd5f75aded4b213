"""Rankin-Cohen brackets on polynomials with exact coefficients.

Polynomials are plain dicts: bivariate ``{(a, b): c}`` for c x^a y^b and
univariate ``{a: c}``.  Coefficients may be ints, Fractions, floats or complex;
nothing here forces a particular scalar type.

Infinitesimal sl(2) action in weight ``lam`` (one operator per generator):

    E  raising   d/dx
    H  Euler     2 x d/dx + lam
    F  lowering  x^2 d/dx + lam x

The F operator is the derivative of the weight-``lam`` action of the
lower-triangular one-parameter subgroup, up to an overall sign that plays no
role in intertwining.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .special import pochhammer

__all__ = [
    "GENERATORS",
    "rankin_cohen",
    "rc_coefficients",
    "act_univariate",
    "act_bivariate",
    "poly_add",
    "poly_eval",
    "bivariate_from_product",
    "binomial_power",
]

GENERATORS = ("E", "H", "F")


def _clean(p: dict) -> dict:
    return {k: v for k, v in p.items() if v != 0}


def poly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + scale * v
    return _clean(out)


def poly_eval(p: dict, *args):
    total = 0
    for k, c in p.items():
        ks = k if isinstance(k, tuple) else (k,)
        term = c
        for var, e in zip(args, ks):
            term = term * var**e
        total = total + term
    return total


def rc_coefficients(lam, mu, l: int) -> list:
    """c_j = (-1)^j (lam + l - j)_j (mu + j)_{l - j} / (j! (l - j)!)."""
    out = []
    for j in range(l + 1):
        num = (-1) ** j * pochhammer(lam + l - j, j) * pochhammer(mu + j, l - j)
        den = factorial(j) * factorial(l - j)
        # keep integer numerators exact
        out.append(Fraction(num, den) if isinstance(num, int) else num / den)
    return out


def _falling(a: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= a - i
    return out


def rankin_cohen(lam, mu, l: int, f: dict) -> dict:
    """sum_j c_j d^l f / dx^{l-j} dy^j restricted to x = y = z."""
    if l < 0:
        raise ValueError("l must be non-negative")
    coeffs = rc_coefficients(lam, mu, l)
    out: dict = {}
    for (a, b), c in f.items():
        for j, cj in enumerate(coeffs):
            da, db = l - j, j
            if da > a or db > b:
                continue
            deg = a + b - l
            out[deg] = out.get(deg, 0) + cj * c * _falling(a, da) * _falling(b, db)
    return _clean(out)


def act_univariate(gen: str, lam, g: dict) -> dict:
    out: dict = {}
    for a, c in g.items():
        if gen == "E":
            if a:
                out[a - 1] = out.get(a - 1, 0) + a * c
        elif gen == "H":
            out[a] = out.get(a, 0) + (2 * a + lam) * c
        elif gen == "F":
            out[a + 1] = out.get(a + 1, 0) + (a + lam) * c
        else:
            raise ValueError(f"unknown generator {gen!r}")
    return _clean(out)


def act_bivariate(gen: str, lam, mu, f: dict) -> dict:
    """Tensor-product action X_lam in x plus X_mu in y."""
    out: dict = {}
    for (a, b), c in f.items():
        for na, ca in act_univariate(gen, lam, {a: c}).items():
            out[(na, b)] = out.get((na, b), 0) + ca
        for nb, cb in act_univariate(gen, mu, {b: c}).items():
            out[(a, nb)] = out.get((a, nb), 0) + cb
    return _clean(out)


def bivariate_from_product(px: dict, py: dict) -> dict:
    out: dict = {}
    for a, ca in px.items():
        for b, cb in py.items():
            out[(a, b)] = out.get((a, b), 0) + ca * cb
    return _clean(out)


def binomial_power(l: int, sign=-1) -> dict:
    """(x + sign*y)^l as a bivariate polynomial."""
    return {(l - j, j): comb(l, j) * sign**j for j in range(l + 1)}
