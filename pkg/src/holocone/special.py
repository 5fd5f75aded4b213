"""Gindikin gamma function, vector Pochhammer symbols and power functions.

All functions take a :class:`~holocone.jordan.JordanAlgebra` to fix the
structure constants (r, d).  Complex arguments go through ``scipy.special
.loggamma``; Pochhammer symbols are finite products and never touch Gamma.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import loggamma

from .jordan import Element, JordanAlgebra, inverse, jordan_det, minor, trailing_minor

__all__ = [
    "Signature",
    "WeightParams",
    "ParameterError",
    "pochhammer",
    "gamma_r",
    "pochhammer_r",
    "beta_constant",
    "collapse_check",
    "delta_k",
    "delta_check_k",
    "check_dual_power",
]


class ParameterError(ValueError):
    """Pole of Gamma, vanishing denominator or failed convergence condition."""


@dataclass(frozen=True)
class Signature:
    """Non-increasing, non-negative integer vector k_1 >= ... >= k_r >= 0."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p != q for p, q in zip(parts, self.parts)):
            raise ValueError("signature parts must be integers")
        if any(p < 0 for p in parts):
            raise ValueError("signature parts must be non-negative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("signature must be non-increasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, k) -> "Signature":
        if isinstance(k, Signature):
            return k
        if isinstance(k, (int, np.integer)):
            return cls((int(k),))
        return cls(tuple(k))

    @classmethod
    def constant(cls, r: int, l: int) -> "Signature":
        return cls((l,) * r)

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def dual(self) -> tuple[int, ...]:
        return self.parts[::-1]

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(tuple(a + b for a, b in zip(self.parts, other.parts, strict=True)))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class WeightParams:
    """Scalar weights and signature selecting one holographic operator."""

    lam: complex
    mu: complex
    k: Signature
    algebra: JordanAlgebra

    def __post_init__(self):
        k = Signature.of(self.k)
        object.__setattr__(self, "k", k)
        if k.rank != self.algebra.rank:
            raise ValueError(f"signature length {k.rank} != rank {self.algebra.rank}")
        bound = -k.parts[-1] + self.algebra.n_over_r - 1
        if not (complex(self.lam).real > bound and complex(self.mu).real > bound):
            raise ParameterError(
                f"need Re lambda, Re mu > {bound:g} (got {self.lam}, {self.mu})"
            )

    def swapped(self) -> "WeightParams":
        return WeightParams(self.mu, self.lam, self.k, self.algebra)


def _half_d(algebra: JordanAlgebra) -> Fraction:
    # exact, so rational weights give rational Pochhammer products
    return algebra.peirce_d / 2


def pochhammer(a, m: int):
    """Rising factorial (a)_m as a finite product; works for any ring scalar."""
    if m < 0:
        raise ValueError("Pochhammer length must be non-negative")
    out = 1
    for i in range(m):
        out = out * (a + i)
    return out


def _check_pole(z: complex):
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and float(z.real).is_integer():
        raise ParameterError(f"Gamma pole at {z.real:g}")


def _log_gamma_r(algebra: JordanAlgebra, lam, k: Sequence[int]) -> complex:
    r, hd = algebra.rank, _half_d(algebra)
    total = complex(float(algebra.peirce_d) * r * (r - 1) / 4 * math.log(2 * math.pi))
    for j, kj in enumerate(k):
        arg = complex(lam) + kj - float(hd) * j
        _check_pole(arg)
        total += complex(loggamma(arg))
    return total


def gamma_r(algebra: JordanAlgebra, lam, k=None) -> complex:
    """Gamma_Omega(lam + k) = (2pi)^{d r(r-1)/4} prod_j Gamma(lam + k_j - d(j-1)/2)."""
    k = (0,) * algebra.rank if k is None else Signature.of(k).parts
    if len(k) != algebra.rank:
        raise ValueError("signature length does not match rank")
    return complex(np.exp(_log_gamma_r(algebra, lam, k)))


def pochhammer_r(algebra: JordanAlgebra, lam, k, m):
    """(lam + k)_m = prod_j (lam + k_j - d(j-1)/2)_{m_j}.

    ``k`` may be any integer vector (the reflection identity needs negative
    entries); ``m`` must be non-negative.
    """
    k = tuple(int(v) for v in (k.parts if isinstance(k, Signature) else k))
    m = tuple(int(v) for v in (m.parts if isinstance(m, Signature) else m))
    if len(k) != algebra.rank or len(m) != algebra.rank:
        raise ValueError("vector length does not match rank")
    hd = _half_d(algebra)
    out = 1
    for j, (kj, mj) in enumerate(zip(k, m)):
        out = out * pochhammer(lam + kj - hd * j, mj)
    return out


def _beta_parts(algebra: JordanAlgebra, lam, mu, k: Signature):
    r, hd = algebra.rank, _half_d(algebra)
    s = lam + mu
    num, den = 1, 1
    for i in range(r):
        for j in range(i, r):
            kk = k.parts[i] + k.parts[j]
            den = den * pochhammer(s - hd * (i + j), kk)
            if i < j:
                num = num * pochhammer(s - hd * (i + j + 1), kk)
    return num, den


def beta_constant(params: WeightParams) -> complex:
    """Closed-form constant B_r(lam, mu, k) of the matrix beta integral."""
    A, lam, mu, k = params.algebra, complex(params.lam), complex(params.mu), params.k
    logs = _log_gamma_r(A, lam, k.parts) + _log_gamma_r(A, mu, k.parts)
    logs -= _log_gamma_r(A, lam + mu, (0,) * A.rank)
    num, den = _beta_parts(A, lam, mu, k)
    if den == 0:
        raise ParameterError("vanishing Pochhammer denominator")
    return complex(np.exp(logs) * num / den)


def collapse_check(algebra: JordanAlgebra, lam, mu, l: int) -> tuple[complex, complex]:
    """(B_r(lam, mu, (l,...,l)), B_r(lam + l, mu + l, 0)); these must agree."""
    r = algebra.rank
    a = beta_constant(WeightParams(lam, mu, Signature.constant(r, l), algebra))
    b = beta_constant(WeightParams(lam + l, mu + l, Signature.constant(r, 0), algebra))
    return a, b


def _power_product(x: Element, k: Signature, minor_fn):
    parts = k.parts + (0,)
    if len(k.parts) != x.algebra.rank:
        raise ValueError("signature length does not match rank")
    out = np.ones(x.batch_shape, dtype=x.coords.dtype)
    for j in range(len(k.parts)):
        e = parts[j] - parts[j + 1]
        if e:
            out = out * minor_fn(x, j + 1) ** e
    return out


def delta_k(x: Element, k) -> np.ndarray:
    """Lowest-weight power function prod_j Delta_j(x)^{k_j - k_{j+1}}."""
    return _power_product(x, Signature.of(k), minor)


def delta_check_k(x: Element, k) -> np.ndarray:
    """Highest-weight variant built from minors adapted to the reversed frame."""
    return _power_product(x, Signature.of(k), trailing_minor)


def check_dual_power(x: Element, k, k0: int):
    """Both sides of det(x)^{k0} Delta_k(x^{-1}) = Delta-check_{k0 - k^vee}(x)."""
    k = Signature.of(k)
    if k0 < k.parts[0]:
        raise ValueError("need k0 >= k_1")
    lhs = jordan_det(x) ** k0 * delta_k(inverse(x), k)
    rhs = delta_check_k(x, Signature(tuple(k0 - v for v in k.dual())))
    return lhs, rhs
