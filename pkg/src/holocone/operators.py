"""Scalar holographic operator, its rank-one forms, and verification kernels.

Pulling the contour back to 0 < z < e with w = y + P(u^{1/2}) z removes every
power of det(u) and leaves

    (F f)(x, y) = int det(z)^{lam - n/r} det(e - z)^{mu - n/r}
                      Delta_k(P(u^{1/2})(z - z o z)) f(y + P(u^{1/2}) z) dz,

using (z^{-1} + (e - z)^{-1})^{-1} = z o (e - z).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import rankin_cohen as rc
from .geometry import (
    GenKind,
    GroupGenerator,
    act,
    admissible_sign,
    contour_chart,
    in_tube,
    log_det_tube,
)
from .jordan import (
    DomainError,
    Element,
    JordanAlgebra,
    Kind,
    jordan_det,
    minor,
    mul,
    quad_P,
    rank1,
    unit,
)
from .quadrature import QuadratureRule, default_scheme, integrate_weighted, jacobi_rule, reference_rule
from .special import Signature, WeightParams, beta_constant, delta_k

__all__ = [
    "ScalarFunction",
    "HoloResult",
    "MinKResult",
    "EquivarianceResult",
    "BranchError",
    "holo_rule",
    "holo_up_scalar",
    "min_ktype_image",
    "kp_holo_1d",
    "kp_polynomial",
    "rc_kp_composition",
    "equivariance_residual",
    "frame_diagonal",
]


class BranchError(DomainError):
    """Configuration outside the branch-safe class."""


@dataclass(frozen=True)
class ScalarFunction:
    """Holomorphic test function evaluated on batched Elements."""

    kind: str
    fn: Callable[[Element], np.ndarray]
    label: str = ""

    def __call__(self, w: Element) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.fn(w)), w.batch_shape)

    @classmethod
    def constant(cls, c=1.0):
        return cls("Constant", lambda w: np.full(w.batch_shape, c, dtype=complex), f"const({c})")

    @classmethod
    def monomial(cls, exponents):
        ex = tuple(int(e) for e in exponents)

        def fn(w):
            out = np.ones(w.batch_shape, dtype=complex)
            for i, e in enumerate(ex):
                if e:
                    out = out * w.coords[..., i] ** e
            return out

        return cls("Monomial", fn, f"mono{ex}")

    @classmethod
    def delta_power(cls, k):
        k = Signature.of(k)
        return cls("DeltaPower", lambda w: delta_k(w, k), f"delta{k}")

    @classmethod
    def callback(cls, fn, label="callback"):
        return cls("Callback", fn, label)


@dataclass(frozen=True)
class HoloResult:
    value: complex
    quad_error: float
    params: WeightParams
    point: tuple


@dataclass(frozen=True)
class MinKResult:
    lhs: complex
    rhs: complex
    lhs_error: float

    @property
    def rel_error(self) -> float:
        return abs(self.lhs - self.rhs) / abs(self.rhs)


@dataclass(frozen=True)
class EquivarianceResult:
    residual: float
    quad_error: float
    lhs: complex
    rhs: complex

    @property
    def ok(self) -> bool:
        return self.residual <= 10 * self.quad_error


@functools.lru_cache(maxsize=64)
def _cached_rule(algebra, scheme, size, alpha, beta):
    return reference_rule(algebra, scheme, size, alpha, beta)


def holo_rule(params: WeightParams, scheme: str | None = None, size: int = 32) -> QuadratureRule:
    """Reference rule whose baked density absorbs the real parts of the weights."""
    A = params.algebra
    scheme = scheme or default_scheme(A)
    nr = A.n_over_r
    alpha = max(complex(params.lam).real - nr, -0.999)
    beta = max(complex(params.mu).real - nr, -0.999)
    if scheme in ("CartesianIndicator", "MonteCarlo"):
        # box rules have no endpoint weighting; keep the density exact anyway
        pass
    return _cached_rule(A, scheme, size, round(alpha, 14), round(beta, 14))


def _det_power(d: np.ndarray, s: complex) -> np.ndarray:
    # d > 0 on the reference domain, so the real branch is unambiguous
    if s == 0:
        return np.ones_like(d, dtype=float)
    return np.exp(s * np.log(d))


def _holo_integrand(params: WeightParams, f, chart, rule: QuadratureRule):
    A = params.algebra
    nr = A.n_over_r
    e = unit(A)
    s_lam = complex(params.lam) - nr - rule.alpha
    s_mu = complex(params.mu) - nr - rule.beta
    k = params.k
    Ps = chart.sqrt_map

    def g(z: Element):
        dz, dez = jordan_det(z), jordan_det(e - z)
        out = _det_power(dz, s_lam) * _det_power(dez, s_mu)
        if k.size:
            out = out * delta_k(Ps(z - mul(z, z)), k)
        return out * f(chart(z))

    return g


def holo_up_scalar(
    params: WeightParams,
    f,
    x: Element,
    y: Element,
    rule: QuadratureRule | None = None,
) -> HoloResult:
    """Evaluate the scalar holographic operator (F f)(x, y) by quadrature."""
    A = params.algebra
    if x.algebra != A or y.algebra != A:
        raise ValueError("points and parameters live in different algebras")
    rule = rule or holo_rule(params)
    if rule.domain != "reference" or rule.algebra != A:
        raise ValueError("need a reference-domain rule for the same algebra")
    if not isinstance(f, ScalarFunction):
        f = ScalarFunction.callback(f)
    chart = contour_chart(x, y)
    value, err = integrate_weighted(rule, _holo_integrand(params, f, chart, rule))
    return HoloResult(complex(value), float(err), params, (x, y))


def min_ktype_image(params: WeightParams, u: Element, rule=None) -> MinKResult:
    """(F 1)(u, 0) next to B_r(lam, mu, k) Delta_k(u)."""
    A = params.algebra
    res = holo_up_scalar(params, ScalarFunction.constant(1.0), u, Element(A, np.zeros(A.dim)), rule)
    rhs = beta_constant(params) * complex(delta_k(u, params.k))
    return MinKResult(res.value, rhs, res.quad_error)


# --------------------------------------------------------------------------
# rank one


@functools.lru_cache(maxsize=256)
def _kp_rule(lam: complex, mu: complex, l: int, n: int):
    a = lam.real + l - 1
    b = mu.real + l - 1
    if a <= -1 or b <= -1:
        raise ValueError("need Re lam, Re mu > -l")
    t, w = jacobi_rule(n, a, b)
    # residual imaginary exponents
    w = w * np.exp(1j * lam.imag * np.log1p(-t) + 1j * mu.imag * np.log1p(t))
    return t, w


def _kp_prefactor(lam, mu, l, x, y):
    return (x - y) ** l / (2 ** (lam + mu + 2 * l - 1) * math.factorial(l))


def kp_holo_1d(lam, mu, l: int, f, x, y, n_nodes: int = 64) -> complex:
    """Rank-one holographic operator in the Kobayashi-Pevzner normalization.

    (x - y)^l / (2^{lam + mu + 2l - 1} l!) int_{-1}^{1} f(((y - x) z + x + y)/2)
    (1 - z)^{lam + l - 1} (1 + z)^{mu + l - 1} dz, by Gauss-Jacobi.
    """
    lam, mu, x, y = complex(lam), complex(mu), complex(x), complex(y)
    if l < 0:
        raise ValueError("l must be non-negative")
    t, w = _kp_rule(lam, mu, int(l), int(n_nodes))
    pts = ((y - x) * t + x + y) / 2
    if isinstance(f, ScalarFunction):
        vals = f(Element(rank1(), pts[:, None]))
    else:
        vals = np.broadcast_to(np.asarray(f(pts)), pts.shape)
    return complex(_kp_prefactor(lam, mu, l, x, y) * np.sum(w * vals))


def kp_polynomial(lam, mu, l: int, j: int, n_nodes: int = 64) -> dict:
    """kp_holo_1d applied to w^j, as a bivariate polynomial in (x, y)."""
    lam, mu = complex(lam), complex(mu)
    t, w = _kp_rule(lam, mu, int(l), int(n_nodes))
    inner = {}
    for i in range(j + 1):
        moment = np.sum(w * ((1 - t) / 2) ** i * ((1 + t) / 2) ** (j - i))
        inner[(i, j - i)] = math.comb(j, i) * moment
    pre = rc.binomial_power(l, -1)
    scale = 1 / (2 ** (lam + mu + 2 * l - 1) * math.factorial(l))
    out: dict = {}
    for (a, b), c in pre.items():
        for (p, q), m in inner.items():
            out[(a + p, b + q)] = out.get((a + p, b + q), 0) + c * m * scale
    return out


def rc_kp_composition(lam, mu, l: int, degree_cap: int, point: complex = 0.5 + 1.0j) -> list[complex]:
    """Ratios RC(KP(w^j))(z) / z^j at a fixed point, j = 0..degree_cap.

    Rankin-Cohen composed with the holographic operator intertwines an
    irreducible representation with itself, so all ratios coincide.
    """
    out = []
    for j in range(degree_cap + 1):
        poly = rc.rankin_cohen(complex(lam), complex(mu), l, kp_polynomial(lam, mu, l, j))
        out.append(complex(rc.poly_eval(poly, point)) / point**j)
    return out


# --------------------------------------------------------------------------
# equivariance


def frame_diagonal(a: Element, tol: float = 0.0) -> bool:
    """True when a is a combination of the fixed frame idempotents."""
    A = a.algebra
    if A.kind is Kind.RANK1:
        return True
    frame = np.stack([c.coords for c in A.frame])
    coef, *_ = np.linalg.lstsq(frame.T, a.coords, rcond=None)
    return bool(np.max(np.abs(frame.T @ coef - a.coords)) <= tol)


def _chi_power(g: GroupGenerator, w: Element, s: complex):
    """chi(kappa(g, w))^s with the branch used on the tube."""
    if g.kind is GenKind.TRANSLATE:
        return np.ones(w.batch_shape, dtype=complex)
    if g.kind is GenKind.DILATE:
        return np.full(w.batch_shape, np.exp(s * np.log(complex(jordan_det(g.a)))))
    if g.kind is GenKind.INVERT:
        return np.exp(-s * log_det_tube(w))
    raise BranchError(f"{g.kind.value} is not in the tested generator set")


def _delta_twist(g: GroupGenerator, w: Element, k: Signature):
    """Delta_k(kappa(g, w) e), a scalar in the branch-safe configurations."""
    if g.kind is GenKind.TRANSLATE:
        return np.ones(w.batch_shape, dtype=complex)
    if g.kind is GenKind.DILATE:
        return np.full(w.batch_shape, complex(delta_k(mul(g.a, g.a), k)))
    l = k.parts[0]
    return jordan_det(w) ** (-2 * l)


def _check_configuration(params: WeightParams, g: GroupGenerator, x, y, gx, gy, rule):
    k = params.k
    constant_k = len(set(k.parts)) == 1
    if g.kind is GenKind.TRANSLATE:
        if np.iscomplexobj(g.a.coords) and np.any(g.a.coords.imag != 0):
            raise BranchError("translation parameter must be real")
    elif g.kind is GenKind.DILATE:
        if not (constant_k or frame_diagonal(g.a, 1e-14)):
            raise BranchError("Delta_k twist needs a frame-diagonal dilation")
    elif g.kind is GenKind.INVERT:
        if not constant_k:
            raise BranchError("inversion twist needs k = (l, ..., l)")
    else:
        raise BranchError(f"{g.kind.value} is not in the tested generator set")
    for p in (x, y, gx, gy):
        if not in_tube(p, 0.0):
            raise BranchError("point outside the tube")
    for p, q in ((x, y), (gx, gy)):
        if admissible_sign(p - q) == 0:
            raise BranchError("pair is not admissible")
        images = contour_chart(p, q)(rule.node_elements())
        if not np.all(in_tube(images, 0.0)):
            raise BranchError("contour leaves the tube")


def equivariance_residual(
    params: WeightParams,
    f: ScalarFunction,
    g: GroupGenerator,
    x: Element,
    y: Element,
    rule: QuadratureRule | None = None,
) -> EquivarianceResult:
    """Compare both sides of the intertwining relation in the tube picture.

    lhs = chi(kappa(g, x))^lam chi(kappa(g, y))^mu (F f)(g.x, g.y)
    rhs = (F f_g)(x, y),  f_g(w) = chi(kappa(g, w))^{lam + mu} Delta_k(kappa(g, w) e) f(g.w)
    """
    rule = rule or holo_rule(params)
    gx, gy = act(g, x), act(g, y)
    _check_configuration(params, g, x, y, gx, gy, rule)
    lam, mu = complex(params.lam), complex(params.mu)

    def twisted(w: Element):
        return _chi_power(g, w, lam + mu) * _delta_twist(g, w, params.k) * f(act(g, w))

    left = holo_up_scalar(params, f, gx, gy, rule)
    pre = complex(_chi_power(g, x, lam) * _chi_power(g, y, mu))
    right = holo_up_scalar(params, ScalarFunction.callback(twisted), x, y, rule)
    lhs = pre * left.value
    return EquivarianceResult(
        residual=abs(lhs - right.value),
        quad_error=abs(pre) * left.quad_error + right.quad_error,
        lhs=lhs,
        rhs=right.value,
    )
