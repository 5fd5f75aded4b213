"""Quadrature over the matrix interval 0 < z < e and over the cone.

A rule is built for a baked density

    reference domain:  rho(z) = det(z)^alpha det(e - z)^beta
    cone:              rho(z) = exp(-tr z) det(z)^alpha

so that ``sum_i w_i g(z_i)`` approximates ``int rho(z) g(z) dz``.  Measures are
Lebesgue measures for an orthonormal basis of the trace form.

Schemes
-------
GaussJacobi1D       rank one only; Gauss-Jacobi / generalized Laguerre.
EigenAngle          eigenvalues times a frame rotation (SymReal(2), Spin(n)).
CartesianIndicator  midpoint grid on a bounding box, restricted to the domain.
CartesianIterated   cone only; tensor Gauss rule in nested Cartesian variables.
MonteCarlo          seeded uniform sampling of the bounding box.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gamma as _gamma
from scipy.special import roots_genlaguerre, roots_jacobi

from .jordan import (
    Element,
    JordanAlgebra,
    Kind,
    _matrix_to_sym,
    algebra_from_name,
    jordan_det,
    jordan_trace,
    spectral,
    unit,
)

__all__ = [
    "SCHEMES",
    "QuadratureRule",
    "IntegrationResult",
    "CalibrationError",
    "UnsupportedScheme",
    "reference_rule",
    "cone_rule",
    "integrate",
    "integrate_weighted",
    "pairwise_sum",
    "angular_constant",
    "calibrate_angular_constant",
    "gauss_jacobi_01",
    "jacobi_rule",
    "sphere_rule",
    "default_scheme",
]

SCHEMES = ("GaussJacobi1D", "EigenAngle", "CartesianIndicator", "CartesianIterated", "MonteCarlo")
_CHUNK = 1 << 16


class UnsupportedScheme(ValueError):
    pass


class CalibrationError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    algebra: JordanAlgebra
    scheme: str
    size: int
    domain: str  # "reference" or "cone"
    alpha: float
    beta: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    companion: "QuadratureRule | None" = field(default=None, repr=False)
    samples: int | None = None  # MonteCarlo draws, including rejected ones
    seed: int | None = None

    @property
    def n_nodes(self) -> int:
        return len(self.weights)

    def node_elements(self) -> Element:
        return Element(self.algebra, self.nodes)

    def density(self, z: Element) -> np.ndarray:
        if self.domain == "cone":
            return np.exp(-jordan_trace(z)) * jordan_det(z) ** self.alpha
        e = unit(self.algebra)
        return jordan_det(z) ** self.alpha * jordan_det(e - z) ** self.beta

    def to_json(self) -> str:
        return json.dumps(
            {
                "scheme": self.scheme,
                "size": self.size,
                "algebra": self.algebra.name,
                "domain": self.domain,
                "alpha": self.alpha,
                "beta": self.beta,
                "nodes": self.nodes.tolist(),
                "weights": self.weights.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "QuadratureRule":
        d = json.loads(text)
        return cls(
            algebra_from_name(d["algebra"]),
            d["scheme"],
            int(d["size"]),
            d["domain"],
            float(d["alpha"]),
            float(d["beta"]),
            np.asarray(d["nodes"], dtype=float).reshape(len(d["weights"]), -1),
            np.asarray(d["weights"], dtype=float),
        )


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error: float

    def __iter__(self):
        return iter((self.value, self.error))


# --------------------------------------------------------------------------
# one-dimensional building blocks


def jacobi_rule(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jacobi rule on (-1, 1) for (1 - t)^a (1 + t)^b.

    scipy special-cases a + b = -1 only when the sum is exact; a rounding
    error away its recurrence divides by zero, so snap onto that case.
    """
    if abs(a + b + 1) < 1e-12:
        b = -1.0 - a
    return roots_jacobi(n, a, b)


def gauss_jacobi_01(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (0, 1) for the weight x^a (1 - x)^b."""
    t, w = jacobi_rule(n, b, a)
    return (1 + t) / 2, w / 2 ** (a + b + 1)


def _gauss_laguerre(n: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_genlaguerre(n, a)
    return x, w


def sphere_rule(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Product rule on the unit sphere S^m in R^{m+1}; weights sum to |S^m|.

    S^1 uses the periodic trapezoid rule with ``n`` points; higher spheres add
    a Gauss-Gegenbauer factor in the first coordinate.
    """
    if m == 0:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if m == 1:
        phi = 2 * np.pi * (np.arange(n) + 0.5) / n
        return np.stack([np.cos(phi), np.sin(phi)], axis=-1), np.full(n, 2 * np.pi / n)
    a = (m - 2) / 2
    t, wt = jacobi_rule(n, a, a)
    pts, wp = sphere_rule(m - 1, n)
    first = np.repeat(t, len(wp))
    rest = np.sqrt(1 - t**2)[:, None, None] * pts[None]
    out = np.concatenate([first[:, None], rest.reshape(-1, m)], axis=-1)
    return out, np.outer(wt, wp).ravel()


def _sphere_area(m: int) -> float:
    return 2 * math.pi ** ((m + 1) / 2) / _gamma((m + 1) / 2)


def angular_constant(algebra: JordanAlgebra) -> float:
    """Total mass of the angular factor in the eigenvalue integration formula.

    With a_1 > a_2 the eigenvalues, dz = c |a_1 - a_2|^d da_1 da_2 d(angle)
    where the angular measure is normalized to total mass 1.
    """
    if algebra.kind is Kind.RANK1:
        return 1.0
    if algebra.kind is Kind.SYMREAL and algebra.rank == 2:
        return math.sqrt(2) * math.pi
    if algebra.kind is Kind.SPIN:
        n = algebra.dim
        return 2 ** (1 - n / 2) * _sphere_area(n - 2)
    raise UnsupportedScheme(f"no eigenvalue parametrization for {algebra.name}")


def _frame_angles(algebra: JordanAlgebra, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Angular nodes with weights summing to 1."""
    if algebra.kind is Kind.SYMREAL:
        theta = np.pi * (np.arange(n) + 0.5) / n
        return theta[:, None], np.full(n, 1.0 / n)
    pts, w = sphere_rule(algebra.dim - 2, n)
    return pts, w / w.sum()


def _assemble(algebra: JordanAlgebra, a1, a2, ang) -> np.ndarray:
    """Coordinates of sum a_j c_j(angle), batched over a common leading axis."""
    if algebra.kind is Kind.SYMREAL:
        th = ang[..., 0]
        c, s = np.cos(th), np.sin(th)
        return np.stack([a1 * c * c + a2 * s * s, (a1 - a2) * c * s, a1 * s * s + a2 * c * c], axis=-1)
    xbar = ((a1 - a2) / 2)[..., None] * ang
    x1 = np.broadcast_to(((a1 + a2) / 2)[..., None], xbar.shape[:-1] + (1,))
    return np.concatenate([x1, xbar], axis=-1)


# --------------------------------------------------------------------------
# rule constructors


def default_scheme(algebra: JordanAlgebra) -> str:
    return "GaussJacobi1D" if algebra.kind is Kind.RANK1 else "EigenAngle"


def _check_exponents(alpha, beta):
    if alpha <= -1 or beta <= -1:
        raise ValueError("density exponents must exceed -1")


def reference_rule(
    algebra: JordanAlgebra,
    scheme: str = "EigenAngle",
    size: int = 32,
    alpha: float = 0.0,
    beta: float = 0.0,
    *,
    seed: int = 0,
    companion: bool = True,
    angular_const: float | None = None,
) -> QuadratureRule:
    """Rule on 0 < z < e for the density det(z)^alpha det(e - z)^beta."""
    _check_exponents(alpha, beta)
    if size < 1:
        raise ValueError("size must be positive")
    build = {
        "GaussJacobi1D": _ref_gj1d,
        "EigenAngle": _ref_eigen,
        "CartesianIndicator": _ref_cartesian,
        "MonteCarlo": _ref_montecarlo,
    }.get(scheme)
    if build is None:
        raise UnsupportedScheme(f"{scheme} has no reference-domain variant")
    kwargs = {}
    if scheme == "EigenAngle":
        kwargs["angular_const"] = angular_const
    if scheme == "MonteCarlo":
        kwargs["seed"] = seed
    nodes, weights, samples = build(algebra, size, alpha, beta, **kwargs)
    comp = None
    if companion and scheme != "MonteCarlo" and size > 1:
        comp = reference_rule(algebra, scheme, max(1, size // 2), alpha, beta,
                              companion=False, angular_const=angular_const)
    return QuadratureRule(algebra, scheme, size, "reference", float(alpha), float(beta),
                          nodes, weights, comp, samples, seed if scheme == "MonteCarlo" else None)


def _ref_gj1d(algebra, size, alpha, beta):
    if algebra.kind is not Kind.RANK1:
        raise UnsupportedScheme("GaussJacobi1D is for the rank-one algebra")
    x, w = gauss_jacobi_01(size, alpha, beta)
    return x[:, None], w, None


def _ref_eigen(algebra, size, alpha, beta, angular_const=None):
    if algebra.kind is Kind.RANK1 or (algebra.kind is Kind.SYMREAL and algebra.rank != 2):
        raise UnsupportedScheme(f"EigenAngle is not available for {algebra.name}")
    d = float(algebra.peirce_d)
    c = angular_constant(algebra) if angular_const is None else angular_const
    # a_2 = a_1 t: weight a1^{2 alpha + d + 1} (1 - a1)^beta times t^alpha (1 - t)^d
    a1, w1 = gauss_jacobi_01(size, 2 * alpha + d + 1, beta)
    t, wt = gauss_jacobi_01(size, alpha, d)
    ang, wa = _frame_angles(algebra, size)
    A1, T = np.meshgrid(a1, t, indexing="ij")
    A2 = A1 * T
    wr = np.outer(w1, wt) * (1 - A2) ** beta
    nodes = _assemble(algebra, A1.ravel()[:, None], A2.ravel()[:, None], ang[None, :, :])
    weights = c * wr.ravel()[:, None] * wa[None, :]
    return nodes.reshape(-1, algebra.dim), weights.ravel(), None


def _bounding_box(algebra: JordanAlgebra) -> tuple[np.ndarray, np.ndarray]:
    n = algebra.dim
    lo, hi = np.full(n, -0.5), np.full(n, 0.5)
    if algebra.kind is Kind.SYMREAL:
        # diagonal entries in (0, 1); off-diagonal |z_ij| < 1/2
        mask = _matrix_to_sym(np.eye(algebra.rank), algebra.rank).astype(bool)
        lo[mask], hi[mask] = 0.0, 1.0
    else:
        lo[0], hi[0] = 0.0, 1.0
    return lo, hi


def _interior_mask(algebra: JordanAlgebra, pts: np.ndarray) -> np.ndarray:
    z = Element(algebra, pts)
    w = Element(algebra, unit(algebra).coords - pts)
    if algebra.rank <= 2:
        # rank <= 2: in the cone iff tr > 0 and det > 0
        ok = (jordan_trace(z) > 0) & (jordan_trace(w) > 0)
        if algebra.rank == 2:
            ok &= (jordan_det(z) > 0) & (jordan_det(w) > 0)
        return ok
    return (spectral(z).eigenvalues[..., -1] > 0) & (spectral(w).eigenvalues[..., -1] > 0)


def _ref_cartesian(algebra, size, alpha, beta):
    lo, hi = _bounding_box(algebra)
    n = algebra.dim
    h = (hi - lo) / size
    axes = [lo[i] + h[i] * (np.arange(size) + 0.5) for i in range(n)]
    cell = float(np.prod(h)) * algebra.volume_factor
    nodes_out = []
    # sweep the first axis to keep memory bounded
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, n - 1) if n > 1 else np.zeros((1, 0))
    for v in axes[0]:
        pts = np.concatenate([np.full((len(rest), 1), v), rest], axis=-1)
        nodes_out.append(pts[_interior_mask(algebra, pts)])
    nodes = np.concatenate(nodes_out, axis=0)
    z = Element(algebra, nodes)
    rho = jordan_det(z) ** alpha * jordan_det(unit(algebra) - z) ** beta
    return nodes, cell * rho, None


def _ref_montecarlo(algebra, size, alpha, beta, seed=0):
    lo, hi = _bounding_box(algebra)
    rng = np.random.default_rng(seed)
    pts = lo + (hi - lo) * rng.random((size, algebra.dim))
    nodes = pts[_interior_mask(algebra, pts)]
    vol = float(np.prod(hi - lo)) * algebra.volume_factor
    z = Element(algebra, nodes)
    rho = jordan_det(z) ** alpha * jordan_det(unit(algebra) - z) ** beta
    return nodes, vol / size * rho, size


def cone_rule(
    algebra: JordanAlgebra,
    size: int = 32,
    alpha: float = 0.0,
    scheme: str | None = None,
    *,
    companion: bool = True,
    angular_const: float | None = None,
) -> QuadratureRule:
    """Rule on the cone for the density exp(-tr z) det(z)^alpha."""
    _check_exponents(alpha, 0.0)
    scheme = scheme or default_scheme(algebra)
    if algebra.kind is Kind.RANK1 and scheme in ("GaussJacobi1D", "CartesianIterated"):
        x, w = _gauss_laguerre(size, alpha)
        nodes, weights = x[:, None], w
    elif scheme == "EigenAngle":
        nodes, weights = _cone_eigen(algebra, size, alpha, angular_const)
    elif scheme == "CartesianIterated":
        nodes, weights = _cone_iterated(algebra, size, alpha)
    else:
        raise UnsupportedScheme(f"{scheme} has no cone variant for {algebra.name}")
    comp = None
    if companion and size > 1:
        comp = cone_rule(algebra, max(1, size // 2), alpha, scheme, companion=False,
                         angular_const=angular_const)
    return QuadratureRule(algebra, scheme, size, "cone", float(alpha), 0.0, nodes, weights, comp)


def _cone_eigen(algebra, size, alpha, angular_const):
    if algebra.kind is Kind.RANK1 or (algebra.kind is Kind.SYMREAL and algebra.rank != 2):
        raise UnsupportedScheme(f"EigenAngle is not available for {algebra.name}")
    d = float(algebra.peirce_d)
    c = angular_constant(algebra) if angular_const is None else angular_const
    # s = a1 + a2, a2 = s v / 2
    s, ws = _gauss_laguerre(size, 2 * alpha + d + 1)
    v, wv = gauss_jacobi_01(size, alpha, d)
    S, V = np.meshgrid(s, v, indexing="ij")
    A1, A2 = S * (1 - V / 2), S * V / 2
    wr = np.outer(ws, wv) * 2 ** (-alpha - 1) * (1 - V / 2) ** alpha
    ang, wa = _frame_angles(algebra, size)
    nodes = _assemble(algebra, A1.ravel()[:, None], A2.ravel()[:, None], ang[None, :, :])
    weights = c * wr.ravel()[:, None] * wa[None, :]
    return nodes.reshape(-1, algebra.dim), weights.ravel()


def _cone_iterated(algebra, size, alpha):
    if algebra.kind is Kind.SYMREAL and algebra.rank == 2:
        # q = sqrt(p s) xi: det = p s (1 - xi^2), dq = sqrt(p s) dxi
        p, wp = _gauss_laguerre(size, alpha + 0.5)
        xi, wx = jacobi_rule(size, alpha, alpha)
        P, S, X = np.meshgrid(p, p, xi, indexing="ij")
        nodes = np.stack([P, np.sqrt(P * S) * X, S], axis=-1).reshape(-1, 3)
        w = np.einsum("i,j,k->ijk", wp, wp, wx).ravel() * algebra.volume_factor
        return nodes, w
    if algebra.kind is Kind.SPIN:
        # xbar = x1 * b with b in the unit ball, nested as b_j = sqrt(1 - |b_<j|^2) xi_j
        m = algebra.dim - 1
        y, wy = _gauss_laguerre(size, 2 * alpha + m)
        x1 = y / 2
        wx1 = wy * 2.0 ** (-2 * alpha - m - 1)
        grids, wts = [x1], [wx1]
        for i in range(1, m + 1):
            t, wt = jacobi_rule(size, alpha + (m - i) / 2, alpha + (m - i) / 2)
            grids.append(t)
            wts.append(wt)
        mesh = np.meshgrid(*grids, indexing="ij")
        X1 = mesh[0]
        coords = [X1]
        rem = np.ones_like(X1)
        for xi in mesh[1:]:
            coords.append(X1 * np.sqrt(rem) * xi)
            rem = rem * (1 - xi**2)
        nodes = np.stack(coords, axis=-1).reshape(-1, algebra.dim)
        w = wts[0]
        for wt in wts[1:]:
            w = np.multiply.outer(w, wt)
        return nodes, w.ravel() * algebra.volume_factor
    raise UnsupportedScheme(f"CartesianIterated is not available for {algebra.name}")


# --------------------------------------------------------------------------
# integration


def pairwise_sum(values: np.ndarray):
    """Fixed-shape pairwise reduction; bit-reproducible for a given length."""
    v = np.asarray(values).ravel()
    if v.size == 0:
        return v.dtype.type(0)
    while v.size > 1:
        if v.size % 2:
            v = np.concatenate([v, np.zeros(1, dtype=v.dtype)])
        v = v[0::2] + v[1::2]
    return v[0]


def _evaluate(rule: QuadratureRule, g: Callable[[Element], np.ndarray]) -> np.ndarray:
    out = []
    for start in range(0, rule.n_nodes, _CHUNK):
        z = Element(rule.algebra, rule.nodes[start:start + _CHUNK])
        val = np.broadcast_to(np.asarray(g(z)), z.batch_shape)
        out.append(val)
    vals = np.concatenate(out) if out else np.zeros(0)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand is not finite at some node")
    return vals


def _sum(rule, vals):
    terms = rule.weights * vals
    return complex(pairwise_sum(terms)), float(pairwise_sum(np.abs(terms)))


def integrate_weighted(rule: QuadratureRule, g: Callable[[Element], np.ndarray]) -> IntegrationResult:
    """Approximate int rho(z) g(z) dz, with ``g`` evaluated on batched nodes."""
    value, mag = _sum(rule, _evaluate(rule, g))
    floor = 32 * np.finfo(float).eps * mag
    if rule.scheme == "MonteCarlo":
        terms = rule.weights * _evaluate(rule, g) * rule.samples
        n = rule.samples
        mean = pairwise_sum(terms) / n
        var = (pairwise_sum(np.abs(terms) ** 2) / n - abs(mean) ** 2)
        return IntegrationResult(value, float(math.sqrt(max(var, 0.0) / n)) + floor)
    if rule.companion is None:
        return IntegrationResult(value, floor)
    coarse, _ = _sum(rule.companion, _evaluate(rule.companion, g))
    return IntegrationResult(value, abs(value - coarse) + floor)


def integrate(rule: QuadratureRule, f: Callable[[Element], np.ndarray]) -> IntegrationResult:
    """Approximate the plain integral of ``f`` (the baked density is divided out)."""
    return integrate_weighted(rule, lambda z: np.asarray(f(z)) / rule.density(z))


def calibrate_angular_constant(algebra: JordanAlgebra, size: int = 24, tol: float = 1e-6) -> float:
    """Recover the angular constant of EigenAngle from Cartesian cone integrals.

    Two probes, exp(-tr z) and exp(-tr z) det(z) Delta_1(z), are integrated by
    the EigenAngle cone rule with unit angular constant and by the
    CartesianIterated cone rule; the ratio must be probe independent.
    """
    if algebra.kind is Kind.RANK1:
        return 1.0
    from .jordan import minor

    ratios = []
    for alpha, g in ((0.0, lambda z: np.ones(z.batch_shape)), (1.0, lambda z: minor(z, 1))):
        eig = cone_rule(algebra, size, alpha, "EigenAngle", companion=False, angular_const=1.0)
        cart = cone_rule(algebra, size, alpha, "CartesianIterated", companion=False)
        ratios.append(integrate_weighted(cart, g).value.real / integrate_weighted(eig, g).value.real)
    c = float(np.mean(ratios))
    if abs(ratios[0] - ratios[1]) > tol * abs(c):
        raise CalibrationError(f"probe-dependent angular constant: {ratios}")
    return c
