"""Domains, generator actions with cocycles, and the contour chart.

The bounded domain D = {|x|_inf < 1}, the cone Omega and the tube
T_Omega = n+ + i Omega.  Contours between two points are only ever handled
through the reference-domain chart z -> y + P(u^{1/2}) z with u = x - y and
z in the matrix interval 0 < z < e.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .jordan import (
    DomainError,
    Element,
    LinearMap,
    SingularElement,
    bmap_B,
    inverse,
    jordan_det,
    principal_sqrt,
    quad_P,
    spectral,
    spectral_norm,
    unit,
    Kind,
    _sym_to_matrix,
)

__all__ = [
    "DEFAULT_TOL",
    "in_cone",
    "in_disk",
    "in_tube",
    "quasi_inverse",
    "GenKind",
    "GroupGenerator",
    "act",
    "cocycle_chi",
    "cocycle_map",
    "complex_eigenvalues",
    "log_det_tube",
    "ContourChart",
    "contour_chart",
    "admissible_sign",
    "midpoint_resolvent",
]

DEFAULT_TOL = 1e-9


def _min_eig(x: Element):
    return spectral(x).eigenvalues[..., -1]


def in_cone(x: Element, tol: float = DEFAULT_TOL):
    """All eigenvalues strictly above ``tol``; complex input must be real."""
    if np.iscomplexobj(x.coords):
        if np.any(x.coords.imag != 0):
            return np.zeros(x.batch_shape, dtype=bool) if x.batch_shape else False
        x = x.real
    out = _min_eig(x) > tol
    return out if x.batch_shape else bool(out)


def in_disk(x: Element, tol: float = DEFAULT_TOL):
    out = spectral_norm(x) < 1 - tol
    return out if x.batch_shape else bool(out)


def in_tube(x: Element, tol: float = DEFAULT_TOL):
    """Imaginary part inside the cone."""
    return in_cone(x.imag, tol)


def quasi_inverse(x: Element, v: Element) -> Element:
    """x^v = B(x, v)^{-1}(x - P(x) v)."""
    B = bmap_B(x, v)
    detB = B.det()
    if np.any(np.abs(detB) < 1e-300):
        raise SingularElement("B(x, v) is singular")
    rhs = x - quad_P(x)(v)
    return Element(x.algebra, np.linalg.solve(B.matrix, rhs.coords[..., None])[..., 0])


# --------------------------------------------------------------------------
# generators


class GenKind(str, enum.Enum):
    TRANSLATE = "Translate"
    DILATE = "Dilate"
    INVERT = "Invert"
    CAYLEY = "Cayley"
    INVERSE_CAYLEY = "InverseCayley"


@dataclass(frozen=True)
class GroupGenerator:
    kind: GenKind
    a: Element | None = None

    def __post_init__(self):
        kind = GenKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in (GenKind.TRANSLATE, GenKind.DILATE) and self.a is None:
            raise ValueError(f"{kind.value} needs a parameter")
        if kind is GenKind.DILATE and not in_cone(self.a, 0.0):
            raise DomainError("Dilate parameter must lie in the cone")

    @classmethod
    def translate(cls, a: Element):
        return cls(GenKind.TRANSLATE, a)

    @classmethod
    def dilate(cls, a: Element):
        return cls(GenKind.DILATE, a)

    @classmethod
    def invert(cls):
        return cls(GenKind.INVERT)

    @classmethod
    def cayley(cls):
        return cls(GenKind.CAYLEY)

    @classmethod
    def inverse_cayley(cls):
        return cls(GenKind.INVERSE_CAYLEY)


def _cayley(x: Element) -> Element:
    e = unit(x.algebra)
    num = x + 1j * e
    den = x * 1j + e
    return _jordan_quotient(num, den)


def _inverse_cayley(w: Element) -> Element:
    # solve w = (x + ie) o (ix + e)^{-1} for x: x = (w - ie) o (e - iw)^{-1}
    e = unit(w.algebra)
    return _jordan_quotient(w - 1j * e, e - w * 1j)


def _jordan_quotient(num: Element, den: Element) -> Element:
    # num and den are polynomials in the same element, so they operator-commute
    from .jordan import mul

    if np.any(np.abs(jordan_det(den)) < 1e-300):
        raise DomainError("Cayley transform undefined at this point")
    return mul(num, inverse(den))


def act(g: GroupGenerator, x: Element) -> Element:
    if g.kind is GenKind.TRANSLATE:
        return x + g.a
    if g.kind is GenKind.DILATE:
        return quad_P(g.a)(x)
    if g.kind is GenKind.INVERT:
        if np.any(jordan_det(x) == 0):
            raise DomainError("inversion needs an invertible point")
        return -inverse(x)
    if g.kind is GenKind.CAYLEY:
        return _cayley(x)
    return _inverse_cayley(x)


def cocycle_map(g: GroupGenerator, x: Element) -> LinearMap:
    """Linear part kappa(g, x), the complex derivative of x -> g.x."""
    A = x.algebra
    if g.kind is GenKind.TRANSLATE:
        return LinearMap(A, np.broadcast_to(np.eye(A.dim), x.batch_shape + (A.dim, A.dim)))
    if g.kind is GenKind.DILATE:
        return quad_P(g.a)
    if g.kind is GenKind.INVERT:
        return quad_P(x).inv()
    e = unit(A)
    if g.kind is GenKind.CAYLEY:
        # d/dx (x + ie) o (ix + e)^{-1} = 2 P(ix + e)^{-1}
        return quad_P(x * 1j + e).inv() * 2
    return quad_P(e - x * 1j).inv() * 2


def cocycle_chi(g: GroupGenerator, x: Element):
    """chi(kappa(g, x)), with chi(P(a)) = det(a)."""
    if g.kind is GenKind.TRANSLATE:
        return np.ones(x.batch_shape)
    if g.kind is GenKind.DILATE:
        return jordan_det(g.a) * np.ones(x.batch_shape)
    if g.kind is GenKind.INVERT:
        return 1 / jordan_det(x)
    e = unit(x.algebra)
    if g.kind is GenKind.CAYLEY:
        return 1 / jordan_det((x * 1j + e) * 2**-0.5)
    return 1 / jordan_det((e - x * 1j) * 2**-0.5)


def complex_eigenvalues(x: Element) -> np.ndarray:
    """Eigenvalues of a complex element (roots of the minimal polynomial)."""
    A = x.algebra
    c = x.coords.astype(complex)
    if A.kind is Kind.RANK1:
        return c
    if A.kind is Kind.SPIN:
        rad = np.sqrt(np.sum(c[..., 1:] ** 2, axis=-1))
        return np.stack([c[..., 0] + rad, c[..., 0] - rad], axis=-1)
    return np.linalg.eigvals(_sym_to_matrix(c, A.rank))


def log_det_tube(w: Element):
    """Continuous logarithm of det on the tube T_Omega.

    det(w) = i^r det(-i w), and -i w has real part in the cone, so every
    eigenvalue of -i w lies in the right half-plane where Log is continuous.
    """
    if not np.all(in_tube(w, 0.0)):
        raise DomainError("point is not in the tube")
    eig = complex_eigenvalues(w * -1j)
    return np.sum(np.log(eig), axis=-1) + w.algebra.rank * 0.5j * np.pi


# --------------------------------------------------------------------------
# contour chart


def admissible_sign(u: Element) -> int:
    """+1 if Re u lies in the cone, -1 if -Re u does, 0 otherwise."""
    re = u.real
    if in_cone(re, 0.0):
        return 1
    if in_cone(-re, 0.0):
        return -1
    return 0


@dataclass(frozen=True)
class ContourChart:
    base: Element
    u: Element
    sqrt_map: LinearMap
    valid: bool = True

    def __call__(self, z: Element) -> Element:
        return self.base + self.sqrt_map(z)


def contour_chart(x: Element, y: Element) -> ContourChart:
    """Chart z -> y + P(s) z with s^2 = x - y, mapping 0 < z < e onto C(x, y).

    For Re u in -Omega the root is s = i (-u)^{1/2}, so that P(s) = -P((-u)^{1/2}).
    """
    u = x - y
    if u.batch_shape:
        raise ValueError("contour_chart expects single points")
    sign = admissible_sign(u)
    if sign == 0:
        raise DomainError("x - y has no real part in the cone or its negative")
    s = principal_sqrt(u) if sign > 0 else principal_sqrt(-u) * 1j
    Ps = quad_P(s)
    real = not (np.iscomplexobj(x.coords) or np.iscomplexobj(y.coords))
    if real:
        Ps = LinearMap(Ps.algebra, Ps.matrix.real)
    return ContourChart(base=y, u=u, sqrt_map=Ps, valid=True)


def midpoint_resolvent(w: Element, y: Element, x: Element) -> Element:
    """((w - y)^{-1} + (x - w)^{-1})^{-1}."""
    a, b = w - y, x - w
    for t in (a, b, x - y):
        if np.any(np.abs(jordan_det(t)) < 1e-300):
            raise SingularElement("singular difference")
    return inverse(inverse(a) + inverse(b))
