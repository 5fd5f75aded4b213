"""Concrete Euclidean Jordan algebras and their operator calculus.

Three families are supported: the rank-one algebra R, the symmetric matrices
Sym(r, R) and the spin factors R^n (r = 2).  Elements carry coordinates in the
natural basis of each family; the complexification is obtained by allowing
complex coordinates.  Every routine broadcasts over leading batch axes of the
coordinate array, so a whole quadrature grid can be pushed through at once.

Coordinates
-----------
Rank1        x
SymReal(r)   upper-triangular entries of the matrix, row major
Spin(n)      (x_1, xbar) with unit e = (1, 0, ..., 0)
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

__all__ = [
    "Kind",
    "JordanAlgebra",
    "Element",
    "LinearMap",
    "SpectralData",
    "AlgebraMismatch",
    "SingularElement",
    "DomainError",
    "rank1",
    "sym_real",
    "spin",
    "element",
    "unit",
    "mul",
    "jordan_det",
    "jordan_trace",
    "inner",
    "inverse",
    "lmap_L",
    "quad_P",
    "dmap_D",
    "bmap_B",
    "generic_norm",
    "spectral",
    "spectral_fn",
    "spectral_norm",
    "principal_sqrt",
    "minor",
    "trailing_minor",
    "sym2_to_spin3",
    "spin3_to_sym2",
    "algebra_from_name",
    "from_matrix",
]


class AlgebraMismatch(ValueError):
    pass


class SingularElement(ArithmeticError):
    pass


class DomainError(ValueError):
    """Eigenvalue outside the domain of a spectral function."""


class Kind(str, enum.Enum):
    RANK1 = "Rank1"
    SYMREAL = "SymReal"
    SPIN = "Spin"


@dataclass(frozen=True, eq=False)
class JordanAlgebra:
    kind: Kind
    rank: int
    dim: int
    peirce_d: Fraction
    structure: np.ndarray = field(repr=False)
    gram: np.ndarray = field(repr=False)

    @property
    def key(self) -> tuple:
        return (self.kind, self.rank, self.dim)

    def __eq__(self, other):
        return isinstance(other, JordanAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def name(self) -> str:
        if self.kind is Kind.RANK1:
            return "Rank1"
        if self.kind is Kind.SYMREAL:
            return f"SymReal({self.rank})"
        return f"Spin({self.dim})"

    @property
    def n_over_r(self) -> float:
        return self.dim / self.rank

    @property
    def volume_factor(self) -> float:
        """Jacobian between coordinate Lebesgue measure and trace-form measure."""
        return math.sqrt(np.linalg.det(self.gram))

    @functools.cached_property
    def frame(self) -> tuple["Element", ...]:
        r, n = self.rank, self.dim
        out = []
        for j in range(r):
            c = np.zeros(n)
            if self.kind is Kind.RANK1:
                c[0] = 1.0
            elif self.kind is Kind.SYMREAL:
                c[_sym_index(r)[j, j]] = 1.0
            else:
                c[0] = 0.5
                c[1] = 0.5 if j == 0 else -0.5
            out.append(Element(self, c))
        return tuple(out)

    def __repr__(self):
        return f"JordanAlgebra({self.name}, r={self.rank}, n={self.dim}, d={self.peirce_d})"


@functools.lru_cache(maxsize=None)
def _sym_index(r: int) -> np.ndarray:
    idx = np.zeros((r, r), dtype=int)
    k = 0
    for i in range(r):
        for j in range(i, r):
            idx[i, j] = idx[j, i] = k
            k += 1
    return idx


def _sym_to_matrix(coords: np.ndarray, r: int) -> np.ndarray:
    return coords[..., _sym_index(r)]


def _matrix_to_sym(mat: np.ndarray, r: int) -> np.ndarray:
    iu = np.triu_indices(r)
    return mat[..., iu[0], iu[1]]


def _build(kind: Kind, rank: int, dim: int, d, product) -> JordanAlgebra:
    basis = np.eye(dim)
    C = np.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            C[i, j] = product(basis[i], basis[j])
    # trace form (x|y) = tr(x o y); tr is linear, read it off the product with e
    tr = np.array([_raw_trace(kind, rank, basis[k]) for k in range(dim)])
    gram = np.einsum("ijk,k->ij", C, tr)
    return JordanAlgebra(kind, rank, dim, Fraction(d), C, gram)


def _raw_trace(kind, rank, x):
    if kind is Kind.RANK1:
        return x[..., 0]
    if kind is Kind.SYMREAL:
        return np.trace(_sym_to_matrix(x, rank), axis1=-2, axis2=-1)
    return 2 * x[..., 0]


@functools.lru_cache(maxsize=None)
def rank1() -> JordanAlgebra:
    return _build(Kind.RANK1, 1, 1, 0, lambda x, y: x * y)


@functools.lru_cache(maxsize=None)
def sym_real(r: int) -> JordanAlgebra:
    if r < 1:
        raise ValueError("rank must be positive")

    def prod(x, y):
        X, Y = _sym_to_matrix(x, r), _sym_to_matrix(y, r)
        return _matrix_to_sym((X @ Y + Y @ X) / 2, r)

    return _build(Kind.SYMREAL, r, r * (r + 1) // 2, 1, prod)


@functools.lru_cache(maxsize=None)
def spin(n: int) -> JordanAlgebra:
    if n < 3:
        raise ValueError("spin factor needs n >= 3")

    def prod(x, y):
        out = np.empty(n)
        out[0] = x[0] * y[0] + x[1:] @ y[1:]
        out[1:] = x[0] * y[1:] + y[0] * x[1:]
        return out

    return _build(Kind.SPIN, 2, n, n - 2, prod)


@dataclass(frozen=True, eq=False)
class Element:
    """Point of the complexified algebra, possibly a batch of points.

    ``coords`` has shape ``(..., n)``; leading axes are batch axes.
    """

    algebra: JordanAlgebra
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords)
        if not np.iscomplexobj(c):
            c = c.astype(float)
        if c.shape[-1:] != (self.algebra.dim,):
            raise ValueError(
                f"coords last axis must be {self.algebra.dim}, got shape {c.shape}"
            )
        object.__setattr__(self, "coords", c)

    @property
    def scalar_kind(self) -> str:
        return "Complex" if np.iscomplexobj(self.coords) else "Real"

    @property
    def batch_shape(self) -> tuple:
        return self.coords.shape[:-1]

    @property
    def real(self) -> "Element":
        return Element(self.algebra, self.coords.real.copy())

    @property
    def imag(self) -> "Element":
        return Element(self.algebra, np.asarray(self.coords.imag, dtype=float).copy())

    def conj(self) -> "Element":
        return Element(self.algebra, np.conj(self.coords))

    def matrix(self) -> np.ndarray:
        """Matrix form (SymReal only)."""
        if self.algebra.kind is not Kind.SYMREAL:
            raise TypeError("matrix form only exists for SymReal")
        return _sym_to_matrix(self.coords, self.algebra.rank)

    def __getitem__(self, idx) -> "Element":
        if not self.batch_shape:
            raise IndexError("unbatched element")
        return Element(self.algebra, self.coords[idx])

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Element):
            _same(self, other)
            return other.coords
        return np.asarray(other)[..., None] * unit(self.algebra).coords

    def __add__(self, other):
        return Element(self.algebra, self.coords + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.algebra, self.coords - self._coerce(other))

    def __rsub__(self, other):
        return Element(self.algebra, self._coerce(other) - self.coords)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, s):
        if isinstance(s, Element):
            raise TypeError("use mul() for the Jordan product")
        return Element(self.algebra, np.asarray(s)[..., None] * self.coords)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return Element(self.algebra, self.coords / np.asarray(s)[..., None])

    def __repr__(self):
        return f"Element({self.algebra.name}, {np.array2string(self.coords, precision=6)})"


def element(algebra: JordanAlgebra, coords) -> Element:
    return Element(algebra, np.asarray(coords))


def from_matrix(algebra: JordanAlgebra, mat) -> Element:
    if algebra.kind is not Kind.SYMREAL:
        raise TypeError("from_matrix needs a SymReal algebra")
    mat = np.asarray(mat)
    return Element(algebra, _matrix_to_sym((mat + np.swapaxes(mat, -1, -2)) / 2, algebra.rank))


Element.from_matrix = staticmethod(from_matrix)


def unit(algebra: JordanAlgebra) -> Element:
    return Element(algebra, sum(c.coords for c in algebra.frame))


def _same(x: Element, y: Element) -> JordanAlgebra:
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"{x.algebra.name} vs {y.algebra.name}")
    return x.algebra


# --------------------------------------------------------------------------
# products, trace, determinant


def mul(x: Element, y: Element) -> Element:
    A = _same(x, y)
    return Element(A, np.einsum("...i,...j,ijk->...k", x.coords, y.coords, A.structure))


def jordan_trace(x: Element):
    return _raw_trace(x.algebra.kind, x.algebra.rank, x.coords)


def jordan_det(x: Element):
    A = x.algebra
    c = x.coords
    if A.kind is Kind.RANK1:
        return c[..., 0]
    if A.kind is Kind.SPIN:
        return c[..., 0] ** 2 - np.sum(c[..., 1:] ** 2, axis=-1)
    if A.rank == 2:
        return c[..., 0] * c[..., 2] - c[..., 1] ** 2
    return np.linalg.det(x.matrix())


def inner(x: Element, y: Element):
    """Trace form (x|y) = tr(x o y), bilinear (no conjugation)."""
    A = _same(x, y)
    return np.einsum("...i,ij,...j->...", x.coords, A.gram, y.coords)


def inverse(x: Element) -> Element:
    A = x.algebra
    det = jordan_det(x)
    if np.any(det == 0) or not np.all(np.isfinite(det)):
        raise SingularElement("element is not invertible")
    c = x.coords
    if A.kind is Kind.RANK1:
        return Element(A, 1.0 / c)
    if A.kind is Kind.SPIN:
        out = np.concatenate([c[..., :1], -c[..., 1:]], axis=-1)
        return Element(A, out / det[..., None])
    return Element(A, _matrix_to_sym(np.linalg.inv(x.matrix()), A.rank))


# --------------------------------------------------------------------------
# linear maps


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Endomorphism of the algebra acting on coordinate vectors.

    ``matrix`` may carry batch axes in front of the trailing ``(n, n)`` block.
    """

    algebra: JordanAlgebra
    matrix: np.ndarray

    def __call__(self, x: Element) -> Element:
        _same(Element(self.algebra, np.zeros(self.algebra.dim)), x)
        return Element(self.algebra, np.einsum("...ij,...j->...i", self.matrix, x.coords))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.algebra != self.algebra:
            raise AlgebraMismatch("composition across algebras")
        return LinearMap(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other):
        return LinearMap(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other):
        return LinearMap(self.algebra, self.matrix - other.matrix)

    def __mul__(self, s):
        return LinearMap(self.algebra, np.asarray(s)[..., None, None] * self.matrix)

    __rmul__ = __mul__

    def inv(self) -> "LinearMap":
        return LinearMap(self.algebra, np.linalg.inv(self.matrix))

    def det(self):
        return np.linalg.det(self.matrix)

    def trace(self):
        return np.trace(self.matrix, axis1=-2, axis2=-1)

    def transpose(self) -> "LinearMap":
        """Adjoint with respect to the trace form."""
        G = self.algebra.gram
        return LinearMap(self.algebra, np.linalg.solve(G, np.swapaxes(self.matrix, -1, -2) @ G))

    def op_norm(self):
        """Operator norm for the Hermitian form (x | conj y)."""
        G = self.algebra.gram
        w, V = np.linalg.eigh(G)
        half = V @ np.diag(np.sqrt(w)) @ V.T
        ihalf = V @ np.diag(1 / np.sqrt(w)) @ V.T
        return np.linalg.norm(half @ self.matrix @ ihalf, ord=2, axis=(-2, -1))

    @classmethod
    def identity(cls, algebra: JordanAlgebra) -> "LinearMap":
        return cls(algebra, np.eye(algebra.dim))


def lmap_L(x: Element) -> LinearMap:
    A = x.algebra
    return LinearMap(A, np.einsum("...i,ijk->...kj", x.coords, A.structure))


def quad_P(x: Element) -> LinearMap:
    L = lmap_L(x).matrix
    return LinearMap(x.algebra, 2 * L @ L - lmap_L(mul(x, x)).matrix)


def dmap_D(x: Element, y: Element) -> LinearMap:
    A = _same(x, y)
    Lx, Ly = lmap_L(x).matrix, lmap_L(y).matrix
    return LinearMap(A, 2 * (Lx @ Ly + lmap_L(mul(y, x)).matrix - Ly @ Lx))


def bmap_B(x: Element, y: Element) -> LinearMap:
    A = _same(x, y)
    eye = np.eye(A.dim)
    return LinearMap(A, eye - dmap_D(x, y).matrix + quad_P(x).matrix @ quad_P(y).matrix)


def generic_norm(x: Element, y: Element):
    """Generic norm h(x, y), holomorphic in both arguments.

    Characterised by Det B(x, y) = h(x, y)^(2n/r); h(x, conj x) > 0 cuts out
    the bounded domain.
    """
    A = _same(x, y)
    if A.kind is Kind.RANK1:
        return 1 - x.coords[..., 0] * y.coords[..., 0]
    if A.kind is Kind.SPIN:
        q = x.coords[..., 0] * y.coords[..., 0] + np.sum(x.coords[..., 1:] * y.coords[..., 1:], axis=-1)
        return 1 - 2 * q + jordan_det(x) * jordan_det(y)
    X, Y = x.matrix(), y.matrix()
    return np.linalg.det(np.eye(A.rank) - X @ Y)


def spectral_norm(x: Element):
    """|x|_inf, the square root of the operator norm of D(x, conj x)/2."""
    return np.sqrt(dmap_D(x, x.conj()).op_norm() / 2)


# --------------------------------------------------------------------------
# spectral calculus


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray  # (..., r), non-increasing
    idempotents: tuple  # r Elements, each with the batch shape of the input

    def reconstruct(self) -> Element:
        out = self.idempotents[0] * self.eigenvalues[..., 0]
        for j in range(1, len(self.idempotents)):
            out = out + self.idempotents[j] * self.eigenvalues[..., j]
        return out


def spectral(x: Element, tol: float = 1e-10) -> SpectralData:
    A = x.algebra
    if np.iscomplexobj(x.coords):
        raise DomainError("spectral decomposition needs a real element")
    c = x.coords
    if A.kind is Kind.RANK1:
        data = SpectralData(c.copy(), (Element(A, np.ones_like(c)),))
    elif A.kind is Kind.SPIN:
        xbar = c[..., 1:]
        rho = np.linalg.norm(xbar, axis=-1)
        safe = rho > 1e-300
        v = np.where(safe[..., None], xbar / np.where(safe, rho, 1.0)[..., None], 0.0)
        v[..., 0] = np.where(safe, v[..., 0], 1.0)
        half = np.full(c.shape[:-1] + (1,), 0.5)
        c1 = np.concatenate([half, v / 2], axis=-1)
        c2 = np.concatenate([half, -v / 2], axis=-1)
        lam = np.stack([c[..., 0] + rho, c[..., 0] - rho], axis=-1)
        data = SpectralData(lam, (Element(A, c1), Element(A, c2)))
    else:
        w, V = np.linalg.eigh(x.matrix())
        w, V = w[..., ::-1], V[..., ::-1]
        idem = tuple(
            Element(A, _matrix_to_sym(V[..., :, j, None] * V[..., None, :, j], A.rank))
            for j in range(A.rank)
        )
        data = SpectralData(w, idem)
    err = np.max(np.abs(data.reconstruct().coords - c), initial=0.0)
    scale = max(1.0, float(np.max(np.abs(c), initial=0.0)))
    if err > tol * scale:
        raise ArithmeticError(f"spectral reconstruction error {err:.3e}")
    return data


_SPECTRAL = {
    "inv": (np.reciprocal, lambda t: t != 0),
    "sqrt": (np.sqrt, lambda t: t > 0),
    "log": (np.log, lambda t: t > 0),
    "tanh": (np.tanh, lambda t: np.isfinite(t)),
    "artanh": (np.arctanh, lambda t: np.abs(t) < 1),
}


def spectral_fn(x: Element, fn: str, s: float | None = None) -> Element:
    """Apply a scalar function eigenvalue-wise: sum_j fn(a_j) c_j.

    ``fn`` is one of inv, sqrt, pow (needs ``s``), log, tanh, artanh.
    """
    sd = spectral(x)
    lam = sd.eigenvalues
    if fn == "pow":
        if s is None:
            raise ValueError("pow needs an exponent")
        f, ok = (lambda t: t**s), (lambda t: t > 0)
        if float(s).is_integer() and s >= 0:
            ok = np.isfinite
    else:
        try:
            f, ok = _SPECTRAL[fn]
        except KeyError:
            raise ValueError(f"unknown spectral function {fn!r}") from None
    if not np.all(ok(lam)):
        raise DomainError(f"eigenvalue outside the domain of {fn}")
    vals = f(lam)
    out = sd.idempotents[0] * vals[..., 0]
    for j in range(1, len(sd.idempotents)):
        out = out + sd.idempotents[j] * vals[..., j]
    return out


def principal_sqrt(x: Element) -> Element:
    """Principal square root for elements whose real part lies in the cone.

    Rank 2 uses s = (x + sqrt(det x) e) / sqrt(tr x + 2 sqrt(det x)), which
    holds whenever both eigenvalues have positive real part.
    """
    A = x.algebra
    c = x.coords.astype(complex)
    e = unit(A).coords
    if A.kind is Kind.RANK1:
        return Element(A, np.sqrt(c))
    if A.rank == 2:
        sdet = np.sqrt(jordan_det(Element(A, c)))
        denom = np.sqrt(jordan_trace(Element(A, c)) + 2 * sdet)
        return Element(A, (c + sdet[..., None] * e) / denom[..., None])
    if c.ndim != 1:
        return Element(A, np.stack([principal_sqrt(Element(A, ci)).coords for ci in c.reshape(-1, A.dim)]).reshape(c.shape))
    return Element(A, _matrix_to_sym(scipy.linalg.sqrtm(_sym_to_matrix(c, A.rank)), A.rank))


# --------------------------------------------------------------------------
# frame-adapted minors


def minor(x: Element, j: int):
    """Leading principal minor Delta_j adapted to the fixed Jordan frame."""
    A = x.algebra
    if not 1 <= j <= A.rank:
        raise ValueError("minor index out of range")
    c = x.coords
    if A.kind is Kind.RANK1:
        return c[..., 0]
    if A.kind is Kind.SPIN:
        return c[..., 0] + c[..., 1] if j == 1 else jordan_det(x)
    if j == A.rank:
        return jordan_det(x)
    return np.linalg.det(x.matrix()[..., :j, :j])


def trailing_minor(x: Element, j: int):
    """Minor adapted to the reversed frame (highest weight variant)."""
    A = x.algebra
    if not 1 <= j <= A.rank:
        raise ValueError("minor index out of range")
    c = x.coords
    if A.kind is Kind.RANK1:
        return c[..., 0]
    if A.kind is Kind.SPIN:
        return c[..., 0] - c[..., 1] if j == 1 else jordan_det(x)
    if j == A.rank:
        return jordan_det(x)
    return np.linalg.det(x.matrix()[..., A.rank - j:, A.rank - j:])


# --------------------------------------------------------------------------
# Sym(2, R) <-> Spin(3)

_S2_TO_SP3 = np.array([[0.5, 0.0, 0.5], [0.5, 0.0, -0.5], [0.0, 1.0, 0.0]])


def sym2_to_spin3(x: Element) -> Element:
    if x.algebra != sym_real(2):
        raise AlgebraMismatch("expected SymReal(2)")
    return Element(spin(3), x.coords @ _S2_TO_SP3.T)


def spin3_to_sym2(x: Element) -> Element:
    if x.algebra != spin(3):
        raise AlgebraMismatch("expected Spin(3)")
    return Element(sym_real(2), x.coords @ np.linalg.inv(_S2_TO_SP3).T)


def algebra_from_name(name: str) -> JordanAlgebra:
    """Parse ``Rank1``, ``SymReal(r)`` or ``Spin(n)``."""
    s = name.replace(" ", "")
    if s == "Rank1":
        return rank1()
    for prefix, factory in (("SymReal(", sym_real), ("Spin(", spin)):
        if s.startswith(prefix) and s.endswith(")"):
            try:
                return factory(int(s[len(prefix):-1]))
            except ValueError as exc:
                raise ValueError(f"bad algebra name {name!r}") from exc
    raise ValueError(f"bad algebra name {name!r}")
