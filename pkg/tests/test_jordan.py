import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holocone.jordan import (
    AlgebraMismatch,
    DomainError,
    Element,
    LinearMap,
    algebra_from_name,
    bmap_B,
    dmap_D,
    element,
    from_matrix,
    generic_norm,
    inner,
    inverse,
    jordan_det,
    jordan_trace,
    lmap_L,
    mul,
    principal_sqrt,
    quad_P,
    rank1,
    spectral,
    spectral_fn,
    spectral_norm,
    spin,
    spin3_to_sym2,
    sym2_to_spin3,
    sym_real,
    unit,
)

from conftest import ALGEBRAS
from helpers import random_disk, random_real, rel, rel1

seeds = st.integers(0, 2**32 - 1)
alg = st.sampled_from(ALGEBRAS)


# ---------------------------------------------------------------- structure

def test_dimension_formula(algebra):
    r, d = algebra.rank, algebra.peirce_d
    assert algebra.dim == r + d / 2 * r * (r - 1)


def test_frame_is_jordan_frame(algebra):
    fr = algebra.frame
    e = unit(algebra)
    assert np.allclose(sum(c.coords for c in fr), e.coords, atol=1e-12)
    for i, a in enumerate(fr):
        for j, b in enumerate(fr):
            prod = mul(a, b).coords
            assert np.allclose(prod, a.coords if i == j else 0, atol=1e-12)
            if i != j:
                assert np.allclose(dmap_D(a, b).matrix, 0, atol=1e-12)


def test_algebra_names_round_trip(algebra):
    assert algebra_from_name(algebra.name) == algebra
    with pytest.raises(ValueError):
        algebra_from_name("Herm(3)")


def test_coords_length_checked():
    with pytest.raises(ValueError):
        Element(sym_real(2), [1.0, 2.0])


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        mul(unit(sym_real(2)), unit(spin(3)))


# ---------------------------------------------------------------- examples

def test_rank1_product():
    R = rank1()
    assert mul(element(R, [2.0]), element(R, [3.0])).coords[0] == 6.0


def test_unit_axiom(algebra, rng):
    x = Element(algebra, rng.normal(size=algebra.dim))
    assert np.allclose(mul(x, unit(algebra)).coords, x.coords, atol=1e-14)


def test_sym2_matrix_product(rng):
    A = sym_real(2)
    x, y = Element(A, rng.normal(size=3)), Element(A, rng.normal(size=3))
    X, Y = x.matrix(), y.matrix()
    assert np.allclose(mul(x, y).matrix(), (X @ Y + Y @ X) / 2, atol=1e-14)


def test_det_trace_examples():
    assert jordan_det(from_matrix(sym_real(2), [[2, 1], [1, 2]])) == pytest.approx(3)
    x = element(spin(3), [2.0, 1.0, 0.0])
    assert jordan_det(x) == 3 and jordan_trace(x) == 4
    for A in ALGEBRAS:
        e = unit(A)
        assert jordan_det(e) == pytest.approx(1) and jordan_trace(e) == A.rank
        assert inner(e, e) == pytest.approx(A.rank)


def test_P_examples(rng):
    R = rank1()
    assert quad_P(element(R, [3.0]))(element(R, [2.0])).coords[0] == 18.0
    A = sym_real(2)
    x, z = Element(A, rng.normal(size=3)), Element(A, rng.normal(size=3))
    assert np.allclose(quad_P(x)(z).matrix(), x.matrix() @ z.matrix() @ x.matrix(), atol=1e-12)
    for B in ALGEBRAS:
        y = Element(B, rng.normal(size=B.dim))
        assert np.allclose(quad_P(y)(unit(B)).coords, mul(y, y).coords, atol=1e-12)


def test_B_definition(algebra, rng):
    x, y = Element(algebra, rng.normal(size=algebra.dim)), Element(algebra, rng.normal(size=algebra.dim))
    expect = np.eye(algebra.dim) - dmap_D(x, y).matrix + quad_P(x).matrix @ quad_P(y).matrix
    assert np.allclose(bmap_B(x, y).matrix, expect)
    assert np.allclose(quad_P(x).matrix, 2 * lmap_L(x).matrix @ lmap_L(x).matrix - lmap_L(mul(x, x)).matrix)


def test_generic_norm_examples(algebra, rng):
    x = random_disk(algebra, rng)
    assert generic_norm(x, Element(algebra, np.zeros(algebra.dim))) == pytest.approx(1)
    R = rank1()
    assert generic_norm(element(R, [0.5]), element(R, [0.5])) == pytest.approx(0.75)


def test_spectral_examples():
    sd = spectral(element(spin(3), [2.0, 1.0, 0.0]))
    assert np.allclose(sd.eigenvalues, [3, 1])
    for A in ALGEBRAS:
        assert np.allclose(spectral(unit(A)).eigenvalues, 1)


def test_sym2_eigen_quadratic_formula(rng):
    A = sym_real(2)
    for _ in range(20):
        p, q, s = rng.normal(size=3)
        disc = np.sqrt((p - s) ** 2 + 4 * q * q)
        got = spectral(Element(A, [p, q, s])).eigenvalues
        assert np.allclose(got, [(p + s + disc) / 2, (p + s - disc) / 2], atol=1e-12)


def test_spectral_idempotents_form_frame(algebra, rng):
    sd = spectral(random_real(algebra, rng))
    for i, a in enumerate(sd.idempotents):
        for j, b in enumerate(sd.idempotents):
            assert np.allclose(mul(a, b).coords, a.coords if i == j else 0, atol=1e-12)


def test_spectral_fn_examples(rng):
    R = rank1()
    assert spectral_fn(element(R, [4.0]), "sqrt").coords[0] == 2
    for A in ALGEBRAS:
        assert np.allclose(spectral_fn(unit(A), "inv").coords, unit(A).coords)
    A = sym_real(2)
    x = random_real(A, rng, positive=True)
    assert np.allclose(spectral_fn(x, "inv").matrix(), np.linalg.inv(x.matrix()), atol=1e-12)


def test_spectral_fn_domain_errors():
    x = element(sym_real(2), [1.0, 0.0, -1.0])
    for fn in ("sqrt", "log"):
        with pytest.raises(DomainError):
            spectral_fn(x, fn)
    with pytest.raises(DomainError):
        spectral_fn(element(sym_real(2), [0.5, 0.0, 1.5]), "artanh")
    with pytest.raises(ValueError):
        spectral_fn(x, "cosh")


def test_artanh_tanh_inverse(algebra, rng):
    x = random_real(algebra, rng, 0.1, 0.9)
    back = spectral_fn(spectral_fn(x, "artanh"), "tanh")
    assert np.allclose(back.coords, x.coords, atol=1e-12)


def test_spectral_norm_examples(rng):
    for A in ALGEBRAS:
        assert spectral_norm(unit(A)) == pytest.approx(1)
    assert spectral_norm(element(rank1(), [0.3 + 0.4j])) == pytest.approx(0.5)
    A = sym_real(2)
    for _ in range(20):
        z = Element(A, rng.normal(size=3) + 1j * rng.normal(size=3))
        assert spectral_norm(z) == pytest.approx(np.linalg.svd(z.matrix(), compute_uv=False)[0], rel=1e-12)


def test_principal_sqrt_squares_back(algebra, rng):
    x = random_real(algebra, rng, positive=True)
    u = Element(algebra, x.coords + 0.2j * rng.normal(size=algebra.dim))
    s = principal_sqrt(u)
    assert np.allclose(mul(s, s).coords, u.coords, atol=1e-12)
    # principal branch: real part of the root stays in the cone
    if algebra.rank <= 2:
        assert np.all(spectral(s.real).eigenvalues > 0)


def test_linear_map_algebra(rng):
    A = sym_real(2)
    a, b = LinearMap(A, rng.normal(size=(3, 3))), LinearMap(A, rng.normal(size=(3, 3)))
    x = Element(A, rng.normal(size=3))
    assert np.allclose((a @ b)(x).coords, a(b(x)).coords)
    assert np.allclose(a.inv()(a(x)).coords, x.coords)


# ---------------------------------------------------------------- properties

@given(alg, seeds)
def test_power_associativity(A, seed):
    x = random_real(A, np.random.default_rng(seed))
    assert rel(mul(x, mul(x, x)).coords, spectral_fn(x, "pow", 3).coords) < 1e-10


@given(alg, seeds)
def test_det_P(A, seed):
    x = random_real(A, np.random.default_rng(seed))
    assert rel(quad_P(x).det(), jordan_det(x) ** (2 * A.dim / A.rank)) < 1e-9


@given(alg, seeds)
def test_det_B_generic_norm(A, seed):
    rng = np.random.default_rng(seed)
    x, y = random_disk(A, rng), random_disk(A, rng)
    assert rel(bmap_B(x, y).det(), generic_norm(x, y) ** (2 * A.dim / A.rank)) < 1e-9


@given(alg, seeds)
def test_P_of_inverse(A, seed):
    x = random_real(A, np.random.default_rng(seed))
    assert rel1(quad_P(inverse(x)).matrix, quad_P(x).inv().matrix) < 1e-9


@given(alg, seeds)
def test_inner_from_trace_D(A, seed):
    rng = np.random.default_rng(seed)
    x = Element(A, rng.normal(size=A.dim) + 1j * rng.normal(size=A.dim))
    y = Element(A, rng.normal(size=A.dim))
    assert rel1(inner(x, y), A.rank / (2 * A.dim) * dmap_D(x, y).trace()) < 1e-10
    assert inner(x, y) == pytest.approx(inner(y, x))


@given(alg, seeds)
def test_inverse_identities(A, seed):
    x = random_real(A, np.random.default_rng(seed))
    xi = inverse(x)
    assert np.allclose(mul(x, xi).coords, unit(A).coords, atol=1e-10)
    assert np.allclose(quad_P(x)(xi).coords, x.coords, atol=1e-10)


@given(alg, seeds)
def test_spectral_reconstruction(A, seed):
    x = random_real(A, np.random.default_rng(seed))
    sd = spectral(x)
    assert np.all(np.diff(sd.eigenvalues) <= 0)
    assert rel1(sd.reconstruct().coords, x.coords) < 1e-10


@given(seeds)
def test_sym2_spin3_isomorphism(seed):
    rng = np.random.default_rng(seed)
    A = sym_real(2)
    x, y = random_real(A, rng), random_real(A, rng)
    tx, ty = sym2_to_spin3(x), sym2_to_spin3(y)
    assert rel1(sym2_to_spin3(mul(x, y)).coords, mul(tx, ty).coords) < 1e-10
    assert jordan_det(x) == pytest.approx(jordan_det(tx), rel=1e-10)
    assert jordan_trace(x) == pytest.approx(jordan_trace(tx), rel=1e-10)
    assert np.allclose(spectral(x).eigenvalues, spectral(tx).eigenvalues, atol=1e-10)
    assert np.allclose(spin3_to_sym2(tx).coords, x.coords)
    # trace forms agree, so the isomorphism is an isometry
    assert inner(x, y) == pytest.approx(inner(tx, ty), rel=1e-10)


def test_batched_operations_match_loop(rng):
    A = spin(4)
    xs = Element(A, rng.normal(size=(5, 4)))
    ys = Element(A, rng.normal(size=(5, 4)))
    batched = mul(xs, ys).coords
    looped = np.stack([mul(xs[i], ys[i]).coords for i in range(5)])
    assert np.array_equal(batched, looped)
    assert quad_P(xs).matrix.shape == (5, 4, 4)
