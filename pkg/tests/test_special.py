import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gamma as G

from holocone.jordan import Element, from_matrix, quad_P, rank1, spin, sym_real, unit
from holocone.special import (
    ParameterError,
    Signature,
    WeightParams,
    beta_constant,
    check_dual_power,
    collapse_check,
    delta_k,
    gamma_r,
    pochhammer,
    pochhammer_r,
)

from conftest import ALGEBRAS
from helpers import random_real, rel

alg = st.sampled_from(ALGEBRAS)
weight = st.floats(0.3, 6.0)


def random_signature(r, rng, top=4):
    return Signature(tuple(sorted(rng.integers(0, top, r), reverse=True)))


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature((1, 2))
    with pytest.raises(ValueError):
        Signature((1, -1))
    assert Signature.of(3).parts == (3,)
    assert (Signature((2, 1)) + Signature((1, 1))).parts == (3, 2)


def test_weight_params_convergence_condition():
    A = sym_real(2)
    WeightParams(0.6, 0.6, (0, 0), A)
    with pytest.raises(ParameterError):
        WeightParams(0.4, 2, (0, 0), A)
    # the bound moves with k_r
    WeightParams(-0.3, 2, (1, 1), A)
    with pytest.raises(ValueError):
        WeightParams(2, 2, (1,), A)


def test_gamma_r_examples():
    assert gamma_r(rank1(), 3) == pytest.approx(2)
    assert gamma_r(sym_real(2), 2).real == pytest.approx(2.221441469, rel=1e-9)
    assert gamma_r(sym_real(2), 2) == pytest.approx(math.sqrt(2 * math.pi) * math.sqrt(math.pi) / 2)


def test_gamma_r_complex_matches_scipy():
    lam = 2.3 + 0.8j
    A = sym_real(2)
    assert gamma_r(A, lam, (1, 0)) == pytest.approx(math.sqrt(2 * math.pi) * G(lam + 1) * G(lam - 0.5), rel=1e-13)


def test_gamma_pole():
    with pytest.raises(ParameterError):
        gamma_r(rank1(), -2)
    with pytest.raises(ParameterError):
        gamma_r(sym_real(2), 0.5)


@given(alg, weight, st.integers(0, 2**32 - 1))
def test_gamma_ratio_is_pochhammer(A, lam, seed):
    k = random_signature(A.rank, np.random.default_rng(seed))
    lam = lam + A.n_over_r
    ratio = gamma_r(A, lam, k) / gamma_r(A, lam)
    assert ratio == pytest.approx(pochhammer_r(A, lam, (0,) * A.rank, k), rel=1e-12)


def test_pochhammer_examples():
    A = sym_real(2)
    assert pochhammer_r(A, 0.7, (0, 0), (0, 0)) == 1
    lam = Fraction(7, 3)
    assert pochhammer_r(A, lam, (0, 0), (2, 1)) == lam * (lam + 1) * (lam - Fraction(1, 2))
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)


@given(alg, st.floats(-3, 3), st.integers(0, 2**32 - 1))
def test_pochhammer_reflection(A, lam, seed):
    rng = np.random.default_rng(seed)
    k, m = random_signature(A.rank, rng), random_signature(A.rank, rng)
    lhs = pochhammer_r(A, lam, k, m)
    shift = tuple(-kv - mv for kv, mv in zip(k.dual(), m.dual()))
    rhs = (-1) ** m.size * pochhammer_r(A, -lam + A.n_over_r, shift, m.dual())
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_beta_rank1_values():
    R = rank1()
    assert beta_constant(WeightParams(2, 2, 1, R)) == pytest.approx(1 / 30, rel=1e-14)
    assert beta_constant(WeightParams(2, 2, 0, R)) == pytest.approx(1 / 6, rel=1e-14)


def test_beta_rank2_value():
    A = sym_real(2)
    expected = gamma_r(A, 2) ** 2 / gamma_r(A, 4)
    assert beta_constant(WeightParams(2, 2, (0, 0), A)) == pytest.approx(expected, rel=1e-13)
    assert beta_constant(WeightParams(2, 2, (0, 0), A)).real == pytest.approx(0.0987307319590747, rel=1e-12)


@given(alg, weight, weight, st.integers(0, 2**32 - 1))
def test_beta_symmetry_exact(A, lam, mu, seed):
    k = random_signature(A.rank, np.random.default_rng(seed))
    lam, mu = lam + A.n_over_r, mu + A.n_over_r
    assert beta_constant(WeightParams(lam, mu, k, A)) == beta_constant(WeightParams(mu, lam, k, A))


def test_collapse_examples():
    a, b = collapse_check(rank1(), 2, 2, 1)
    assert a == pytest.approx(1 / 30) and b == pytest.approx(1 / 30)
    a, b = collapse_check(sym_real(2), 3, 2.5, 0)
    assert a == b
    a, b = collapse_check(sym_real(2), 3, 2.5, 2)
    assert abs(a - b) <= 1e-12 * abs(b)


@given(alg, weight, weight, st.integers(0, 5))
def test_collapse_property(A, lam, mu, l):
    a, b = collapse_check(A, lam + A.n_over_r - 1, mu + A.n_over_r - 1, l)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_delta_examples():
    A = sym_real(2)
    assert delta_k(unit(A), (2, 1)) == 1
    assert delta_k(from_matrix(A, np.diag([2.0, 3.0])), (2, 1)) == pytest.approx(12)
    assert delta_k(Element(rank1(), [3.0]), (2,)) == 9


def test_delta_spin_convention():
    x = Element(spin(4), [2.0, 0.5, 0.3, -0.2])
    assert delta_k(x, (1, 0)) == pytest.approx(2.5)
    assert delta_k(x, (1, 1)) == pytest.approx(4 - 0.25 - 0.09 - 0.04)


def test_delta_complex_is_polynomial(rng):
    A = sym_real(2)
    z = Element(A, rng.normal(size=3) + 1j * rng.normal(size=3))
    M = z.matrix()
    assert delta_k(z, (3, 1)) == pytest.approx(M[0, 0] ** 2 * np.linalg.det(M))


@given(st.sampled_from([sym_real(2), sym_real(3), spin(3), spin(4)]), st.integers(0, 2**32 - 1))
def test_delta_equivariance_under_frame_dilation(A, seed):
    rng = np.random.default_rng(seed)
    z = Element(A, rng.normal(size=A.dim))
    k = random_signature(A.rank, rng)
    root = Element(A, sum(np.sqrt(c) * e.coords for c, e in zip(rng.uniform(0.3, 2, A.rank), A.frame)))
    a = quad_P(root)(unit(A))
    assert rel(delta_k(quad_P(root)(z), k), delta_k(a, k) * delta_k(z, k)) < 1e-11


@given(alg, st.integers(0, 2**32 - 1))
def test_delta_multiplicative(A, seed):
    rng = np.random.default_rng(seed)
    k, k2 = random_signature(A.rank, rng), random_signature(A.rank, rng)
    x = Element(A, sum(c * e.coords for c, e in zip(rng.uniform(0.3, 2, A.rank), A.frame)))
    assert rel(delta_k(x, k + k2), delta_k(x, k) * delta_k(x, k2)) < 1e-12


def test_dual_power_examples():
    A = sym_real(2)
    assert check_dual_power(unit(A), (2, 1), 3) == pytest.approx((1, 1))
    lhs, rhs = check_dual_power(Element(rank1(), [3.0]), 1, 2)
    assert lhs == pytest.approx(3) and rhs == pytest.approx(3)
    with pytest.raises(ValueError):
        check_dual_power(unit(A), (2, 1), 1)


@given(alg, st.integers(0, 2**32 - 1))
def test_dual_power_property(A, seed):
    rng = np.random.default_rng(seed)
    x = random_real(A, rng, positive=True)
    k = random_signature(A.rank, rng)
    lhs, rhs = check_dual_power(x, k, k.parts[0] + int(rng.integers(0, 3)))
    assert rel(lhs, rhs) < 1e-11
