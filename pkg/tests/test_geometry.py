import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holocone.geometry import (
    GroupGenerator,
    act,
    cocycle_chi,
    cocycle_map,
    contour_chart,
    in_cone,
    in_disk,
    in_tube,
    log_det_tube,
    midpoint_resolvent,
    quasi_inverse,
)
from holocone.jordan import (
    DomainError,
    Element,
    SingularElement,
    from_matrix,
    inverse,
    jordan_det,
    quad_P,
    rank1,
    sym_real,
    unit,
)
from holocone.quadrature import reference_rule

from conftest import ALGEBRAS, RANK2
from helpers import random_disk, random_real, random_tube, rel, rel1

alg = st.sampled_from(ALGEBRAS)
seeds = st.integers(0, 2**32 - 1)


def test_membership_examples(algebra):
    e = unit(algebra)
    assert in_cone(e)
    assert not in_disk(e)
    assert in_tube(e * 1j)
    assert not in_cone(-e)
    assert in_disk(e * 0.5)


def test_quasi_inverse_examples():
    A = sym_real(2)
    x = Element(A, [1.0, 0.2, 2.0])
    assert np.allclose(quasi_inverse(x, Element(A, np.zeros(3))).coords, x.coords)
    R = rank1()
    assert quasi_inverse(Element(R, [2.0]), Element(R, [0.25])).coords[0] == pytest.approx(4)


def test_quasi_inverse_singular():
    R = rank1()
    with pytest.raises(SingularElement):
        quasi_inverse(Element(R, [2.0]), Element(R, [0.5]))


@given(alg, seeds)
def test_quasi_inverse_two_formulas(A, seed):
    rng = np.random.default_rng(seed)
    x, v = random_real(A, rng), random_real(A, rng, 0.05, 0.3)
    assert rel1(quasi_inverse(x, v).coords, inverse(inverse(x) - v).coords) < 1e-10


def test_generator_examples(algebra):
    A = algebra
    zero = Element(A, np.zeros(A.dim))
    ie = unit(A) * 1j
    assert np.allclose(act(GroupGenerator.cayley(), zero).coords, ie.coords)
    assert np.allclose(act(GroupGenerator.inverse_cayley(), ie).coords, 0)
    assert np.allclose(act(GroupGenerator.invert(), unit(A)).coords, -unit(A).coords)
    assert cocycle_chi(GroupGenerator.invert(), unit(A)) == pytest.approx(1)
    a = unit(A) * 2
    assert cocycle_chi(GroupGenerator.dilate(a), zero) == pytest.approx(2**A.rank)


def test_dilate_requires_cone():
    with pytest.raises(DomainError):
        GroupGenerator.dilate(Element(sym_real(2), [1.0, 0.0, -1.0]))


def test_invert_domain():
    with pytest.raises(DomainError):
        act(GroupGenerator.invert(), Element(sym_real(2), [1.0, 1.0, 1.0]))


@given(alg, seeds, st.sampled_from(["Cayley", "InverseCayley", "Invert", "Dilate"]))
def test_cocycle_is_derivative(A, seed, kind):
    rng = np.random.default_rng(seed)
    x = random_disk(A, rng, 0.5)
    if kind == "Invert":
        x = x + unit(A) * 2
    if kind == "InverseCayley":
        x = act(GroupGenerator.cayley(), x)
    g = GroupGenerator.dilate(random_real(A, rng, positive=True)) if kind == "Dilate" else GroupGenerator(kind)
    h = Element(A, 1e-5 * rng.normal(size=A.dim))
    num = (act(g, x + h).coords - act(g, x - h).coords) / 2
    assert rel1(num, cocycle_map(g, x)(h).coords) < 1e-6
    # chi is a character: Det kappa = chi^{2n/r}
    assert rel(cocycle_map(g, x).det(), cocycle_chi(g, x) ** (2 * A.dim / A.rank)) < 1e-9


@given(alg, seeds)
def test_cayley_round_trip(A, seed):
    x = random_disk(A, np.random.default_rng(seed))
    y = act(GroupGenerator.cayley(), x)
    assert in_tube(y)
    assert rel1(act(GroupGenerator.inverse_cayley(), y).coords, x.coords) < 1e-10


@given(alg, seeds)
def test_inversion_factorization(A, seed):
    rng = np.random.default_rng(seed)
    x, y = random_real(A, rng, positive=True), random_real(A, rng, positive=True)
    lhs = quad_P(-inverse(x) + inverse(y)).matrix
    rhs = (quad_P(x).inv() @ quad_P(x - y) @ quad_P(y).inv()).matrix
    assert rel1(lhs, rhs) < 1e-9


def test_midpoint_resolvent_examples():
    R = rank1()
    m = midpoint_resolvent(Element(R, [0.5]), Element(R, [0.0]), Element(R, [1.0]))
    assert m.coords[0] == pytest.approx(0.25)
    A = sym_real(2)
    y = from_matrix(A, np.diag([0.1, 0.2]))
    x = from_matrix(A, np.diag([1.1, 2.6]))
    m = midpoint_resolvent((x + y) * 0.5, y, x)
    assert np.allclose(m.coords, ((x - y) * 0.25).coords)


@given(alg, seeds)
def test_hua_det_identity(A, seed):
    rng = np.random.default_rng(seed)
    y = random_real(A, rng)
    x = y + random_real(A, rng, 0.5, 2.0, positive=True)
    w = y + random_real(A, rng, 0.1, 0.4, positive=True)
    m = midpoint_resolvent(w, y, x)
    assert rel(jordan_det(m), jordan_det(w - y) * jordan_det(x - w) / jordan_det(x - y)) < 1e-11


@given(alg, seeds)
def test_resolvent_equivariance(A, seed):
    rng = np.random.default_rng(seed)
    y = random_real(A, rng)
    x = y + random_real(A, rng, 0.5, 2.0, positive=True)
    w = y + random_real(A, rng, 0.1, 0.4, positive=True)
    m = midpoint_resolvent(w, y, x)
    t = GroupGenerator.translate(random_real(A, rng))
    assert rel1(midpoint_resolvent(act(t, w), act(t, y), act(t, x)).coords, m.coords) < 1e-10
    d = GroupGenerator.dilate(random_real(A, rng, 0.5, 2.0, positive=True))
    lhs = midpoint_resolvent(act(d, w), act(d, y), act(d, x)).coords
    assert rel1(lhs, quad_P(d.a)(m).coords) < 1e-10


def test_chart_examples():
    A = sym_real(2)
    ch = contour_chart(unit(A), Element(A, np.zeros(3)))
    assert np.allclose(ch.sqrt_map.matrix, np.eye(3))
    R = rank1()
    ch = contour_chart(Element(R, [0.8]), Element(R, [0.2]))
    assert ch(Element(R, [0.0])).coords[0] == pytest.approx(0.2)
    assert ch(Element(R, [1.0])).coords[0] == pytest.approx(0.8)


def test_chart_rejects_inadmissible():
    A = sym_real(2)
    with pytest.raises(DomainError):
        contour_chart(Element(A, [1.0, 0.0, -1.0]), Element(A, np.zeros(3)))


@pytest.mark.parametrize("A", RANK2 + [sym_real(3)], ids=lambda a: a.name)
def test_chart_in_disk_and_relative_invariance(A):
    rng = np.random.default_rng(7)
    zs = Element(A, reference_rule(A, "MonteCarlo", 400, seed=3).nodes[:50])
    for _ in range(10):
        y = random_disk(A, rng, 0.3)
        u = random_real(A, rng, 0.05, 0.5, positive=True)
        ch = contour_chart(y + u, y)
        assert np.allclose((ch.sqrt_map @ ch.sqrt_map).matrix, quad_P(u).matrix, atol=1e-10)
        imgs = ch(zs)
        assert np.all(in_disk(imgs))
        assert rel(jordan_det(ch.sqrt_map(zs)), jordan_det(u) * jordan_det(zs)) < 1e-10


@pytest.mark.parametrize("A", RANK2, ids=lambda a: a.name)
def test_chart_symmetry(A):
    rng = np.random.default_rng(11)
    zs = Element(A, reference_rule(A, "MonteCarlo", 400, seed=5).nodes[:50])
    for _ in range(10):
        y = random_tube(A, rng)
        x = y + Element(A, random_real(A, rng, 0.3, 1.0, positive=True).coords + 0.1j * rng.normal(size=A.dim))
        fwd = contour_chart(x, y)(zs)
        back = contour_chart(y, x)(unit(A) - zs)
        assert np.allclose(fwd.coords, back.coords, atol=1e-12)


def test_chart_images_in_tube():
    A = sym_real(2)
    rng = np.random.default_rng(2)
    zs = Element(A, reference_rule(A, "EigenAngle", 6).nodes)
    for _ in range(20):
        x, y = random_tube(A, rng), random_tube(A, rng)
        try:
            ch = contour_chart(x, y)
        except DomainError:
            continue
        # convex combination of imaginary parts is not guaranteed; only check the endpoints
        assert np.allclose(ch(Element(A, np.zeros(3))).coords, y.coords)
        assert np.allclose(ch(unit(A)).coords, x.coords)


@given(st.sampled_from(RANK2 + [rank1(), sym_real(3)]), seeds)
def test_log_det_tube_branch(A, seed):
    w = random_tube(A, np.random.default_rng(seed))
    ld = log_det_tube(w)
    assert np.exp(ld) == pytest.approx(complex(jordan_det(w)), rel=1e-12)
    # on i * cone the branch is the obvious one
    b = random_real(A, np.random.default_rng(seed + 1), positive=True)
    assert log_det_tube(b * 1j) == pytest.approx(np.log(jordan_det(b)) + A.rank * 0.5j * np.pi)
