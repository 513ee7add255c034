import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infravac import harmonics as hm
from infravac.fieldspace import (AUX, XI, FieldVector, GridMismatch, ShellGrid, WeylWord, automorphism,
                                 automorphism_phase,
                                 polarization_vectors, radial_coefficients, radial_profile, real_basis,
                                 shell_power_integral, symplectic_form, symplectic_gram, transverse_project,
                                 vacuum_functional, weyl_commutator_norm, weyl_group_commutator, weyl_multiply)

GRID = ShellGrid(1.0, 4)
LMAX = 2

seeds = st.integers(0, 2 ** 32 - 1)


def vec(seed, real=False):
    return FieldVector.random(GRID, LMAX, np.random.default_rng(seed), real=real)


def test_grid_edges_and_shells():
    g = ShellGrid(2.0, 3)
    assert np.allclose(g.edges, [2.0, 1.0, 0.5, 0.25])
    assert list(g.shell_of([2.0, 1.5, 1.0, 0.3, 0.2, 3.0])) == [1, 1, 2, 3, 0, 0]
    with pytest.raises(ValueError):
        ShellGrid(0.0, 3)


def test_radial_channels_orthonormal():
    g = ShellGrid(1.0, 3)
    i = 2
    a, b = g.eps(i + 1), g.eps(i)
    x, w = np.polynomial.legendre.leggauss(200)
    k = 0.5 * (b - a) * x + 0.5 * (b + a)
    w = 0.5 * (b - a) * w * k ** 2
    X = radial_profile(g, i, XI, k)
    A = radial_profile(g, i, AUX, k)
    assert abs(np.dot(w, X * X) - 1) < 1e-12
    assert abs(np.dot(w, A * A) - 1) < 1e-12
    assert abs(np.dot(w, X * A)) < 1e-12
    assert abs(shell_power_integral(g, i, -1) - np.log(2)) < 1e-15
    assert abs(radial_coefficients(g, i)["n_xi"] ** 2 - np.log(2)) < 1e-15


def test_evaluate_matches_norm():
    # ||f||^2 from coefficients equals the quadrature of |f(k)|^2 k^2 dk dOmega on one shell
    f = FieldVector.basis(GRID, LMAX, 2, XI, 1, 0, 1) + 0.5j * FieldVector.basis(GRID, LMAX, 2, AUX, 2, 1, -1)
    q = hm.SphericalQuadrature.gauss_product(8)
    a, b = GRID.eps(3), GRID.eps(2)
    x, w = np.polynomial.legendre.leggauss(40)
    r = 0.5 * (b - a) * x + 0.5 * (b + a)
    w = 0.5 * (b - a) * w * r ** 2
    total = 0.0
    for rr, ww in zip(r, w):
        vals = f.evaluate(rr * q.points)
        total += ww * q.integrate(np.sum(np.abs(vals) ** 2, axis=-1)).real
    assert abs(total - f.norm2()) < 1e-10


def test_grid_mismatch():
    f = FieldVector.zeros(GRID, LMAX)
    g = FieldVector.zeros(ShellGrid(1.0, 5), LMAX)
    with pytest.raises(GridMismatch):
        f + g
    with pytest.raises(ValueError):
        FieldVector(GRID, LMAX, np.zeros((2, 2, 2)))


def test_json_roundtrip():
    f = vec(7)
    g = FieldVector.from_json(f.to_json())
    assert np.array_equal(f.coeffs, g.coeffs)


def test_coefficients_frozen():
    f = vec(1)
    with pytest.raises(ValueError):
        f.coeffs[0, 0, 0] = 1.0


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_symplectic_form_antisymmetric(s1, s2):
    f, g = vec(s1), vec(s2)
    assert abs(symplectic_form(f, g) + symplectic_form(g, f)) < 1e-12
    assert abs(symplectic_form(f, 1j * f) - f.norm2()) < 1e-10 * max(1, f.norm2())


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_real_imag_decomposition(s):
    f = vec(s)
    assert f.real_part().is_real(1e-12)
    assert (f.real_part() + f.imag_part()).allclose(f)
    assert f.conj().conj().allclose(f)
    assert abs(f.conj().norm2() - f.norm2()) < 1e-10


def test_conj_is_pointwise_conjugate():
    f = vec(2)
    k = np.array([[0.3, 0.4, 0.5], [0.1, -0.2, 0.05]])
    assert np.allclose(f.conj().evaluate(k), np.conj(f.evaluate(k)), atol=1e-10)


def test_real_basis_gram_is_standard():
    B = real_basis(GRID, 1, shells=[1, 2])
    S = symplectic_gram(B)
    J = np.kron(np.eye(len(B) // 2), np.array([[0, 1], [-1, 0]]))
    assert np.allclose(S, J)


def test_polarization_and_projection():
    k = np.array([[0.3, 0.4, 0.866], [1.0, 0.0, 0.0]])
    k = k / np.linalg.norm(k, axis=1, keepdims=True)
    ep, em = polarization_vectors(k)
    assert np.allclose(np.sum(ep * k, axis=1), 0)
    assert np.allclose(np.sum(em * k, axis=1), 0)
    assert np.allclose(np.sum(ep * em, axis=1), 0)
    v = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    P = transverse_project(v, k)
    assert np.allclose(P, v - np.sum(v * k, axis=1, keepdims=True) * k)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, seeds)
def test_weyl_words_associative(a, b, c):
    A, B, C = (WeylWord.generator(0.3 * vec(s)) for s in (a, b, c))
    l = (A @ B) @ C
    r = A @ (B @ C)
    assert abs(l.phase - r.phase) < 1e-10
    assert l.displacement.allclose(r.displacement)
    e = A @ A.inverse()
    assert e.is_scalar() and abs(e.phase - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_group_commutator_phase(a, b):
    f, g = 0.4 * vec(a), 0.4 * vec(b)
    c = weyl_group_commutator(f, g)
    assert c.is_scalar(1e-12)
    assert abs(c.phase - np.exp(-2j * symplectic_form(f, g))) < 1e-10
    assert abs(weyl_commutator_norm(f, g) - abs(1 - c.phase)) < 1e-10


def test_vacuum_functional():
    f = vec(3)
    assert abs(vacuum_functional(f) - np.exp(-0.5 * f.norm2())) < 1e-15
    w = weyl_multiply([WeylWord.generator(f), WeylWord.generator(-f)])
    assert abs(vacuum_functional(w) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        weyl_multiply([])


@settings(max_examples=30, deadline=None)
@given(seeds, seeds, seeds)
def test_automorphism_is_homomorphism(a, b, c):
    v = 0.5 * vec(a)
    alpha = automorphism(v)
    A, B = WeylWord.generator(0.3 * vec(b)), WeylWord.generator(0.3 * vec(c))
    lhs = alpha(A @ B)
    rhs = alpha(A) @ alpha(B)
    assert abs(lhs.phase - rhs.phase) < 1e-10
    assert lhs.displacement.allclose(rhs.displacement)


@settings(max_examples=30, deadline=None)
@given(seeds, seeds, seeds)
def test_automorphism_phases_compose(a, b, c):
    # alpha_(v, 1) o alpha_(w, 1) = alpha_(v + w, 1)
    v, w, f = 0.5 * vec(a), 0.5 * vec(b), vec(c)
    A = WeylWord.generator(f)
    lhs = automorphism(v)(automorphism(w)(A))
    rhs = automorphism(v + w)(A)
    assert abs(lhs.phase - rhs.phase) < 1e-10
    assert abs(automorphism_phase(v, f) * automorphism_phase(w, f) - automorphism_phase(v + w, f)) < 1e-10
    assert abs(abs(automorphism_phase(v, f)) - 1.0) < 1e-12


def test_automorphism_phase_value():
    v, f = vec(1), vec(2)
    assert abs(automorphism_phase(v, f) - np.exp(-2j * symplectic_form(v, f))) < 1e-15
    assert automorphism_phase(v, 0.0 * f) == 1.0


def test_transverse_projection_idempotent_self_adjoint():
    rng = np.random.default_rng(4)
    k = rng.standard_normal((50, 3))
    k /= np.linalg.norm(k, axis=1, keepdims=True)
    f = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
    g = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
    Pf, Pg = transverse_project(f, k), transverse_project(g, k)
    assert np.abs(transverse_project(Pf, k) - Pf).max() <= 1e-10
    assert np.abs(np.sum(np.conj(Pf) * g, axis=1) - np.sum(np.conj(f) * Pg, axis=1)).max() <= 1e-10
    assert np.abs(np.sum(Pf * k, axis=1)).max() <= 1e-10
