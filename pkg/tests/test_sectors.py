from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infravac import sectors as sc
from infravac.fieldspace import ShellGrid
from infravac.kpr import KPRMap

VELOCITIES = [(0.0, 0.0, 0.3), (0.2, 0.0, 0.0), (0.0, 0.25, 0.1)]


@pytest.fixture(scope="module")
def basis():
    B = sc.DressingBasis(KPRMap(ShellGrid(1.0, 8), 4), VELOCITIES)
    B.certify()
    return B


seeds = st.integers(0, 2 ** 32 - 1)


def test_basis_validation():
    T = KPRMap(ShellGrid(1.0, 4), 2)
    with pytest.raises(ValueError):
        sc.DressingBasis(T, [(0.1, 0, 0), (0.1, 0, 0)])
    with pytest.raises(ValueError):
        sc.DressingBasis(T, [(0.0, 0.0, 0.0)])


def test_uncertified_direction_rejected():
    B = sc.DressingBasis(KPRMap(ShellGrid(1.0, 4), 2), [(0.0, 0.0, 0.2)])
    u = sc.DualVector.dressing(B, 0)
    with pytest.raises(sc.UncertifiedDirection):
        sc.transpose_action(-1, u)
    B.certify()
    assert sc.transpose_action(-1, u).in_R()


def test_basis_mismatch(basis):
    other = sc.DressingBasis(basis.kpr, VELOCITIES)
    with pytest.raises(sc.BasisMismatch):
        sc.DualVector.zero(basis) + sc.DualVector.zero(other)


def test_transpose_bound(basis):
    with pytest.raises(ValueError):
        sc.transpose_action(9, sc.DualVector.zero(basis))


def test_dual_vector_classification(basis):
    v = sc.DualVector.dressing(basis, 0)
    assert v.in_S() and not v.in_R()
    assert sc.DualVector.dressing(basis, 1, p=1).in_R()
    assert not sc.DualVector.dressing(basis, 1, p=-1).in_S()
    w = v.scale(Fraction(1, 2)) + v.scale(Fraction(1, 2)) - v
    assert w.symbols == () and w.in_R()


def test_multiplication_rule(basis):
    # (0, T)(v, 1) = ((T^-1)^t v, T) = (T v, T)
    v = sc.DualVector.dressing(basis, 0)
    g = sc.ModelGroupElement.power(basis, 1) * sc.ModelGroupElement.translation(v)
    assert g.k == 1
    assert g.v.coeffs == {(0, 1): 1}
    assert np.allclose(g.v.square_part.coeffs, basis.Tv(0).coeffs)


def test_inverse_transpose_not_square(basis):
    ev = sc.transpose_not_square_evidence(basis)
    assert ev["growth_exponent"] > 1.5
    assert ev["shell_norm2_last"] > ev["shell_norm2_first"]


def test_independence(basis):
    cert = sc.independence_certificate(basis)
    assert cert["ok"]
    assert cert["gram_min_eigenvalue"] > 1e-6


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_group_axioms(basis, seed):
    rng = np.random.default_rng(seed)
    g1, g2, g3 = (sc.random_element(basis, rng) for _ in range(3))
    l, r = (g1 * g2) * g3, g1 * (g2 * g3)
    scale = max(1.0, l.v.magnitude(), r.v.magnitude(), (g1 * g2).v.magnitude(), (g2 * g3).v.magnitude())
    assert l.equals(r, 1e-12 * scale)
    e = sc.ModelGroupElement.identity(basis)
    gi = g1.inverse()
    scale = max(1.0, gi.v.magnitude(), g1.v.magnitude())
    assert (g1 * gi).equals(e, 1e-12 * scale)
    assert (gi * g1).equals(e, 1e-12 * scale)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_stabilizer_closed(basis, seed):
    rng = np.random.default_rng(seed)
    h1, h2 = (sc.random_stabilizer_element(basis, rng) for _ in range(2))
    assert (h1 * h2).in_stabilizer()
    assert h1.inverse().in_stabilizer()


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_T_normalizes_S_into_R(basis, seed):
    rng = np.random.default_rng(seed)
    s = sc.random_S_element(basis, rng)
    aT = sc.ModelGroupElement.power(basis, 1)
    assert not sc.normalizer_violations(aT, [s])
    if not s.in_stabilizer():
        assert sc.normalizer_violations(sc.ModelGroupElement.identity(basis), [s])


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_label_invariant_under_stabilizer(basis, seed):
    rng = np.random.default_rng(seed)
    x0 = sc.SectorLabel.vacuum(basis)
    g = sc.random_element(basis, rng)
    h = sc.random_stabilizer_element(basis, rng)
    assert sc.sector_act(x0, h * g) == sc.sector_act(x0, g)
    assert hash(sc.sector_act(x0, h * g)) == hash(sc.sector_act(x0, g))


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([0, 1]))
def test_class_iteration(basis, seed, k):
    rng = np.random.default_rng(seed)
    x0 = sc.SectorLabel.vacuum(basis)
    a = sc.ModelGroupElement.power(basis, k)
    g = sc.random_element(basis, rng)
    x = sc.sector_act(x0, g)
    c1, c2 = sc.conjugate_classes_model(x, x0, a)
    hs = [sc.random_stabilizer_element(basis, rng) for _ in range(2)]
    for y in sc.class_sample(c2, x0, a, hs):
        assert c2.contains(y, x0, a)
        assert sc.conjugate_classes_model(y, x0, a)[0] == c1
    for y in sc.class_sample(c1, x0, a, hs):
        assert c1.contains(y, x0, a)
        assert sc.conjugate_classes_model(y, x0, a)[0] == c2


def test_gx_must_reach_x(basis):
    x0 = sc.SectorLabel.vacuum(basis)
    x = sc.sector_act(x0, sc.ModelGroupElement.translation(sc.DualVector.dressing(basis, 0)))
    with pytest.raises(sc.OutsideModelOrbit):
        sc.conjugate_classes_model(x, x0, sc.ModelGroupElement.power(basis, 1),
                                   gx=sc.ModelGroupElement.identity(basis))


def test_merging_and_non_merging(basis):
    x0 = sc.SectorLabel.vacuum(basis)
    e = sc.ModelGroupElement.identity(basis)
    aT = sc.ModelGroupElement.power(basis, 1)
    xs = [sc.sector_act(x0, sc.ModelGroupElement.translation(sc.DualVector.dressing(basis, j))) for j in range(3)]
    assert len(set(xs + [x0])) == 4
    without = [sc.conjugate_classes_model(x, x0, e) for x in xs]
    assert len({c[0] for c in without}) == 3
    vac = sc.conjugate_classes_model(x0, x0, aT)
    for x in xs:
        assert sc.conjugate_classes_model(x, x0, aT) == vac


def test_verify_all_claims(basis):
    out = sc.verify_sector_theorems(basis, n_samples=6, seed=3)
    bad = [c["claim"] for c in out["claims"] if not c["ok"]]
    assert not bad
    assert out["model_axiom"] == sc.MODEL_AXIOM
    assert out["d"] == 3
