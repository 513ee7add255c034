import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infravac import dressing as dr
from infravac import harmonics as hm
from infravac.fieldspace import XI, AUX, ShellGrid
from infravac.kpr import KPRMap

GRID = ShellGrid(1.0, 12)
T = KPRMap(GRID, 12)
SPEC = dr.DressingSpec((0.0, 0.0, 0.3))


@pytest.fixture(scope="module")
def report():
    return dr.convergence_diagnostics(SPEC, T)


def test_velocity_validation():
    with pytest.raises(dr.InvalidVelocity):
        dr.DressingSpec((0.0, 0.0, 1.2))
    with pytest.raises(dr.InvalidVelocity):
        dr.DressingSpec((0.0, 0.0, 0.9), delta=0.5)
    with pytest.raises(dr.InvalidVelocity):
        dr.phi_w((1.0, 0.0, 0.0), 0.1, np.array([0.0, 1.0, 0.0]))
    with pytest.raises(ValueError):
        dr.DressingSpec(alpha=0.0)


def test_velocity_schedule():
    s = dr.DressingSpec((0.0, 0.0, 0.3), delta=0.5)
    assert np.allclose(s.w_at(2), [0.0, 0.0, 0.375])
    assert np.allclose(s.w_at(), [0.0, 0.0, 0.3])


def test_zero_velocity_has_no_dressing():
    v = dr.v_dressing(dr.DressingSpec((0.0, 0.0, 0.0)), 5, GRID, 4)
    assert v.norm2() == 0.0


def test_v_dressing_structure():
    v = dr.v_dressing(SPEC, 5, GRID, T.lmax)
    assert not np.any(v.coeffs[:, AUX])
    assert not np.any(v.coeffs[4:])
    assert np.allclose(v.coeffs[0, XI], v.coeffs[3, XI])
    e = dr.angular_expansion(SPEC.w, SPEC.alpha, T.lmax)
    assert abs(v.norm2() - 4 * dr.LN2 * e.captured) < 1e-12
    with pytest.raises(ValueError):
        dr.v_dressing(SPEC, 0, GRID, 4)
    with pytest.raises(ValueError):
        dr.v_dressing(SPEC, 14, GRID, 4)


def test_v_dressing_pointwise():
    # coefficient field equals sqrt(alpha) k^-3/2 P_tr phi up to the angular truncation
    v = dr.v_limit_truncated(SPEC, GRID, T.lmax)
    k = np.array([[0.3, 0.2, 0.5], [-0.1, 0.05, 0.02], [0.002, -0.003, 0.001]])
    exact = dr.v_pointwise(SPEC.w, 1.0, k, 1.0) * np.sqrt(SPEC.alpha)
    assert np.allclose(v.evaluate(k), exact, rtol=1e-6, atol=1e-8 * np.abs(exact).max())


def test_profile_bound():
    q = hm.SphericalQuadrature.gauss_product(40)
    for s in (0.1, 0.5, 0.9):
        mx = np.linalg.norm(dr.phi_w((s, 0.0, 0.0), 0.1, q.points), axis=-1).max()
        assert mx <= np.sqrt(0.1) * s / (1 - s) + 1e-15


def test_v_norm_linear(report):
    a, b, r2 = dr.linear_fit_r2(report.n, report.norm2_v)
    assert r2 > 0.999
    assert a > 0


def test_psi_pieces(report):
    assert report.psi_gram_offdiag <= 1e-14
    assert np.allclose(report.psi_norm2, report.psi_norm2_formula, atol=1e-12)
    assert report.K_shell == pytest.approx(report.shell_constant.max())


def test_shell_constant_stable_under_lmax_doubling(report):
    big = dr.convergence_diagnostics(SPEC, KPRMap(GRID, 2 * T.lmax))
    assert abs(big.K_shell - report.K_shell) / report.K_shell <= 0.01


def test_cauchy_tail_shape(report):
    # sum_{i>=n} ln2 K / i^2 <= 2 ln2 K / n
    assert report.K_tail_fit <= 2 * dr.LN2 * report.K_shell * (1 + 1e-12)
    N = report.n[-1]
    tail = report.cauchy_tail
    assert np.all(np.diff(tail) <= 1e-15)
    assert tail[-1] == 0.0
    for n in range(1, N):
        assert tail[n - 1] <= 2 * dr.LN2 * report.K_shell / n * (1 + 1e-12)


def test_tv_bounded_tiv_superlinear(report):
    assert np.all(np.diff(report.norm2_Tv) > 0)
    assert report.norm2_Tv[-1] < report.limit_estimate
    assert dr.growth_exponent(report.n[1:], report.norm2_Tiv[1:]) > 1.5
    assert np.allclose(report.sigma_Tv_Tiv, report.norm2_v, rtol=1e-12, atol=1e-14)


def test_report_rows(report):
    assert len(report.rows_per_n()) == report.n.size
    assert len(report.rows_per_shell()) == report.n.size - 1


def test_axial_symmetry():
    e = dr.angular_expansion(SPEC.w, SPEC.alpha, 10)
    _, M, S = hm.mode_arrays(10)
    assert np.abs(e.coeffs[(M != 0) | (S < 0)]).max() <= 1e-14


@pytest.mark.parametrize("s", [0.1, 0.2, 0.3, 0.4])
def test_l2_closed_form_matches_mode_sum(s):
    w = (0.0, 0.0, s)
    cf = dr.orbital_L2_closed_form(w, 0.1)
    ms = dr.orbital_L2_mode_sum(w, 0.1)
    assert abs(cf - ms) / cf <= 1e-6


def test_l2_direction_independent():
    a = dr.orbital_L2_mode_sum((0.3, 0.0, 0.0), 0.1)
    b = dr.orbital_L2_mode_sum((0.0, 0.18, 0.24), 0.1)
    assert abs(a - b) / a < 1e-9


def test_tail_bounds():
    assert dr.measured_tail(SPEC, 12) <= dr.analytic_tail_bound(SPEC, 12)
    l = dr.select_lmax(SPEC, 1e-10)
    assert dr.measured_tail(SPEC, l) < 1e-11
    assert dr.measured_tail(SPEC, l - 1) >= 1e-11


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_geometry_distance_positive(seed):
    from infravac.campaigns import random_off_span
    w1, w2, k = random_off_span(np.random.default_rng(seed), 0.95)
    assert max(np.linalg.norm(w1), np.linalg.norm(w2)) <= 0.95
    assert dr.check_geometry(w1, w2, k) > 0


def test_geometry_vanishes_on_span_direction():
    # on the span the distance can vanish: F_w(k) = -k whenever w is parallel to k
    w = np.array([0.0, 0.0, 0.3])
    k = np.array([0.0, 0.0, 1.0])
    assert dr.check_geometry(w, 2 * w, k) == pytest.approx(0.0, abs=1e-15)


def test_smooth_step():
    x = np.linspace(-1, 2, 31)
    y = dr.smooth_step(x)
    assert np.all(y[x <= 0] == 0) and np.all(y[x >= 1] == 1)
    assert np.all(np.diff(y) >= 0)
    assert dr.smooth_step(0.5) == pytest.approx(0.5)


def test_witness_closed_form():
    ws = dr.WitnessSpec()
    out = dr.superselection_witness(ws)
    assert out["rel_diff"] <= 1e-6
    assert out["lhs"] != 0 and out["rhs"] != 0
    assert out["radial_factor"] == pytest.approx(2 / 3 * (1 - (1 / 16) ** 1.5), abs=1e-15)


def test_witness_scales_with_C():
    a = dr.superselection_witness(dr.WitnessSpec(C=1.0), order=120, order_rhs=240)
    b = dr.superselection_witness(dr.WitnessSpec(C=-2.5), order=120, order_rhs=240)
    assert b["lhs"] == pytest.approx(-2.5 * a["lhs"], rel=1e-12)


def test_witness_spec_validation():
    with pytest.raises(ValueError):
        dr.WitnessSpec(w=(0.1, 0.0, 0.0), w_prime=(0.1, 0.0, 0.0))
    with pytest.raises(ValueError):
        dr.WitnessSpec(sigma=2.0)
    with pytest.raises(dr.InvalidVelocity):
        dr.WitnessSpec(w=(1.1, 0.0, 0.0))


def test_window_vanishes_near_span():
    ws = dr.WitnessSpec()
    assert ws.chi(np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])).max() == 0.0
    assert ws.chi(np.array([0.0, 1.0, 0.0])) == 1.0


def test_probe_requires_integrable_decay():
    with pytest.raises(ValueError):
        dr.CentralProbe(decay="none")


@pytest.fixture(scope="module")
def central():
    probe = dr.CentralProbe()
    f = dr.self_similar_test_vector(ShellGrid(1.0, 24), probe.lmax, probe.coeff_vector())
    return probe, dr.central_sequence_check(f, SPEC, probe, range(0, 13))


def test_central_commutator_decreases(central):
    probe, cs = central
    rows = cs["rows"]
    norms = np.array([r["commutator_norm"] for r in rows])
    assert all(r["commutator_norm"] <= r["bound"] + 1e-15 for r in rows)
    assert np.all(np.diff(norms[2:]) < 0)
    assert norms[-1] < 1e-3


def test_central_pairing_scaling(central):
    # bounded self-similar field: <f, g_s> scales like s^-3/2 once the support is inside the grid
    _, cs = central
    r = {row["k"]: row["im_f_gs"] for row in cs["rows"]}
    for k in range(3, 12):
        assert r[k + 1] / r[k] == pytest.approx(2 ** -1.5, rel=1e-9)


def test_central_pairing_with_dressing_constant(central):
    _, cs = central
    for row in cs["rows"]:
        if row["k"] >= 2:
            assert row["pairing_gap"] <= 1e-4


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 0.6), st.floats(0.05, 0.6))
def test_pairing_linear_in_w_direction(a, b):
    # the limit pairing scales with sqrt(alpha)
    probe = dr.CentralProbe()
    w = (0.0, a, b)
    p1 = dr.pairing_v_limit(w, 0.1, 1.0, probe)
    p4 = dr.pairing_v_limit(w, 0.4, 1.0, probe)
    assert abs(p4 - 2 * p1) <= 1e-12 * max(1.0, abs(p1))


@pytest.mark.parametrize("s", [0.1, 0.4, 0.8])
def test_l2_closed_form_matches_adaptive_quadrature(s):
    from scipy.integrate import quad
    val, _ = quad(lambda t: (1 - t * t) * s * s / (1 - t * s) ** 4, -1, 1, epsabs=1e-14, epsrel=1e-13)
    ref = 2 * np.pi * 0.1 * s * s * val
    assert dr.orbital_L2_closed_form((0.0, 0.0, s), 0.1) == pytest.approx(ref, rel=1e-10)
