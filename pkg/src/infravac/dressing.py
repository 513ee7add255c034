"""Dressing vectors of a moving charge and their infravacuum images.

The angular profile for velocity ``w`` (``|w| < 1``) is

    phi_w(khat) = sqrt(alpha) * w / (1 - khat . w),

and the dressing vector with infrared cutoff ``sigma_n = eps_n`` is
``v_n = sum_{i<n} xi_i (x) P_tr phi_w`` with ``xi_i = k**-1.5`` on shell ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import harmonics as hm
from .fieldspace import AUX, XI, FieldVector, ShellGrid, radial_profile, symplectic_form, transverse_project
from .kpr import KPRMap

LN2 = float(np.log(2.0))


class InvalidVelocity(ValueError):
    pass


@dataclass(frozen=True)
class DressingSpec:
    """Velocity ``w`` (a stand-in for the energy gradient), coupling and cutoffs.

    ``delta`` enables the schedule ``w_n = w (1 + delta / n)``.
    """

    w: tuple = (0.0, 0.0, 0.3)
    alpha: float = 0.1
    kappa: float = 1.0
    v_max: float = 0.95
    delta: float = 0.0

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        if len(w) != 3:
            raise InvalidVelocity("w must be a 3-vector")
        object.__setattr__(self, "w", w)
        if not 0 <= self.v_max < 1:
            raise InvalidVelocity(f"v_max must lie in [0, 1), got {self.v_max}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        for n in (1, 2):
            s = abs(np.linalg.norm(w) * (1 + self.delta / n))
            if s > self.v_max:
                raise InvalidVelocity(f"|w_n| = {s:.4g} exceeds v_max = {self.v_max}")

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.w))

    def w_at(self, n: int | None = None) -> np.ndarray:
        w = np.array(self.w)
        if n is None or self.delta == 0.0:
            return w
        return w * (1 + self.delta / n)


# ----------------------------------------------------------------------------
# angular profiles

def _check_w(w):
    w = np.asarray(w, dtype=float)
    if np.linalg.norm(w) >= 1:
        raise InvalidVelocity(f"|w| = {np.linalg.norm(w):.4g} must be < 1")
    return w


def phi_w(w, alpha: float, khat) -> np.ndarray:
    w = _check_w(w)
    k = np.asarray(khat, dtype=float)
    den = 1.0 - k @ w
    return np.sqrt(alpha) * w / den[..., None] * np.ones_like(k)


def phi_w_tr(w, alpha: float, khat) -> np.ndarray:
    return transverse_project(phi_w(w, alpha, khat), khat)


def default_quad_order(lmax: int) -> int:
    return 2 * lmax + 64


@lru_cache(maxsize=64)
def _angular(w: tuple, alpha: float, lmax: int, order: int) -> hm.Expansion:
    quad = hm.SphericalQuadrature.gauss_product(order)
    vals = phi_w_tr(np.array(w), alpha, quad.grid_points)
    return hm.expand_tangent_field(vals, lmax, quad)


def angular_expansion(w, alpha: float, lmax: int, order: int | None = None) -> hm.Expansion:
    """Vector-harmonic expansion of ``P_tr phi_w`` (cached)."""
    order = default_quad_order(lmax) if order is None else int(order)
    return _angular(tuple(float(x) for x in w), float(alpha), int(lmax), order)


def orbital_L2_closed_form(w, alpha: float, n_nodes: int = 400) -> float:
    """``<phi_w, L^2 phi_w>`` from the one-dimensional integral

    ``2 pi alpha |w|^2 int_{-1}^{1} (1 - t^2) |w|^2 / (1 - t |w|)^4 dt``.
    """
    s = float(np.linalg.norm(_check_w(w)))
    t, wt = np.polynomial.legendre.leggauss(n_nodes)
    integrand = (1 - t * t) * s * s / (1 - t * s) ** 4
    return float(2 * np.pi * alpha * s * s * np.dot(wt, integrand))


def orbital_L2_mode_sum(w, alpha: float, lmax: int = 60, order: int | None = None) -> float:
    """Same quantity as a scalar-harmonic mode sum over the Cartesian components of ``phi_w``."""
    order = 2 * lmax + 40 if order is None else order
    quad = hm.SphericalQuadrature.gauss_product(order)
    vals = phi_w(w, alpha, quad.grid_points)
    return hm.orbital_L2_expectation(vals, lmax, quad)


def angular_L2_of_L(spec: DressingSpec) -> tuple[float, float]:
    """(mode-sum value, closed-form value) of ``<phi_w, L^2 phi_w>``."""
    return orbital_L2_mode_sum(spec.w, spec.alpha), orbital_L2_closed_form(spec.w, spec.alpha)


def phi_norm2(w, alpha: float, order: int = 200) -> float:
    """``||phi_w||^2`` on the sphere (not projected)."""
    quad = hm.SphericalQuadrature.gauss_product(order)
    v = phi_w(w, alpha, quad.grid_points)
    return float(quad.integrate(np.sum(np.abs(v) ** 2, axis=-1)).real)


def analytic_tail_bound(spec: DressingSpec, lmax: int) -> float:
    """Upper bound on the angular weight of ``P_tr phi_w`` above ``lmax``."""
    return hm.tail_bound(orbital_L2_closed_form(spec.w, spec.alpha), phi_norm2(spec.w, spec.alpha), lmax)


def measured_tail(spec: DressingSpec, lmax: int, order: int | None = None) -> float:
    e = angular_expansion(spec.w, spec.alpha, lmax, order)
    return max(e.residual2, 0.0)


def select_lmax(spec: DressingSpec, tol: float, lmax_cap: int = 200) -> int:
    """Smallest ``lmax`` whose measured angular tail is below ``tol / 10``."""
    l = 1
    while l <= lmax_cap:
        if measured_tail(spec, l) < tol / 10:
            return l
        l = l + 1 if l < 8 else int(l * 1.25) + 1
    raise ValueError(f"no lmax <= {lmax_cap} reaches tail tolerance {tol}")


# ----------------------------------------------------------------------------
# dressing vectors

def v_dressing(spec: DressingSpec, n: int, grid: ShellGrid, lmax: int) -> FieldVector:
    """``sum_{i=1}^{n-1} xi_i (x) P_tr phi_{w_n}`` in coefficient form."""
    if not 1 <= n <= grid.n_shells + 1:
        raise ValueError(f"n must lie in 1..{grid.n_shells + 1}")
    if grid.kappa != spec.kappa:
        raise ValueError("grid and dressing spec use different kappa")
    c = np.zeros((grid.n_shells, 2, hm.n_modes(lmax)), dtype=complex)
    if n > 1 and spec.speed > 0:
        e = angular_expansion(spec.w_at(n), spec.alpha, lmax)
        c[: n - 1, XI] = np.sqrt(LN2) * e.coeffs[None, :]
    return FieldVector(grid, lmax, c)


def v_limit_truncated(spec: DressingSpec, grid: ShellGrid, lmax: int) -> FieldVector:
    """The cutoff-free dressing vector restricted to the shells of ``grid``."""
    return v_dressing(spec, grid.n_shells + 1, grid, lmax)


def psi_norm2_formula(spec: DressingSpec, T: KPRMap, i: int, lmax_quad: int | None = None) -> float:
    """``ln 2 (tail_{l>i} + b_i^2 head_{l<=i})`` with the tail measured by quadrature."""
    lm = T.lmax if lmax_quad is None else lmax_quad
    e = angular_expansion(spec.w, spec.alpha, lm)
    cut = T.policy.lcut(i)
    head = e.head(min(cut, lm))
    tail = e.norm2 - head
    return LN2 * (max(tail, 0.0) + T.b(i) ** 2 * head)


@dataclass
class ConvergenceReport:
    n: np.ndarray
    norm2_v: np.ndarray
    norm2_Tv: np.ndarray
    norm2_Tiv: np.ndarray
    sigma_Tv_Tiv: np.ndarray
    psi_norm2: np.ndarray          # index i-1, from the coefficients
    psi_norm2_formula: np.ndarray
    cauchy_tail: np.ndarray        # ||Tv_N - Tv_n||^2 for n = 1..N
    shell_constant: np.ndarray     # ||psi_i||^2 i^2 / ln 2
    K_shell: float
    K_tail_fit: float
    limit_estimate: float
    psi_gram_offdiag: float
    info: dict = field(default_factory=dict)

    def rows_per_shell(self) -> list[dict]:
        return [{"shell": int(i + 1), "psi_norm2": float(self.psi_norm2[i]),
                 "psi_norm2_formula": float(self.psi_norm2_formula[i]),
                 "shell_constant": float(self.shell_constant[i])} for i in range(self.psi_norm2.size)]

    def rows_per_n(self) -> list[dict]:
        return [{"n": int(self.n[j]), "norm2_v": float(self.norm2_v[j]), "norm2_Tv": float(self.norm2_Tv[j]),
                 "norm2_Tiv": float(self.norm2_Tiv[j]), "sigma_Tv_Tiv": float(self.sigma_Tv_Tiv[j]),
                 "cauchy_tail": float(self.cauchy_tail[j])} for j in range(self.n.size)]


def convergence_diagnostics(spec: DressingSpec, T: KPRMap, N: int | None = None) -> ConvergenceReport:
    """Norms of ``v_n``, ``T v_n`` and ``T(i v_n)`` for ``n = 1..N`` and the shell pieces ``psi_i``."""
    grid, lmax = T.grid, T.lmax
    N = grid.n_shells if N is None else N
    if not 2 <= N <= grid.n_shells + 1:
        raise ValueError("N out of range")
    vs = [v_dressing(spec, n, grid, lmax) for n in range(1, N + 1)]
    Tvs = [T.apply(v) for v in vs]
    Tivs = [T.apply(1j * v) for v in vs]
    n = np.arange(1, N + 1)
    norm2_v = np.array([v.norm2() for v in vs])
    norm2_Tv = np.array([x.norm2() for x in Tvs])
    norm2_Tiv = np.array([x.norm2() for x in Tivs])
    sig = np.array([symplectic_form(a, b) for a, b in zip(Tvs, Tivs)])
    # shell pieces of the last vector; for constant w they do not depend on n
    last = Tvs[-1]
    psi = last.shell_norms2()[: N - 1]
    psi_f = np.array([psi_norm2_formula(spec, T, i) for i in range(1, N)]) if spec.delta == 0 else psi.copy()
    cauchy = np.array([(Tvs[-1] - x).norm2() for x in Tvs])
    ii = np.arange(1, N)
    shell_const = psi * ii ** 2 / LN2
    K_shell = float(shell_const.max()) if shell_const.size else 0.0
    # n S_n for the tail sums S_n = sum_{n <= i < N} ||psi_i||^2
    tails = np.array([psi[m - 1:].sum() for m in ii])
    K_tail = float((ii * tails).max()) if tails.size else 0.0
    # pieces are supported on disjoint shells
    pieces = []
    for i in range(N - 1):
        c = np.zeros_like(last.coeffs)
        c[i] = last.coeffs[i]
        pieces.append(last.like(c))
    G = np.array([[a.inner(b) for b in pieces] for a in pieces])
    off = float(np.abs(G - np.diag(np.diag(G))).max()) if N > 2 else 0.0
    # remainder of the series beyond N - 1 using the measured angular profile
    e = angular_expansion(spec.w, spec.alpha, lmax)
    big = np.arange(N, 200_001)
    head_sat = e.norm2
    rem = LN2 * head_sat * float(np.sum(1.0 / big.astype(float) ** 2) + 1.0 / big[-1])
    limit = float(norm2_Tv[-1] + rem)
    return ConvergenceReport(n, norm2_v, norm2_Tv, norm2_Tiv, sig, psi, psi_f, cauchy, shell_const,
                             K_shell, K_tail, limit, off,
                             info={"phi_tr_norm2": e.norm2, "lmax": lmax, "N": N})


def linear_fit_r2(x, y) -> tuple[float, float, float]:
    """Least-squares line ``y = a x + b``; returns ``(a, b, R^2)``."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    A = np.vstack([x, np.ones_like(x)]).T
    (a, b), *_ = np.linalg.lstsq(A, y, rcond=None)
    ss_res = float(np.sum((y - (a * x + b)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return float(a), float(b), 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0


def growth_exponent(n, y) -> float:
    """Slope of ``log y`` against ``log n`` over the second half of the range."""
    n, y = np.asarray(n, float), np.asarray(y, float)
    h = n.size // 2
    p = np.polyfit(np.log(n[h:]), np.log(y[h:]), 1)
    return float(p[0])


# ----------------------------------------------------------------------------
# geometry of the superselection witness

def F_geometry(w, khat) -> np.ndarray:
    """``(w - khat) / (1 - khat . w)``."""
    w = _check_w(w)
    k = np.asarray(khat, dtype=float)
    return (w - k) / (1.0 - k @ w)[..., None]


def check_geometry(w1, w2, khat) -> np.ndarray:
    return np.linalg.norm(F_geometry(w1, khat) - F_geometry(w2, khat), axis=-1)


def smooth_step(x) -> np.ndarray:
    """C-infinity step: 0 for ``x <= 0``, 1 for ``x >= 1``."""
    x = np.asarray(x, dtype=float)

    def f(t):
        return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)

    a, b = f(x), f(1.0 - x)
    return a / (a + b)


@dataclass(frozen=True)
class WitnessSpec:
    w: tuple = (0.0, 0.0, 0.2)
    w_prime: tuple = (0.3, 0.0, 0.0)
    alpha: float = 0.1
    kappa: float = 1.0
    sigma: float = 1.0 / 16
    C: float = 1.0
    exclusion_deg: float = 15.0
    ramp_deg: float = 15.0
    min_F2: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))
        object.__setattr__(self, "w_prime", tuple(float(x) for x in self.w_prime))
        _check_w(self.w)
        _check_w(self.w_prime)
        if np.allclose(self.w, self.w_prime):
            raise ValueError("witness needs two distinct velocities")
        if not 0 < self.sigma < self.kappa:
            raise ValueError("need 0 < sigma < kappa")

    def chi(self, khat) -> np.ndarray:
        """Smooth window vanishing within ``exclusion_deg`` of span{w, w'}."""
        k = np.asarray(khat, dtype=float)
        w1, w2 = np.array(self.w), np.array(self.w_prime)
        nrm = np.cross(w1, w2)
        if np.linalg.norm(nrm) > 1e-12:
            nrm = nrm / np.linalg.norm(nrm)
            ang = np.degrees(np.arcsin(np.clip(np.abs(k @ nrm), 0.0, 1.0)))
        else:
            # collinear (or one zero): the span is a line
            d = w1 if np.linalg.norm(w1) > np.linalg.norm(w2) else w2
            d = d / np.linalg.norm(d)
            ang = np.degrees(np.arccos(np.clip(np.abs(k @ d), 0.0, 1.0)))
        return smooth_step((ang - self.exclusion_deg) / self.ramp_deg)


def witness_g1(ws: WitnessSpec, kvec) -> np.ndarray:
    """``C F/|F|^2 chi(khat) 1[sigma, kappa](|k|)`` with ``F = F_w - F_w'``."""
    k = np.asarray(kvec, dtype=float)
    r = np.linalg.norm(k, axis=-1)
    kh = k / r[..., None]
    F = F_geometry(ws.w, kh) - F_geometry(ws.w_prime, kh)
    F2 = np.sum(F * F, axis=-1)
    chi = ws.chi(kh)
    on = (r >= ws.sigma) & (r <= ws.kappa) & (chi > 0)
    safe = np.where(on, F2, 1.0)
    return np.where(on[..., None], ws.C * F / safe[..., None] * chi[..., None], 0.0)


def v_pointwise(w, alpha: float, kvec, kappa: float, sigma: float = 0.0) -> np.ndarray:
    """Dressing function ``sqrt(alpha) k**-1.5 P_tr w/(1 - khat.w)`` on ``[sigma, kappa]``."""
    k = np.asarray(kvec, dtype=float)
    r = np.linalg.norm(k, axis=-1)
    kh = k / r[..., None]
    on = (r >= sigma) & (r <= kappa)
    rr = np.where(on, r, 1.0)
    return np.where(on[..., None], phi_w_tr(w, alpha, kh) * rr[..., None] ** -1.5, 0.0)


def _shell_quadrature(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, wx = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * wx


def witness_radial_factor(sigma: float, kappa: float) -> float:
    """``int_sigma^kappa k**-1.5 k**2 dk``."""
    return 2.0 / 3.0 * (kappa ** 1.5 - sigma ** 1.5)


def superselection_witness(ws: WitnessSpec, order: int = 300, n_radial: int = 24,
                           order_rhs: int = 600) -> dict:
    """Compare ``Im<v_w, i g1> - Im<v_w', i g1>`` with its closed form.

    The left side integrates the dressing functions against ``g = i g1`` on a
    product grid in ``(|k|, khat)``. The right side evaluates
    ``C sqrt(alpha) (radial factor) int chi dOmega`` on a finer angular grid.
    """
    quad = hm.SphericalQuadrature.gauss_product(order)
    kh = quad.points
    chi = ws.chi(kh)
    if not np.any(chi > 0):
        raise ValueError("angular window vanishes on every node")
    F = F_geometry(ws.w, kh) - F_geometry(ws.w_prime, kh)
    F2 = np.sum(F * F, axis=-1)
    minF2 = float(F2[chi > 0].min())
    if minF2 < ws.min_F2:
        raise ValueError(f"|F|^2 = {minF2:.3e} too small on the window support")
    r, wr = _shell_quadrature(ws.sigma, ws.kappa, n_radial)
    lhs = 0.0
    for rk, wk in zip(r, wr):
        pts = kh * rk
        g = 1j * witness_g1(ws, pts)
        d1 = np.sum(np.conj(v_pointwise(ws.w, ws.alpha, pts, ws.kappa)) * g, axis=-1)
        d2 = np.sum(np.conj(v_pointwise(ws.w_prime, ws.alpha, pts, ws.kappa)) * g, axis=-1)
        lhs += wk * rk ** 2 * float(np.dot(quad.weights, (d1 - d2)).imag)
    qr = hm.SphericalQuadrature.gauss_product(order_rhs)
    ang = float(np.dot(qr.weights, ws.chi(qr.points)))
    radial = witness_radial_factor(ws.sigma, ws.kappa)
    rhs = ws.C * np.sqrt(ws.alpha) * radial * ang
    return {"lhs": lhs, "rhs": rhs, "rel_diff": abs(lhs - rhs) / abs(rhs) if rhs else abs(lhs),
            "radial_factor": radial, "chi_integral": ang, "min_F2_on_support": minF2}


# ----------------------------------------------------------------------------
# central sequence

def bump_profile(a: float = 0.5, b: float = 3.0) -> Callable[[np.ndarray], np.ndarray]:
    """Smooth radial bump supported in ``[a, b]``."""
    def h(k):
        k = np.asarray(k, dtype=float)
        x = (k - a) / (b - a)
        inside = (x > 0) & (x < 1)
        xs = np.where(inside, x, 0.5)
        return np.where(inside, np.exp(-1.0 / (xs * (1 - xs))) * np.exp(4.0), 0.0)
    return h


@dataclass(frozen=True)
class CentralProbe:
    """``g(k) = i h(|k|) u(khat)`` with ``u`` a real tangent field given by vector-harmonic coefficients."""

    u_coeffs: tuple = ((1, 0, 1, 1.0), (2, 0, -1, 0.5), (2, 1, 1, 0.3), (2, -1, 1, -0.3))
    support: tuple = (0.5, 3.0)
    lmax: int = 2
    decay: str = "compact"

    def __post_init__(self):
        if self.decay not in ("compact", "integrable"):
            raise ValueError("probe must be integrable")

    def coeff_vector(self, lmax: int | None = None) -> np.ndarray:
        lmax = self.lmax if lmax is None else lmax
        c = np.zeros(hm.n_modes(lmax), dtype=complex)
        for l, m, lam, v in self.u_coeffs:
            c[hm.mode_index(l, m, lam)] = v
        return c

    def h(self):
        return bump_profile(*self.support)

    def g(self, kvec, s: float = 1.0, kappa: float = 1.0) -> np.ndarray:
        """``g_s(k) = s**1.5 g(s k)`` with the support measured in units of ``kappa``."""
        k = np.asarray(kvec, dtype=float).reshape(-1, 3)
        r = np.linalg.norm(k, axis=1)
        u = hm.synthesize(self.coeff_vector(), self.lmax, k / r[:, None])
        return 1j * s ** 1.5 * self.h()(s * r / kappa)[:, None] * u


def self_similar_test_vector(grid: ShellGrid, lmax: int, angular: np.ndarray,
                             aux_weight: float = 0.5) -> FieldVector:
    """Bounded test field with ``f(k/2) = f(k)``: shell ``i`` coefficients scale as ``2**(-1.5 (i-1))``."""
    c = np.zeros((grid.n_shells, 2, hm.n_modes(lmax)), dtype=complex)
    a = np.zeros(hm.n_modes(lmax), dtype=complex)
    a[: angular.size] = angular
    for i in range(1, grid.n_shells + 1):
        c[i - 1, XI] = 2.0 ** (-1.5 * (i - 1)) * a
        c[i - 1, AUX] = aux_weight * 2.0 ** (-1.5 * (i - 1)) * a
    return FieldVector(grid, lmax, c)


def pairing_field_probe(f: FieldVector, probe: CentralProbe, s: float, n_radial: int = 48) -> complex:
    """``<f, g_s>`` using orthonormality of the angular basis and radial Gauss-Legendre per shell."""
    grid = f.grid
    u = probe.coeff_vector(f.lmax)
    h = probe.h()
    a, b = probe.support[0] * grid.kappa / s, probe.support[1] * grid.kappa / s
    total = 0j
    for i in range(1, grid.n_shells + 1):
        lo, hi = max(a, grid.eps(i + 1)), min(b, grid.eps(i))
        if lo >= hi:
            continue
        r, wr = _shell_quadrature(lo, hi, n_radial)
        hv = s ** 1.5 * h(s * r / grid.kappa)
        for ch in (XI, AUX):
            ang = np.vdot(f.coeffs[i - 1, ch], u)
            if ang == 0:
                continue
            rad = np.dot(wr, radial_profile(grid, i, ch, r) * hv * r ** 2)
            total += 1j * ang * rad
    return complex(total)


def pairing_v_probe(w, alpha: float, kappa: float, probe: CentralProbe, s: float,
                    order: int = 40, n_radial: int = 64) -> complex:
    """``<v_w, g_s>`` by quadrature over the scaled support ``[a, b] kappa / s`` (cut at ``kappa``)."""
    a, b = probe.support[0] * kappa / s, min(probe.support[1] * kappa / s, kappa)
    if a >= b:
        return 0j
    quad = hm.SphericalQuadrature.gauss_product(order)
    r, wr = _shell_quadrature(a, b, n_radial)
    total = 0j
    for rk, wk in zip(r, wr):
        pts = quad.points * rk
        d = np.sum(np.conj(v_pointwise(w, alpha, pts, kappa)) * probe.g(pts, s, kappa), axis=-1)
        total += wk * rk ** 2 * np.dot(quad.weights, d)
    return complex(total)


def pairing_v_limit(w, alpha: float, kappa: float, probe: CentralProbe, order: int = 40) -> complex:
    """``sqrt(alpha) int k**-1.5 phi_tr . g`` over all ``k`` (no infrared or ultraviolet cut).

    Separates into a radial integral of ``k**0.5 h(k / kappa)`` and the angular
    pairing of ``P_tr phi_w`` with ``u``, done with vector-harmonic coefficients.
    """
    a, b = probe.support[0] * kappa, probe.support[1] * kappa
    x, wx = np.polynomial.legendre.leggauss(200)
    r = 0.5 * (b - a) * x + 0.5 * (a + b)
    rad = 0.5 * (b - a) * np.dot(wx, r ** 0.5 * probe.h()(r / kappa))
    if np.linalg.norm(w) == 0:
        return 0j
    e = angular_expansion(w, alpha, max(probe.lmax, 2), order=max(order, 2 * probe.lmax + 8))
    ang = np.vdot(e.coeffs, probe.coeff_vector(e.lmax))
    return complex(1j * rad * ang)


def central_sequence_check(f: FieldVector, spec: DressingSpec, probe: CentralProbe | None = None,
                           ks=range(0, 13)) -> dict:
    """Commutator norms ``||[W(f), W(g_s)]||`` and pairings with the dressing along ``s = 2**k``."""
    probe = CentralProbe() if probe is None else probe
    rows = []
    lim = pairing_v_limit(spec.w, spec.alpha, spec.kappa, probe)
    for k in ks:
        s = 2.0 ** k
        fg = pairing_field_probe(f, probe, s)
        vg = pairing_v_probe(spec.w, spec.alpha, spec.kappa, probe, s)
        rows.append({"k": int(k), "s": s, "im_f_gs": fg.imag, "commutator_norm": 2 * abs(np.sin(fg.imag)),
                     "bound": 2 * abs(fg.imag), "im_v_gs": vg.imag, "im_v_ginf": lim.imag,
                     "pairing_gap": abs(vg - lim)})
    return {"rows": rows, "v_g_inf": lim}
