"""Scalar and transverse vector spherical harmonics on a product quadrature.

Conventions
-----------
Scalar harmonics are orthonormal on the unit sphere and carry the
Condon-Shortley phase, so ``conj(Y[l, m]) == (-1)**m * Y[l, -m]``.
Vector harmonics are

    Y[l, m, +] = a_plus Y[l, m] / sqrt(l (l + 1))
    Y[l, m, -] = khat x a_plus Y[l, m] / sqrt(l (l + 1))

with ``a_plus`` the tangential gradient. Modes are ordered by ``l``, then
``m`` from ``-l`` to ``l``, then ``+`` before ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np


class PoleError(ValueError):
    """Evaluation requested at (or numerically at) a pole."""


class InsufficientQuadrature(ValueError):
    pass


class NonTransverseError(ValueError):
    pass


POLE_TOL = 1e-12


# ----------------------------------------------------------------------------
# modes

@dataclass(frozen=True, order=True)
class AngularMode:
    l: int
    m: int
    lam: int  # +1 or -1

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("vector harmonics need l >= 1")
        if abs(self.m) > self.l:
            raise ValueError(f"|m| <= l violated: l={self.l}, m={self.m}")
        if self.lam not in (1, -1):
            raise ValueError("lam must be +1 or -1")

    @property
    def index(self) -> int:
        return mode_index(self.l, self.m, self.lam)

    def __str__(self):
        return f"({self.l},{self.m},{'+' if self.lam > 0 else '-'})"


def n_modes(lmax: int) -> int:
    return 2 * lmax * (lmax + 2)


def mode_index(l: int, m: int, lam: int) -> int:
    return 2 * (l * l - 1 + m + l) + (0 if lam > 0 else 1)


@lru_cache(maxsize=None)
def mode_arrays(lmax: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(l, m, lam)`` integer arrays over the canonical mode order."""
    ls, ms, lams = [], [], []
    for l in range(1, lmax + 1):
        for m in range(-l, l + 1):
            for lam in (1, -1):
                ls.append(l)
                ms.append(m)
                lams.append(lam)
    out = tuple(np.array(a, dtype=np.int64) for a in (ls, ms, lams))
    for a in out:
        a.setflags(write=False)
    return out


def modes(lmax: int) -> list[AngularMode]:
    return [AngularMode(int(l), int(m), int(s)) for l, m, s in zip(*mode_arrays(lmax))]


# ----------------------------------------------------------------------------
# quadrature

@dataclass(frozen=True, eq=False)
class SphericalQuadrature:
    """Gauss-Legendre nodes in ``cos(theta)`` times a uniform grid in ``phi``.

    Exact for spherical polynomials of degree ``<= order``. Nodes are stored on
    the grid; ``points`` and ``weights`` give the flattened view (theta major).
    """

    order: int
    x: np.ndarray        # cos(theta) nodes
    wx: np.ndarray       # Gauss-Legendre weights
    phi: np.ndarray

    @classmethod
    def gauss_product(cls, order: int) -> "SphericalQuadrature":
        return _gauss_product(int(order))

    @property
    def n_theta(self) -> int:
        return self.x.size

    @property
    def n_phi(self) -> int:
        return self.phi.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_theta, self.n_phi)

    @property
    def sin_theta(self) -> np.ndarray:
        return np.sqrt(1.0 - self.x ** 2)

    @property
    def grid_weights(self) -> np.ndarray:
        return self.wx[:, None] * np.full(self.n_phi, 2 * np.pi / self.n_phi)[None, :]

    @property
    def weights(self) -> np.ndarray:
        return self.grid_weights.ravel()

    @property
    def nodes(self) -> np.ndarray:
        """``(cos theta, phi)`` pairs, shape ``(N, 2)``."""
        X, P = np.meshgrid(self.x, self.phi, indexing="ij")
        return np.stack([X.ravel(), P.ravel()], axis=1)

    @property
    def grid_points(self) -> np.ndarray:
        s = self.sin_theta[:, None]
        c = self.x[:, None]
        return np.stack([s * np.cos(self.phi)[None, :], s * np.sin(self.phi)[None, :],
                         c * np.ones_like(self.phi)[None, :]], axis=-1)

    @property
    def points(self) -> np.ndarray:
        return self.grid_points.reshape(-1, 3)

    def integrate(self, values) -> complex:
        """Integrate nodal values given on the grid, flattened, or with trailing axes."""
        v = np.asarray(values)
        if v.shape[:2] == self.shape:
            return np.tensordot(self.grid_weights, v, axes=([0, 1], [0, 1]))
        return np.tensordot(self.weights, v, axes=([0], [0]))


@lru_cache(maxsize=32)
def _gauss_product(order: int) -> SphericalQuadrature:
    if order < 0:
        raise ValueError("quadrature order must be non-negative")
    nt = order // 2 + 1
    x, wx = np.polynomial.legendre.leggauss(nt)
    nphi = order + 1
    phi = 2 * np.pi * np.arange(nphi) / nphi
    for a in (x, wx, phi):
        a.setflags(write=False)
    return SphericalQuadrature(order, x, wx, phi)


def tangent_frame(khat) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(theta_hat, phi_hat, cos theta, phi)`` at unit vectors ``khat`` (shape ``(..., 3)``)."""
    k = np.asarray(khat, dtype=float)
    rho = np.hypot(k[..., 0], k[..., 1])
    if np.any(rho < POLE_TOL):
        raise PoleError("tangent frame undefined at the poles")
    c = k[..., 2]
    phi = np.arctan2(k[..., 1], k[..., 0])
    cp, sp = k[..., 0] / rho, k[..., 1] / rho
    th = np.stack([c * cp, c * sp, -rho], axis=-1)
    ph = np.stack([-sp, cp, np.zeros_like(cp)], axis=-1)
    return th, ph, c, phi


# ----------------------------------------------------------------------------
# Legendre tables

def legendre_table(lmax: int, x) -> np.ndarray:
    """Normalized associated Legendre functions ``P[l, m, ...]`` for ``0 <= m <= l``.

    ``Y[l, m](theta, phi) = P[l, m](cos theta) * exp(i m phi)`` including the
    Condon-Shortley phase. Entries with ``m > l`` are zero.
    """
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    P = np.zeros((lmax + 1, lmax + 1) + x.shape)
    P[0, 0] = 1.0 / np.sqrt(4 * np.pi)
    for m in range(1, lmax + 1):
        P[m, m] = -np.sqrt((2 * m + 1) / (2.0 * m)) * s * P[m - 1, m - 1]
    for m in range(0, lmax):
        P[m + 1, m] = np.sqrt(2 * m + 3.0) * x * P[m, m]
    for m in range(0, lmax + 1):
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1) ** 2 - 1))
            P[l, m] = a * (x * P[l - 1, m] - b * P[l - 2, m])
    return P


def legendre_dtheta(P: np.ndarray) -> np.ndarray:
    """``d/dtheta`` of the table from :func:`legendre_table` via ladder relations."""
    lmax = P.shape[0] - 1
    D = np.zeros_like(P)
    for l in range(1, lmax + 1):
        for m in range(0, l + 1):
            up = np.sqrt((l - m) * (l + m + 1.0)) * P[l, m + 1] if m + 1 <= l else 0.0
            if m >= 1:
                down = np.sqrt((l + m) * (l - m + 1.0)) * P[l, m - 1]
            else:
                # P[l, -1] = -P[l, 1]
                down = -np.sqrt(l * (l + 1.0)) * P[l, 1]
            D[l, m] = 0.5 * (up - down)
    return D


def _signed(P: np.ndarray, l: int, m: int):
    """``P[l, m]`` extended to negative ``m``."""
    return P[l, m] if m >= 0 else (-1) ** (-m) * P[l, -m]


def scalar_Y(l: int, m: int, cos_theta, phi):
    """Orthonormal scalar harmonic with Condon-Shortley phase."""
    if l < 0 or abs(m) > l:
        raise ValueError(f"need |m| <= l and l >= 0, got l={l}, m={m}")
    x = np.asarray(cos_theta, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-15):
        raise ValueError("|cos theta| must not exceed 1")
    P = legendre_table(l, np.clip(x, -1.0, 1.0))
    return _signed(P, l, m) * np.exp(1j * m * np.asarray(phi, dtype=float))


def scalar_harmonics_grid(lmax: int, quad: SphericalQuadrature) -> np.ndarray:
    """All ``Y[l, m]`` on the grid, shape ``((lmax+1)**2, n_theta, n_phi)``, index ``l*l + l + m``."""
    P = legendre_table(lmax, quad.x)
    e = np.exp(1j * np.outer(np.arange(-lmax, lmax + 1), quad.phi))
    out = np.empty(((lmax + 1) ** 2,) + quad.shape, dtype=complex)
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            out[l * l + l + m] = _signed(P, l, m)[:, None] * e[m + lmax][None, :]
    return out


# ----------------------------------------------------------------------------
# vector harmonics

def _vector_parts(lmax: int, x: np.ndarray):
    P = legendre_table(lmax, x)
    D = legendre_dtheta(P)
    s = np.sqrt(1.0 - x * x)
    return P, D, s


def vector_Y(mode: AngularMode, khat) -> np.ndarray:
    """Evaluate one vector harmonic at unit vectors ``khat`` (shape ``(..., 3)``)."""
    th, ph, c, phi = tangent_frame(khat)
    P, D, s = _vector_parts(mode.l, c)
    l, m = mode.l, mode.m
    e = np.exp(1j * m * phi)
    dY = _signed(D, l, m) * e
    mY = 1j * m * _signed(P, l, m) / s * e
    norm = np.sqrt(l * (l + 1.0))
    if mode.lam > 0:
        out = th * dY[..., None] + ph * mY[..., None]
    else:
        out = ph * dY[..., None] - th * mY[..., None]
    return out / norm


def a_plus_Y(l: int, m: int, khat) -> np.ndarray:
    """Unnormalized tangential gradient of ``Y[l, m]``."""
    return vector_Y(AngularMode(l, m, 1), khat) * np.sqrt(l * (l + 1.0))


def vector_harmonics_at(lmax: int, khat) -> np.ndarray:
    """All vector harmonics with ``l <= lmax`` at points, shape ``(n_modes, N, 3)``."""
    k = np.asarray(khat, dtype=float).reshape(-1, 3)
    th, ph, c, phi = tangent_frame(k)
    P, D, s = _vector_parts(lmax, c)
    L, M, S = mode_arrays(lmax)
    out = np.empty((L.size, k.shape[0], 3), dtype=complex)
    for j, (l, m, lam) in enumerate(zip(L, M, S)):
        e = np.exp(1j * m * phi)
        dY = _signed(D, l, m) * e
        mY = 1j * m * _signed(P, l, m) / s * e
        if lam > 0:
            v = th * dY[:, None] + ph * mY[:, None]
        else:
            v = ph * dY[:, None] - th * mY[:, None]
        out[j] = v / np.sqrt(l * (l + 1.0))
    return out


def gram_matrix(lmax: int, quad: SphericalQuadrature) -> np.ndarray:
    """Quadrature Gram matrix ``<Y_a, Y_b>`` over all modes with ``l <= lmax``."""
    if quad.order < 2 * lmax + 2:
        raise InsufficientQuadrature(f"order {quad.order} < 2*lmax+2 = {2 * lmax + 2}")
    Y = vector_harmonics_at(lmax, quad.points)
    w = quad.weights
    return np.einsum("anc,n,bnc->ab", Y.conj(), w, Y)


def gradient_norms(lmax: int, quad: SphericalQuadrature) -> np.ndarray:
    """Quadrature values of ``<a_plus Y[l,m], a_plus Y[l,m]>`` (rows ``l``, columns ``m + lmax``).

    By Green's identity these equal ``l (l + 1)``.
    """
    P, D, s = _vector_parts(lmax, quad.x)
    out = np.full((lmax + 1, 2 * lmax + 1), np.nan)
    for l in range(1, lmax + 1):
        for m in range(-l, l + 1):
            dens = _signed(D, l, m) ** 2 + (m * _signed(P, l, m) / s) ** 2
            out[l, m + lmax] = 2 * np.pi * np.dot(quad.wx, dens)
    return out


def transversality_defect(lmax: int, quad: SphericalQuadrature) -> float:
    Y = vector_harmonics_at(lmax, quad.points)
    return float(np.abs(np.einsum("anc,nc->an", Y, quad.points)).max())


# ----------------------------------------------------------------------------
# tangent fields and expansions

@dataclass(frozen=True)
class TangentField:
    """A vector field on the unit sphere given by its value map.

    ``func`` takes unit vectors of shape ``(..., 3)`` and returns complex
    3-vectors of the same shape.
    """

    func: Callable[[np.ndarray], np.ndarray]
    smoothness: str = "smooth"
    name: str = ""

    def __call__(self, khat):
        return np.asarray(self.func(np.asarray(khat, dtype=float)), dtype=complex)


@dataclass(frozen=True)
class Expansion:
    lmax: int
    coeffs: np.ndarray      # canonical mode order
    norm2: float            # quadrature norm of the field
    transversality: float

    @property
    def captured(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def residual2(self) -> float:
        return self.norm2 - self.captured

    def head(self, l: int) -> float:
        """``sum |c|^2`` over modes with ``l' <= l``."""
        L, _, _ = mode_arrays(self.lmax)
        return float(np.sum(np.abs(self.coeffs[L <= l]) ** 2))

    def per_l(self) -> np.ndarray:
        L, _, _ = mode_arrays(self.lmax)
        return np.bincount(L, weights=np.abs(self.coeffs) ** 2, minlength=self.lmax + 1)

    def truncate(self, lmax: int) -> "Expansion":
        if lmax > self.lmax:
            raise ValueError("cannot extend an expansion")
        return Expansion(lmax, self.coeffs[: n_modes(lmax)].copy(), self.norm2, self.transversality)


def project_tangent_components(Ft: np.ndarray, Fp: np.ndarray, lmax: int, quad: SphericalQuadrature) -> np.ndarray:
    """Vector-harmonic coefficients from grid values of the theta and phi components.

    Uses an FFT in ``phi`` followed by Legendre sums over the theta nodes.
    """
    if quad.n_phi <= 2 * lmax:
        raise InsufficientQuadrature("phi grid too coarse for the requested lmax")
    P, D, s = _vector_parts(lmax, quad.x)
    fac = 2 * np.pi / quad.n_phi
    At = np.fft.fft(Ft, axis=1) * fac
    Ap = np.fft.fft(Fp, axis=1) * fac
    L, M, S = mode_arrays(lmax)
    out = np.empty(L.size, dtype=complex)
    wx = quad.wx
    for j, (l, m, lam) in enumerate(zip(L, M, S)):
        at = At[:, m % quad.n_phi]
        ap = Ap[:, m % quad.n_phi]
        p = _signed(P, l, m)
        d = _signed(D, l, m)
        if lam > 0:
            integrand = d * at - 1j * m * p / s * ap
        else:
            integrand = d * ap + 1j * m * p / s * at
        out[j] = np.dot(wx, integrand) / np.sqrt(l * (l + 1.0))
    return out


def expand_tangent_field(field, lmax: int, quad: SphericalQuadrature, tol: float = 1e-12) -> Expansion:
    """Coefficients ``<Y_lmλ, field>`` by quadrature, with the residual norm.

    ``field`` is a :class:`TangentField` or grid values of shape ``(n_theta, n_phi, 3)``.
    Raises :class:`NonTransverseError` if ``|khat . field|`` exceeds ``tol``
    relative to ``max |field|``.
    """
    pts = quad.grid_points
    F = field(pts) if callable(field) else np.asarray(field, dtype=complex)
    scale = max(1.0, float(np.abs(F).max()))
    radial = float(np.abs(np.einsum("ijc,ijc->ij", F, pts)).max()) / scale
    if radial > tol:
        raise NonTransverseError(f"field has radial component {radial:.3e}")
    th, ph, _, _ = tangent_frame(pts)
    Ft = np.einsum("ijc,ijc->ij", F, th)
    Fp = np.einsum("ijc,ijc->ij", F, ph)
    coeffs = project_tangent_components(Ft, Fp, lmax, quad)
    norm2 = float(np.real(quad.integrate(np.sum(np.abs(F) ** 2, axis=-1))))
    return Expansion(lmax, coeffs, norm2, radial)


def synthesize(coeffs, lmax: int, khat) -> np.ndarray:
    """Field values ``sum_a c_a Y_a`` at points ``khat`` (shape ``(N, 3)``)."""
    Y = vector_harmonics_at(lmax, khat)
    return np.tensordot(np.asarray(coeffs), Y, axes=(0, 0))


def scalar_coefficients(values: np.ndarray, lmax: int, quad: SphericalQuadrature) -> np.ndarray:
    """Scalar-harmonic coefficients ``a[l, m + lmax]`` of grid values (trailing axes allowed)."""
    if quad.n_phi <= 2 * lmax:
        raise InsufficientQuadrature("phi grid too coarse for the requested lmax")
    v = np.asarray(values, dtype=complex)
    P = legendre_table(lmax, quad.x)
    A = np.fft.fft(v, axis=1) * (2 * np.pi / quad.n_phi)
    out = np.zeros((lmax + 1, 2 * lmax + 1) + v.shape[2:], dtype=complex)
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            out[l, m + lmax] = np.tensordot(quad.wx * _signed(P, l, m), A[:, m % quad.n_phi], axes=(0, 0))
    return out


def orbital_L2_expectation(values: np.ndarray, lmax: int, quad: SphericalQuadrature) -> float:
    """``<f, L^2 f>`` with ``L^2`` acting on each Cartesian component, as a mode sum."""
    a = scalar_coefficients(values, lmax, quad)
    ll = np.arange(lmax + 1) * (np.arange(lmax + 1) + 1.0)
    return float(np.sum(ll.reshape((-1,) + (1,) * (a.ndim - 1)) * np.abs(a) ** 2))


def tail_bound(L2: float, norm2: float, i: int) -> float:
    """Bound on ``sum_{l > i} |c|^2`` in terms of ``<f, L^2 f>`` and ``||f||^2``."""
    return 2.0 / i ** 2 * (L2 + 2.0 * norm2)


def conjugate_coefficients(c: np.ndarray, lmax: int) -> np.ndarray:
    """Coefficients of the complex conjugate field: ``(-1)^m conj(c[l, -m, λ])``."""
    partner, sign = _conjugation_map(lmax)
    return sign * np.conj(np.asarray(c)[..., partner])


@lru_cache(maxsize=None)
def _conjugation_map(lmax: int):
    L, M, S = mode_arrays(lmax)
    partner = 2 * (L * L - 1 + (-M) + L) + (S < 0)
    sign = np.where(M % 2 == 0, 1.0, -1.0)
    partner.setflags(write=False)
    sign.setflags(write=False)
    return partner, sign


# ----------------------------------------------------------------------------
# bundled smooth test fields

def transverse_part(values: np.ndarray, khat: np.ndarray) -> np.ndarray:
    """Pointwise removal of the radial component."""
    return values - np.sum(values * khat, axis=-1, keepdims=True) * khat


def bundled_fields() -> list[TangentField]:
    """Ten smooth tangent fields used by the completeness check."""
    def mk(name, g):
        return TangentField(lambda k, g=g: transverse_part(np.asarray(g(k), dtype=complex), k), name=name)

    z = np.array([0.0, 0.0, 1.0])
    a = np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8])
    fields = [
        mk("dressing_z_0.3", lambda k: 0.3 * z / (1 - 0.3 * k[..., 2:3]) + 0 * k),
        mk("dressing_tilted_0.5",
           lambda k: 0.5 * a / (1 - 0.5 * np.sum(k * a, axis=-1, keepdims=True)) + 0 * k),
        mk("gaussian_cap", lambda k: np.exp(-2 * np.sum((k - a) ** 2, axis=-1, keepdims=True)) * np.array([1.0, 2.0, 0.5])),
        mk("exp_dot", lambda k: np.exp(k[..., 0:1]) * np.array([0.0, 1.0, 1.0])),
        mk("poly_mix", lambda k: np.stack([k[..., 1] * k[..., 2], k[..., 0] ** 2, k[..., 0] * k[..., 1] * k[..., 2]], -1)),
        mk("complex_wave", lambda k: np.exp(1j * 2 * k[..., 0:1]) * np.array([0.0, 0.0, 1.0])),
        mk("curl_gauss", lambda k: np.cross(k, np.exp(-np.sum((k - z) ** 2, axis=-1, keepdims=True)) * a)),
        mk("rational", lambda k: np.stack([1 / (2 + k[..., 0]), 1 / (2 - k[..., 1]), 0 * k[..., 2]], -1)),
        mk("cosine_band", lambda k: np.cos(3 * k[..., 2:3]) * np.array([1.0, 0.0, 0.0])),
        mk("twisted", lambda k: np.cross(k, z) * np.sin(2 * k[..., 0:1] + k[..., 1:2]) + 0j),
    ]
    return fields
