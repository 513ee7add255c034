"""Coefficient space of transverse momentum-space fields.

A field is stored by its coefficients on the orthonormal basis

    (radial channel on dyadic shell i) x (vector spherical harmonic Y_lmλ).

Shell ``i`` is the band ``[eps_{i+1}, eps_i]`` with ``eps_i = 2**-(i-1) * kappa``.
Each shell carries two radial channels, orthonormal in ``L2(k^2 dk)``:

* ``XI``: the normalized profile ``k**-1.5`` on the shell;
* ``AUX``: ``k**-0.5`` on the shell orthogonalized against ``XI``.

Inner products are antilinear in the first argument and the symplectic
form is ``sigma(f, g) = Im <f, g>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import harmonics as hm

XI, AUX = 0, 1
CHANNELS = ("xi", "aux")


class GridMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ShellGrid:
    kappa: float = 1.0
    n_shells: int = 24

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if self.n_shells < 1:
            raise ValueError("need at least one shell")

    def eps(self, i) -> np.ndarray | float:
        """``eps_i = 2**-(i-1) kappa`` for ``i = 1 .. n_shells + 1``."""
        return self.kappa * 2.0 ** (-(np.asarray(i) - 1.0))

    @property
    def edges(self) -> np.ndarray:
        return self.eps(np.arange(1, self.n_shells + 2))

    def shell_of(self, k) -> np.ndarray:
        """Shell index of momenta ``k`` (0 outside the grid)."""
        k = np.asarray(k, dtype=float)
        with np.errstate(divide="ignore"):
            i = np.floor(np.log2(self.kappa / k)).astype(int) + 1
        inside = (k > self.eps(self.n_shells + 1)) & (k <= self.kappa)
        return np.where(inside, i, 0)


# ----------------------------------------------------------------------------
# radial closed forms on one shell (measure k^2 dk)

def shell_power_integral(grid: ShellGrid, i: int, p: float) -> float:
    """``int_{eps_{i+1}}^{eps_i} k**p dk``."""
    a, b = grid.eps(i + 1), grid.eps(i)
    if p == -1:
        return float(np.log(b / a))
    return float((b ** (p + 1) - a ** (p + 1)) / (p + 1))


def radial_coefficients(grid: ShellGrid, i: int) -> dict:
    """Expansion data for the two channels of shell ``i``.

    ``xi_i = k**-1.5``; ``XI = xi_i / n_xi``; ``AUX = (k**-0.5 - proj XI) / n_aux``.
    Returns ``n_xi``, the projection ``<XI, k**-0.5>`` and ``n_aux``.
    """
    n_xi2 = shell_power_integral(grid, i, -1)          # ln 2
    cross = shell_power_integral(grid, i, 0) / np.sqrt(n_xi2)   # <XI, k^-1/2>
    h2 = shell_power_integral(grid, i, 1)              # ||k^-1/2||^2
    n_aux = np.sqrt(h2 - cross ** 2)
    return {"n_xi": float(np.sqrt(n_xi2)), "cross": float(cross), "n_aux": float(n_aux)}


def radial_profile(grid: ShellGrid, i: int, channel: int, k) -> np.ndarray:
    """Orthonormal channel function of shell ``i`` evaluated at ``k`` (zero off the shell)."""
    k = np.asarray(k, dtype=float)
    on = (k > grid.eps(i + 1)) & (k <= grid.eps(i))
    kk = np.where(on, k, 1.0)
    r = radial_coefficients(grid, i)
    xi = kk ** -1.5 / r["n_xi"]
    if channel == XI:
        out = xi
    elif channel == AUX:
        out = (kk ** -0.5 - r["cross"] * xi) / r["n_aux"]
    else:
        raise ValueError("unknown channel")
    return np.where(on, out, 0.0)


# ----------------------------------------------------------------------------
# field vectors

@dataclass(frozen=True, eq=False)
class FieldVector:
    """Coefficients ``c[shell - 1, channel, mode]`` on a :class:`ShellGrid`."""

    grid: ShellGrid
    lmax: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        shape = (self.grid.n_shells, 2, hm.n_modes(self.lmax))
        if c.shape != shape:
            raise ValueError(f"coefficient array must have shape {shape}, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # constructors

    @classmethod
    def zeros(cls, grid: ShellGrid, lmax: int) -> "FieldVector":
        return cls(grid, lmax, np.zeros((grid.n_shells, 2, hm.n_modes(lmax)), dtype=complex))

    @classmethod
    def basis(cls, grid: ShellGrid, lmax: int, shell: int, channel: int, l: int, m: int, lam: int,
              value: complex = 1.0) -> "FieldVector":
        c = np.zeros((grid.n_shells, 2, hm.n_modes(lmax)), dtype=complex)
        if not 1 <= shell <= grid.n_shells:
            raise ValueError("shell out of range")
        if l > lmax:
            raise ValueError("l exceeds lmax")
        c[shell - 1, channel, hm.mode_index(l, m, lam)] = value
        return cls(grid, lmax, c)

    @classmethod
    def random(cls, grid: ShellGrid, lmax: int, rng: np.random.Generator, density: float = 1.0,
               real: bool = False) -> "FieldVector":
        shape = (grid.n_shells, 2, hm.n_modes(lmax))
        c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        if density < 1.0:
            c *= rng.random(shape) < density
        f = cls(grid, lmax, c)
        return f.real_part() if real else f

    def like(self, coeffs) -> "FieldVector":
        """Same grid; ``coeffs`` must be a fresh array of the right shape (it is frozen, not copied)."""
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != self.coeffs.shape:
            raise ValueError(f"coefficient array must have shape {self.coeffs.shape}, got {c.shape}")
        c.setflags(write=False)
        out = object.__new__(FieldVector)
        object.__setattr__(out, "grid", self.grid)
        object.__setattr__(out, "lmax", self.lmax)
        object.__setattr__(out, "coeffs", c)
        return out

    # arithmetic

    def _check(self, other: "FieldVector"):
        if not isinstance(other, FieldVector):
            raise TypeError("expected a FieldVector")
        if other.grid != self.grid or other.lmax != self.lmax:
            raise GridMismatch("field vectors live on different grids")

    def __add__(self, other):
        self._check(other)
        return self.like(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return self.like(self.coeffs - other.coeffs)

    def __neg__(self):
        return self.like(-self.coeffs)

    def __mul__(self, z):
        if isinstance(z, FieldVector):
            return NotImplemented
        return self.like(complex(z) * self.coeffs)

    __rmul__ = __mul__

    def inner(self, other: "FieldVector") -> complex:
        self._check(other)
        return complex(np.vdot(self.coeffs, other.coeffs))

    def norm2(self) -> float:
        return float(np.sum(self.coeffs.real ** 2 + self.coeffs.imag ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def conj(self) -> "FieldVector":
        """Coefficients of the pointwise complex conjugate field."""
        return self.like(hm.conjugate_coefficients(self.coeffs, self.lmax))

    def real_part(self) -> "FieldVector":
        return self.like(0.5 * (self.coeffs + self.conj().coeffs))

    def imag_part(self) -> "FieldVector":
        """``(f - conj f) / 2``; note this is ``i`` times the pointwise imaginary part."""
        return self.like(0.5 * (self.coeffs - self.conj().coeffs))

    def is_real(self, tol: float = 1e-14) -> bool:
        return float(np.abs(self.coeffs - self.conj().coeffs).max(initial=0.0)) <= tol

    def support(self) -> np.ndarray:
        return np.abs(self.coeffs) > 0

    def shell_norms2(self) -> np.ndarray:
        return np.sum(np.abs(self.coeffs) ** 2, axis=(1, 2))

    def truncate_shells(self, n: int) -> "FieldVector":
        c = self.coeffs.copy()
        c[n:] = 0
        return self.like(c)

    def allclose(self, other: "FieldVector", atol: float = 1e-12) -> bool:
        self._check(other)
        return float(np.abs(self.coeffs - other.coeffs).max(initial=0.0)) <= atol

    # evaluation

    def evaluate(self, kvec) -> np.ndarray:
        """Field values at momenta ``kvec`` (shape ``(N, 3)``), modes synthesized directly."""
        k = np.asarray(kvec, dtype=float).reshape(-1, 3)
        r = np.linalg.norm(k, axis=1)
        Y = hm.vector_harmonics_at(self.lmax, k / r[:, None])
        out = np.zeros((k.shape[0], 3), dtype=complex)
        for i in range(1, self.grid.n_shells + 1):
            for ch in (XI, AUX):
                c = self.coeffs[i - 1, ch]
                if not np.any(c):
                    continue
                prof = radial_profile(self.grid, i, ch, r)
                if not np.any(prof):
                    continue
                out += prof[:, None] * np.tensordot(c, Y, axes=(0, 0))
        return out

    # serialization

    def to_json(self) -> str:
        entries = []
        L, M, S = hm.mode_arrays(self.lmax)
        for i, ch, a in zip(*np.nonzero(self.coeffs)):
            z = self.coeffs[i, ch, a]
            entries.append([int(i) + 1, CHANNELS[ch], int(L[a]), int(M[a]), "+" if S[a] > 0 else "-",
                            float(f"{z.real:.17g}"), float(f"{z.imag:.17g}")])
        doc = {"grid": {"kappa": self.grid.kappa, "n_shells": self.grid.n_shells, "lmax": self.lmax},
               "entries": entries}
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FieldVector":
        doc = json.loads(text)
        g = doc["grid"]
        grid = ShellGrid(float(g["kappa"]), int(g["n_shells"]))
        lmax = int(g["lmax"])
        c = np.zeros((grid.n_shells, 2, hm.n_modes(lmax)), dtype=complex)
        for shell, ch, l, m, lam, re, im in doc["entries"]:
            c[shell - 1, CHANNELS.index(ch), hm.mode_index(l, m, 1 if lam == "+" else -1)] = complex(re, im)
        return cls(grid, lmax, c)

    def __repr__(self):
        return f"FieldVector(n_shells={self.grid.n_shells}, lmax={self.lmax}, nnz={int(np.count_nonzero(self.coeffs))})"


def inner_product(f: FieldVector, g: FieldVector) -> complex:
    return f.inner(g)


def symplectic_form(f: FieldVector, g: FieldVector) -> float:
    return f.inner(g).imag


def real_basis(grid: ShellGrid, lmax: int, shells: Iterable[int] | None = None) -> list[FieldVector]:
    """``{e_a, i e_a}`` over basis vectors of the selected shells."""
    shells = list(shells) if shells is not None else list(range(1, grid.n_shells + 1))
    out = []
    for i in shells:
        for ch in (XI, AUX):
            for mode in hm.modes(lmax):
                e = FieldVector.basis(grid, lmax, i, ch, mode.l, mode.m, mode.lam)
                out += [e, 1j * e]
    return out


def symplectic_gram(vectors: Sequence[FieldVector]) -> np.ndarray:
    C = np.array([v.coeffs.ravel() for v in vectors])
    return (C.conj() @ C.T).imag


# ----------------------------------------------------------------------------
# pointwise transverse projection

def polarization_vectors(khat, tol: float = hm.POLE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """``eps_plus = (k2, -k1, 0)/sqrt(k1^2 + k2^2)`` and ``eps_minus = khat x eps_plus``."""
    k = np.asarray(khat, dtype=float)
    k = k / np.linalg.norm(k, axis=-1, keepdims=True)
    rho = np.hypot(k[..., 0], k[..., 1])
    if np.any(rho < tol):
        raise hm.PoleError("polarization vectors are singular on the k3 axis")
    ep = np.stack([k[..., 1], -k[..., 0], np.zeros_like(rho)], axis=-1) / rho[..., None]
    em = np.cross(k, ep)
    return ep, em


def transverse_project(values, khat) -> np.ndarray:
    """``sum_λ (f . eps_λ) eps_λ`` pointwise."""
    f = np.asarray(values)
    ep, em = polarization_vectors(khat)
    return (np.sum(f * ep, axis=-1, keepdims=True) * ep
            + np.sum(f * em, axis=-1, keepdims=True) * em)


# ----------------------------------------------------------------------------
# Weyl words, vacuum, automorphisms

@dataclass(frozen=True)
class WeylWord:
    """``phase * W(displacement)``."""

    phase: complex
    displacement: FieldVector

    def __post_init__(self):
        if abs(abs(self.phase) - 1.0) > 1e-12:
            raise ValueError("Weyl word phase must have unit modulus")

    @classmethod
    def generator(cls, f: FieldVector) -> "WeylWord":
        return cls(1.0 + 0j, f)

    def __matmul__(self, other: "WeylWord") -> "WeylWord":
        f, g = self.displacement, other.displacement
        phase = self.phase * other.phase * np.exp(-1j * symplectic_form(f, g))
        return WeylWord(complex(phase), f + g)

    def inverse(self) -> "WeylWord":
        return WeylWord(complex(np.conj(self.phase)), -self.displacement)

    def is_scalar(self, tol: float = 0.0) -> bool:
        return float(np.abs(self.displacement.coeffs).max(initial=0.0)) <= tol


def weyl_multiply(words: Sequence[WeylWord]) -> WeylWord:
    if not words:
        raise ValueError("empty product")
    out = words[0]
    for w in words[1:]:
        out = out @ w
    return out


def weyl_group_commutator(f: FieldVector, g: FieldVector) -> WeylWord:
    """``W(f) W(g) W(f)^-1 W(g)^-1``."""
    Wf, Wg = WeylWord.generator(f), WeylWord.generator(g)
    return weyl_multiply([Wf, Wg, Wf.inverse(), Wg.inverse()])


def weyl_commutator_norm(f: FieldVector, g: FieldVector) -> float:
    """``||[W(f), W(g)]|| = 2 |sin sigma(f, g)|``."""
    return 2.0 * abs(np.sin(symplectic_form(f, g)))


def vacuum_functional(f: FieldVector | WeylWord) -> complex:
    """``exp(-||f||^2 / 2)`` extended linearly to Weyl words."""
    if isinstance(f, WeylWord):
        return f.phase * np.exp(-0.5 * f.displacement.norm2())
    return float(np.exp(-0.5 * f.norm2()))


class _Identity:
    def apply(self, f):
        return f


IDENTITY_MAP = _Identity()


def automorphism_phase(v: FieldVector, Tf: FieldVector) -> complex:
    """Phase ``exp(-2i Im<v, T f>)`` picked up by ``W(f)`` under ``alpha_(v, T)``."""
    return complex(np.exp(-2j * symplectic_form(v, Tf)))


def automorphism(v: FieldVector, T=IDENTITY_MAP):
    """``alpha_(v, T)``: ``W(f) -> exp(-2i (v, T f)) W(T f)`` on Weyl words.

    ``T`` is any object with an ``apply`` method; the pairing ``(v, f)`` is
    ``Im <v, f>``.
    """
    def alpha(word: WeylWord) -> WeylWord:
        Tf = T.apply(word.displacement)
        return WeylWord(word.phase * automorphism_phase(v, Tf), Tf)

    return alpha
