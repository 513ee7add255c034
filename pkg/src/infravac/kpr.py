"""The infravacuum map as exact diagonal data on coefficient space.

On shell ``i`` the projection ``Q_i`` keeps the ``XI`` radial channel and the
angular modes with ``l <= lcut(i)``. Then

    T1 = 1 + sum_i (b_i - 1) Q_i,   T2 = 1 + sum_i (1/b_i - 1) Q_i,
    T  = T1 (1 + G)/2 + T2 (1 - G)/2,

with ``G`` the complex conjugation of the field. ``T`` is real linear and
symplectic; it is not complex linear.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import harmonics as hm
from .fieldspace import XI, FieldVector, GridMismatch, ShellGrid, symplectic_form


class CertificationError(AssertionError):
    """An identity failed; ``vector`` holds the offending sample in JSON form."""

    def __init__(self, message: str, vector: str = ""):
        super().__init__(message)
        self.vector = vector


def default_b(i: int) -> float:
    return 1.0 / i


def default_lcut(i: int) -> int:
    return i


@dataclass(frozen=True)
class KPRPolicy:
    """Shell multipliers ``b_i`` and the angular cut of ``Q_i``."""

    b: Callable[[int], float] = default_b
    lcut: Callable[[int], int] = default_lcut
    name: str = "b_i = 1/i, l <= i"

    def validate(self, n_shells: int):
        b = np.array([self.b(i) for i in range(1, n_shells + 1)], dtype=float)
        cut = np.array([self.lcut(i) for i in range(1, n_shells + 1)])
        if np.any(b <= 0) or np.any(b > 1):
            raise ValueError("multipliers must satisfy 0 < b_i <= 1")
        if np.any(np.diff(b) >= 0):
            raise ValueError("multipliers must be strictly decreasing")
        if np.any(np.diff(cut) < 0):
            raise ValueError("angular cuts must be nested")


@dataclass(frozen=True, eq=False)
class KPRMap:
    grid: ShellGrid
    lmax: int
    policy: KPRPolicy = field(default_factory=KPRPolicy)
    m1: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.policy.validate(self.grid.n_shells)
        L, _, _ = hm.mode_arrays(self.lmax)
        m1 = np.ones((self.grid.n_shells, 2, L.size))
        for i in range(1, self.grid.n_shells + 1):
            m1[i - 1, XI, L <= self.policy.lcut(i)] = self.policy.b(i)
        m1.setflags(write=False)
        object.__setattr__(self, "m1", m1)

    @property
    def m2(self) -> np.ndarray:
        return 1.0 / self.m1

    def b(self, i: int) -> float:
        return float(self.policy.b(i))

    def _check(self, f: FieldVector):
        if f.grid != self.grid or f.lmax != self.lmax:
            raise GridMismatch("vector not on the map's grid")

    def in_Q(self) -> np.ndarray:
        """Mask of basis channels hit by some ``Q_i`` (with ``b_i != 1``)."""
        return self.m1 != 1.0

    def apply_T1(self, f: FieldVector, power: int = 1) -> FieldVector:
        self._check(f)
        return f.like(f.coeffs * self.m1 ** power)

    def apply_T2(self, f: FieldVector, power: int = 1) -> FieldVector:
        self._check(f)
        return f.like(f.coeffs * self.m1 ** (-power))

    def apply_power(self, f: FieldVector, k: int) -> FieldVector:
        """``T**k`` for any integer ``k``."""
        self._check(f)
        if k == 0:
            return f
        c = f.coeffs
        g = f.conj().coeffs
        m = self.m1 ** k
        return f.like(0.5 * (m * (c + g) + (c - g) / m))

    def apply(self, f: FieldVector) -> FieldVector:
        return self.apply_power(f, 1)

    apply_T = apply

    def apply_inverse(self, f: FieldVector) -> FieldVector:
        return self.apply_power(f, -1)

    apply_T_inverse = apply_inverse

    def apply_transpose_power(self, f: FieldVector, k: int) -> FieldVector:
        """``(T**k)^t`` with respect to the pairing ``Im <., .>``; equals ``T**-k``."""
        return self.apply_power(f, -k)

    def multiplier_rows(self) -> list[tuple[int, int, float]]:
        """``(shell, l, multiplier of T1)`` on the ``XI`` channel."""
        L, _, _ = hm.mode_arrays(self.lmax)
        first = {l: int(np.argmax(L == l)) for l in range(1, self.lmax + 1)}
        return [(i, l, float(self.m1[i - 1, XI, first[l]]))
                for i in range(1, self.grid.n_shells + 1) for l in range(1, self.lmax + 1)]

    def multiplier_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shell", "l", "multiplier"])
        for i, l, m in self.multiplier_rows():
            w.writerow([i, l, repr(m)])
        return buf.getvalue()


# ----------------------------------------------------------------------------
# certification

def _unit_random(T: KPRMap, rng, real=False, density=1.0) -> FieldVector:
    f = FieldVector.random(T.grid, T.lmax, rng, density=density, real=real)
    n = f.norm()
    return f * (1.0 / n) if n else f


def certify_lemma_T_prop(T: KPRMap, n_samples: int = 100, rng=None, tol: float = 1e-12,
                         raise_on_failure: bool = True) -> dict:
    """Check the algebraic identities of the map on random unit vectors.

    Identities: ``<T1 f, T2 g> = <f, g>``; ``T1 T2 = T2 T1 = 1``;
    ``sigma(T f, T g) = sigma(f, g)``; ``T^-1 T = T T^-1 = 1``. Samples are
    normalized so the absolute deviations are relative to ``||f|| ||g||``.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    worst = {"T1T2_pairing": 0.0, "T1T2": 0.0, "T2T1": 0.0, "symplectic": 0.0,
             "inverse_left": 0.0, "inverse_right": 0.0}
    for _ in range(n_samples):
        f = _unit_random(T, rng, density=float(rng.uniform(0.05, 1.0)))
        g = _unit_random(T, rng, density=float(rng.uniform(0.05, 1.0)))
        dev = {
            "T1T2_pairing": abs(T.apply_T1(f).inner(T.apply_T2(g)) - f.inner(g)),
            "T1T2": np.abs((T.apply_T1(T.apply_T2(f)) - f).coeffs).max(),
            "T2T1": np.abs((T.apply_T2(T.apply_T1(f)) - f).coeffs).max(),
            "symplectic": abs(symplectic_form(T.apply(f), T.apply(g)) - symplectic_form(f, g)),
            "inverse_left": np.abs((T.apply_inverse(T.apply(f)) - f).coeffs).max(),
            "inverse_right": np.abs((T.apply(T.apply_inverse(f)) - f).coeffs).max(),
        }
        for k, v in dev.items():
            worst[k] = max(worst[k], float(v))
            if v > tol and raise_on_failure:
                raise CertificationError(f"identity {k} off by {v:.3e}", f.to_json())
    return {"samples": n_samples, "tolerance": tol, "max_deviation": worst,
            "ok": all(v <= tol for v in worst.values())}


def norm_bound_T1(T: KPRMap, samples: int = 100, rng=None) -> float:
    """``max ||T1 f|| / ||f||`` over random real vectors."""
    rng = np.random.default_rng(1) if rng is None else rng
    best = 0.0
    for _ in range(samples):
        f = _unit_random(T, rng, real=True, density=float(rng.uniform(0.05, 1.0)))
        best = max(best, T.apply_T1(f).norm() / f.norm())
    return best


def power_iteration_norm(apply: Callable[[FieldVector], FieldVector], start: FieldVector,
                         max_iter: int = 5000, rtol: float = 1e-13) -> tuple[float, int]:
    """Norm of a positive self-adjoint map by power iteration.

    The ratio ``||A x|| / ||x||`` increases monotonically to the norm; iteration
    stops once successive estimates agree to ``rtol``.
    """
    x = start * (1.0 / start.norm())
    est = 0.0
    for it in range(1, max_iter + 1):
        y = apply(x)
        new = y.norm()
        x = y * (1.0 / new)
        if abs(new - est) <= rtol * new:
            return new, it
        est = new
    return est, max_iter


def T2_truncated_norm(T: KPRMap, n: int, rng=None, max_iter: int = 20000) -> tuple[float, int]:
    """Power-iteration norm of ``T2`` restricted to shells ``1..n``."""
    rng = np.random.default_rng(2) if rng is None else rng
    start = FieldVector.random(T.grid, T.lmax, rng).truncate_shells(n)
    return power_iteration_norm(T.apply_T2, start, max_iter=max_iter)


def unboundedness_witness(T: KPRMap, vectors: Sequence[FieldVector]) -> list[dict]:
    """``||T(i v)||^2`` along a sequence together with the identity ``sigma(T v, T(i v)) = ||v||^2``."""
    rows = []
    for n, v in enumerate(vectors, start=1):
        Tv, Tiv = T.apply(v), T.apply(1j * v)
        rows.append({"n": n, "norm2_v": v.norm2(), "norm2_Tv": Tv.norm2(), "norm2_Tiv": Tiv.norm2(),
                     "sigma_Tv_Tiv": symplectic_form(Tv, Tiv)})
    return rows


def unboundedness_witness_T2(T: KPRMap, n: int, spec=None) -> np.ndarray:
    """``||T(i v_m)||`` for the dressing approximants ``v_1 .. v_n`` of ``spec``."""
    from .dressing import DressingSpec, v_dressing
    if not 1 <= n <= T.grid.n_shells:
        raise ValueError(f"n must lie in 1..{T.grid.n_shells}")
    spec = DressingSpec(kappa=T.grid.kappa) if spec is None else spec
    rows = unboundedness_witness(T, [v_dressing(spec, m, T.grid, T.lmax) for m in range(1, n + 1)])
    return np.sqrt([r["norm2_Tiv"] for r in rows])
