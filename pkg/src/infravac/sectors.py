"""A decidable coset model of sectors for the group of translations and infravacuum powers.

Elements are pairs ``(v, T**k)`` with product

    (v1, T**k1)(v2, T**k2) = (v1 + (T**-k1)^t v2, T**(k1 + k2)),

where ``(T**m)^t = T**-m`` for the pairing ``Im <., .>``. A dual vector is a
generic square-summable part plus exact rational coefficients on the symbols
``D[j, p] = T**p v_j`` (``v_j`` the dressing vector of velocity ``w_j``):

* ``p >= 1``: square summable, with numeric value ``T**(p-1)`` of the
  certified limit ``T v_j``;
* ``p <= 0``: independent modulo square-summable vectors.

``D[j, 0] = v_j`` and ``D[j, -1] = T**-1 v_j`` are distinct symbols because
``T**-1 v_j - v_j`` has per-shell norms growing like ``i**2``.

MODEL AXIOM: the stabilizer of the vacuum label is exactly
``{(u, T**0) : u square summable}``. Labels are right cosets ``H g`` and carry
``(k, coefficients with p <= 0)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dressing import DressingSpec, convergence_diagnostics, v_dressing, v_limit_truncated
from .fieldspace import FieldVector
from .kpr import KPRMap

MODEL_AXIOM = ("stabilizer of the vacuum label is exactly the square-summable translations "
               "with T-power zero; T**k for k != 0 does not stabilize")


class BasisMismatch(ValueError):
    pass


class UncertifiedDirection(RuntimeError):
    pass


class OutsideModelOrbit(ValueError):
    pass


@dataclass(eq=False)
class DressingBasis:
    """Declared dressing directions on a common grid, with their certified limits."""

    kpr: KPRMap
    velocities: list
    alpha: float = 0.1
    v_max: float = 0.95
    certificates: dict = field(default_factory=dict)

    def __post_init__(self):
        self.velocities = [tuple(float(x) for x in w) for w in self.velocities]
        if len(set(self.velocities)) != len(self.velocities):
            raise ValueError("dressing velocities must be distinct")
        for w in self.velocities:
            if np.linalg.norm(w) == 0:
                raise ValueError("w = 0 gives the zero dressing vector")
        self.specs = [DressingSpec(w, self.alpha, self.kpr.grid.kappa, self.v_max) for w in self.velocities]

    @property
    def d(self) -> int:
        return len(self.velocities)

    def certify(self, j: int | None = None, tol: float = 1e-14) -> dict:
        """Run the convergence diagnostics for direction ``j`` (all if None) and store ``T v_j``."""
        js = range(self.d) if j is None else [j]
        for jj in js:
            r = convergence_diagnostics(self.specs[jj], self.kpr, self.kpr.grid.n_shells + 1)
            shape_ok = r.K_tail_fit <= 2 * np.log(2.0) * r.K_shell * (1 + 1e-12)
            ok = bool(shape_ok and r.psi_gram_offdiag <= tol and np.isfinite(r.K_shell))
            Tv = self.kpr.apply(v_limit_truncated(self.specs[jj], self.kpr.grid, self.kpr.lmax))
            self.certificates[jj] = {"ok": ok, "Tv": Tv, "norm2_Tv": Tv.norm2(),
                                     "limit_estimate": r.limit_estimate, "K_shell": r.K_shell,
                                     "K_tail_fit": r.K_tail_fit}
        return {jj: self.certificates[jj]["ok"] for jj in js}

    def certified(self, j: int) -> bool:
        c = self.certificates.get(j)
        return bool(c and c["ok"])

    def Tv(self, j: int) -> FieldVector:
        if not self.certified(j):
            raise UncertifiedDirection(f"direction {j} has no certified limit; run certify() first")
        return self.certificates[j]["Tv"]

    def fingerprints(self) -> list[dict]:
        return [{"index": j, "w": list(self.velocities[j]),
                 "norm2_Tv_truncated": float(self.certificates[j]["norm2_Tv"]),
                 "norm2_Tv_limit_estimate": float(self.certificates[j]["limit_estimate"])}
                for j in sorted(self.certificates)]

    def zero_square(self) -> FieldVector:
        return FieldVector.zeros(self.kpr.grid, self.kpr.lmax)


def _clean(coeffs: dict) -> tuple:
    return tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v != 0))


@dataclass(frozen=True, eq=False)
class DualVector:
    basis: DressingBasis
    generic: FieldVector
    symbols: tuple = ()

    @classmethod
    def zero(cls, basis: DressingBasis) -> "DualVector":
        return cls(basis, basis.zero_square())

    @classmethod
    def dressing(cls, basis: DressingBasis, j: int, c=1, p: int = 0) -> "DualVector":
        if not 0 <= j < basis.d:
            raise IndexError("no such dressing direction")
        return cls(basis, basis.zero_square(), _clean({(j, p): c}))

    @classmethod
    def square(cls, basis: DressingBasis, f: FieldVector) -> "DualVector":
        return cls(basis, f)

    @property
    def coeffs(self) -> dict:
        return dict(self.symbols)

    @property
    def dressing_coeffs(self) -> dict:
        """Coefficients on the symbols that are not square summable."""
        return {k: v for k, v in self.symbols if k[1] <= 0}

    @property
    def square_part(self) -> FieldVector:
        """Generic part plus the numeric values of the square-summable symbols."""
        out = self.generic
        for (j, p), c in self.symbols:
            if p >= 1:
                out = out + self.basis.kpr.apply_power(self.basis.Tv(j), p - 1) * float(c)
        return out

    def _check(self, other: "DualVector"):
        if other.basis is not self.basis:
            raise BasisMismatch("dual vectors use different dressing bases")

    def __add__(self, other: "DualVector") -> "DualVector":
        self._check(other)
        c = self.coeffs
        for k, v in other.symbols:
            c[k] = c.get(k, 0) + v
        return DualVector(self.basis, self.generic + other.generic, _clean(c))

    def __neg__(self) -> "DualVector":
        return DualVector(self.basis, -self.generic, tuple((k, -v) for k, v in self.symbols))

    def __sub__(self, other: "DualVector") -> "DualVector":
        return self + (-other)

    def scale(self, c) -> "DualVector":
        c = Fraction(c)
        return DualVector(self.basis, self.generic * float(c), _clean({k: v * c for k, v in self.symbols}))

    def in_R(self) -> bool:
        """Square summable: no symbol with ``p <= 0``."""
        return not self.dressing_coeffs

    def in_S(self) -> bool:
        """Square summable plus a real span of the dressing vectors themselves."""
        return all(p == 0 for (_, p) in self.dressing_coeffs)

    def equals(self, other: "DualVector", atol: float = 1e-12) -> bool:
        self._check(other)
        return self.symbols == other.symbols and self.generic.allclose(other.generic, atol)

    def magnitude(self) -> float:
        return float(np.abs(self.generic.coeffs).max(initial=0.0))


def transpose_action(k: int, u: DualVector, bound: int = 8) -> DualVector:
    """``(T**k)^t u = T**-k u``.

    The generic part is mapped exactly by the diagonal map; symbols shift
    ``D[j, p] -> D[j, p - k]``. A symbol landing on ``p >= 1`` is square summable
    and needs the certified limit of its direction.
    """
    if abs(k) > bound:
        raise ValueError(f"|k| = {abs(k)} exceeds the configured bound {bound}")
    B = u.basis
    out = {}
    for (j, p), c in u.symbols:
        q = p - k
        if q >= 1 and not B.certified(j):
            raise UncertifiedDirection(f"direction {j} has no certified limit; run certify() first")
        out[(j, q)] = c
    return DualVector(B, B.kpr.apply_power(u.generic, -k), _clean(out))


@dataclass(frozen=True, eq=False)
class ModelGroupElement:
    k: int
    v: DualVector

    @classmethod
    def identity(cls, basis: DressingBasis) -> "ModelGroupElement":
        return cls(0, DualVector.zero(basis))

    @classmethod
    def power(cls, basis: DressingBasis, k: int) -> "ModelGroupElement":
        return cls(int(k), DualVector.zero(basis))

    @classmethod
    def translation(cls, v: DualVector) -> "ModelGroupElement":
        return cls(0, v)

    @property
    def basis(self) -> DressingBasis:
        return self.v.basis

    def __mul__(self, other: "ModelGroupElement") -> "ModelGroupElement":
        return model_multiply(self, other)

    def inverse(self) -> "ModelGroupElement":
        return model_inverse(self)

    def equals(self, other: "ModelGroupElement", atol: float = 1e-12) -> bool:
        return self.k == other.k and self.v.equals(other.v, atol)

    def in_stabilizer(self) -> bool:
        """Membership in ``H = L*_R x {T**0}``."""
        return self.k == 0 and self.v.in_R()

    def in_S(self) -> bool:
        return self.k == 0 and self.v.in_S()


def model_multiply(g1: ModelGroupElement, g2: ModelGroupElement) -> ModelGroupElement:
    g1.v._check(g2.v)
    return ModelGroupElement(g1.k + g2.k, g1.v + transpose_action(-g1.k, g2.v, bound=10 ** 6))


def model_inverse(g: ModelGroupElement) -> ModelGroupElement:
    """``(v, T**k)^-1 = (-(T**k)^t v, T**-k)``."""
    return ModelGroupElement(-g.k, -transpose_action(g.k, g.v, bound=10 ** 6))


def conjugate(g: ModelGroupElement, s: ModelGroupElement) -> ModelGroupElement:
    """``g s g^-1``."""
    return g * s * g.inverse()


# ----------------------------------------------------------------------------
# labels and classes

@dataclass(frozen=True, eq=False)
class SectorLabel:
    """Right coset ``H g`` of the stabilizer; ``representative`` is any ``g`` in it."""

    representative: ModelGroupElement

    @classmethod
    def vacuum(cls, basis: DressingBasis) -> "SectorLabel":
        return cls(ModelGroupElement.identity(basis))

    @property
    def key(self) -> tuple:
        g = self.representative
        return (g.k, tuple(sorted(g.v.dressing_coeffs.items())))

    @property
    def basis(self) -> DressingBasis:
        return self.representative.basis

    def __eq__(self, other):
        if not isinstance(other, SectorLabel):
            return NotImplemented
        if other.basis is not self.basis:
            raise BasisMismatch("labels use different dressing bases")
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        k, c = self.key
        terms = " + ".join(f"{v}*D[{j},{p}]" for (j, p), v in c) or "0"
        return f"SectorLabel(k={k}, {terms})"


def sector_act(x: SectorLabel, g: ModelGroupElement) -> SectorLabel:
    if g.basis is not x.basis:
        raise BasisMismatch("label and element use different dressing bases")
    return SectorLabel(x.representative * g)


def double_coset_key(u: ModelGroupElement) -> tuple:
    """Canonical form of ``H u H``.

    ``H (v, T**k) H = {(s1 + v + T**k s2, T**k)}`` with ``s1, s2`` square summable.
    ``T**k`` of a square-summable symbol ``D[j, q]`` (``q >= 1``) is ``D[j, q + k]``,
    so for ``k < 0`` the symbols with ``k < p <= 0`` are absorbed.
    """
    cut = min(0, u.k)
    return (u.k, tuple(sorted((jp, c) for jp, c in u.v.dressing_coeffs.items() if jp[1] <= cut)))


@dataclass(frozen=True, eq=False)
class ModelClass:
    """A conjugate class with respect to ``(x0, a)``: the set ``{H u g0^-1 h g0 a : h in H}``.

    Two classes with the same ``(x0, a)`` are equal iff the double cosets
    ``H u g0^-1 H`` agree; ``key`` is the canonical form of that double coset.
    """

    kind: str
    key: tuple
    representative: SectorLabel
    acting: str

    def __eq__(self, other):
        if not isinstance(other, ModelClass):
            return NotImplemented
        return self.acting == other.acting and self.key == other.key

    def __hash__(self):
        return hash((self.acting, self.key))

    def contains(self, y: SectorLabel, x0: SectorLabel, a: ModelGroupElement) -> bool:
        """``y`` belongs to the class iff ``g0 g_y a^-1 g0^-1`` lies in the class's double coset."""
        g0 = x0.representative
        gy = g0.inverse() * y.representative
        return double_coset_key(g0 * gy * a.inverse() * g0.inverse()) == self.key


def _acting_tag(x0: SectorLabel, a: ModelGroupElement) -> str:
    return f"a^-1 G_x0 a with x0={x0!r}, a=(k={a.k}, {sorted(a.v.coeffs.items())})"


def reference_element_model(x: SectorLabel, x0: SectorLabel) -> ModelGroupElement:
    """A ``g_x`` with ``x = x0 . g_x``."""
    if x.basis is not x0.basis:
        raise OutsideModelOrbit("x and x0 live on different dressing bases")
    return x0.representative.inverse() * x.representative


def conjugate_classes_model(x: SectorLabel, x0: SectorLabel, a: ModelGroupElement,
                            gx: ModelGroupElement | None = None) -> tuple[ModelClass, ModelClass]:
    """First and second conjugate classes of ``x``.

    First: ``[x0 . a . gx^-1 . a]`` under ``a^-1 G_x0 a``; second: ``[x0 . gx]``
    under the same group. With ``x0 = H g0`` the descriptors are the double
    cosets of ``g0 a gx^-1 g0^-1`` and ``g0 gx a^-1 g0^-1``.
    """
    if gx is None:
        gx = reference_element_model(x, x0)
    elif not sector_act(x0, gx) == x:
        raise OutsideModelOrbit("gx does not carry x0 to x")
    g0 = x0.representative
    tag = _acting_tag(x0, a)
    u1 = g0 * a * gx.inverse() * g0.inverse()
    u2 = g0 * gx * a.inverse() * g0.inverse()
    first = ModelClass("first", double_coset_key(u1), sector_act(x0, a * gx.inverse() * a), tag)
    second = ModelClass("second", double_coset_key(u2), sector_act(x0, gx), tag)
    return first, second


def class_sample(c: ModelClass, x0: SectorLabel, a: ModelGroupElement, hs) -> list[SectorLabel]:
    """Points ``rep . a^-1 . g0^-1 h g0 . a`` of a class for sampled ``h`` in ``H``."""
    g0 = x0.representative
    return [sector_act(c.representative, a.inverse() * g0.inverse() * h * g0 * a) for h in hs]


# ----------------------------------------------------------------------------
# sampling and verification

def random_square(basis: DressingBasis, rng, density: float = 0.2) -> FieldVector:
    return FieldVector.random(basis.kpr.grid, basis.kpr.lmax, rng, density=density) * 0.1


def random_fraction(rng, den: int = 8) -> Fraction:
    n = 0
    while n == 0:
        n = int(rng.integers(-den, den + 1))
    return Fraction(n, int(rng.integers(1, den + 1)))


def random_dual(basis: DressingBasis, rng, powers=(-2, 2), n_terms: int = 3) -> DualVector:
    c = {}
    for _ in range(int(rng.integers(0, n_terms + 1))):
        key = (int(rng.integers(basis.d)), int(rng.integers(powers[0], powers[1] + 1)))
        if key[1] >= 1 and not basis.certified(key[0]):
            continue
        c[key] = random_fraction(rng)
    return DualVector(basis, random_square(basis, rng), _clean(c))


def random_element(basis: DressingBasis, rng, kmax: int = 2) -> ModelGroupElement:
    return ModelGroupElement(int(rng.integers(-kmax, kmax + 1)), random_dual(basis, rng))


def random_stabilizer_element(basis: DressingBasis, rng) -> ModelGroupElement:
    """Element of ``H``: generic square part plus square-summable symbols."""
    c = {(j, int(rng.integers(1, 3))): random_fraction(rng) for j in range(basis.d) if rng.random() < 0.5}
    return ModelGroupElement(0, DualVector(basis, random_square(basis, rng), _clean(c)))


def random_S_element(basis: DressingBasis, rng) -> ModelGroupElement:
    c = {(j, 0): random_fraction(rng) for j in range(basis.d) if rng.random() < 0.7}
    return ModelGroupElement(0, DualVector(basis, random_square(basis, rng), _clean(c)))


@dataclass
class Claim:
    claim_id: str
    ok: bool
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"claim": self.claim_id, "ok": self.ok, "checked": self.checked,
                "violations": self.violations[:20], "details": self.details}


def _claim(claim_id, violations, checked, **details) -> Claim:
    return Claim(claim_id, not violations, checked, violations, details)


def normalizer_violations(a: ModelGroupElement, S_samples) -> list[str]:
    """Pairs ``(a, s)`` with ``a s a^-1`` outside the stabilizer."""
    out = []
    for i, s in enumerate(S_samples):
        c = conjugate(a, s)
        if not c.in_stabilizer():
            out.append(f"s#{i}: a s a^-1 has k={c.k}, dressing={sorted(c.v.dressing_coeffs.items())}")
    return out


def transpose_not_square_evidence(basis: DressingBasis, j: int = 0) -> dict:
    """Per-shell norms of ``T**-1 v_j - v_j`` on the truncated grid: they grow like ``i**2``."""
    n = basis.kpr.grid.n_shells
    v = v_dressing(basis.specs[j], n + 1, basis.kpr.grid, basis.kpr.lmax)
    diff = basis.kpr.apply_inverse(v) - v
    s = diff.shell_norms2()
    i = np.arange(1, n + 1)
    h = n // 2
    slope = float(np.polyfit(np.log(i[h:]), np.log(s[h:]), 1)[0])
    return {"shell_norm2_first": float(s[0]), "shell_norm2_last": float(s[-1]), "growth_exponent": slope}


def independence_certificate(basis: DressingBasis, tol: float = 1e-6) -> dict:
    """Evidence that the symbols with ``p <= 0`` are independent modulo square-summable vectors.

    On shell ``i`` the ``l <= i`` part of ``D[j, p]`` is ``i**-p`` times the
    angular profile ``c_j``; a combination is square summable only if each
    polynomial ``sum_p c_jp i**-p`` vanishes once the profiles ``c_j`` are
    independent. Independence is read off the smallest eigenvalue of their
    normalized Gram matrix. Pairwise differences of dressing vectors must also
    grow linearly in ``n``.
    """
    grid, lmax = basis.kpr.grid, basis.kpr.lmax
    n = grid.n_shells
    vs = [v_dressing(s, n + 1, grid, lmax) for s in basis.specs]
    prof = np.array([v.coeffs[n - 1, 0] for v in vs])
    prof = prof / np.linalg.norm(prof, axis=1, keepdims=True)
    G = prof.conj() @ prof.T
    lam = float(np.linalg.eigvalsh(G).min())
    pair = []
    for a_, b_ in itertools.combinations(range(basis.d), 2):
        norms = [(v_dressing(basis.specs[a_], m, grid, lmax) - v_dressing(basis.specs[b_], m, grid, lmax)).norm2()
                 for m in range(2, n + 2)]
        d = np.diff(norms)
        pair.append({"pair": [a_, b_], "increment_min": float(d.min()), "increment_max": float(d.max())})
    linear = all(p["increment_min"] > 0 and p["increment_max"] - p["increment_min"] <= 1e-12 * p["increment_max"]
                 for p in pair)
    evidence = transpose_not_square_evidence(basis)
    ok = lam > tol and linear and evidence["growth_exponent"] > 1.5
    return {"ok": bool(ok), "gram_min_eigenvalue": lam, "pairwise": pair,
            "inverse_transpose_not_square": evidence}


def verify_sector_theorems(basis: DressingBasis, n_samples: int = 20, seed: int = 0) -> dict:
    """Verify the merging and non-merging statements in the coset model."""
    rng = np.random.default_rng(seed)
    if not all(basis.certified(j) for j in range(basis.d)):
        basis.certify()
    claims = []
    x0 = SectorLabel.vacuum(basis)
    e = ModelGroupElement.identity(basis)
    aT = ModelGroupElement.power(basis, 1)
    D = [ModelGroupElement.translation(DualVector.dressing(basis, j)) for j in range(basis.d)]
    S_samples = D + [random_S_element(basis, rng) for _ in range(n_samples)]
    H_samples = [random_stabilizer_element(basis, rng) for _ in range(n_samples)]
    G_samples = D + [random_element(basis, rng) for _ in range(n_samples)]

    ind = independence_certificate(basis)
    claims.append(_claim("dressing-independence", [] if ind["ok"] else ["independence not certified"],
                         basis.d, **ind))

    # group axioms
    viol, cnt = [], 0
    # the square parts pass through diagonal maps with entries up to b_n**-k, so the
    # tolerance is 1e-12 relative to the largest intermediate coefficient
    for g1, g2, g3 in zip(G_samples, G_samples[1:], G_samples[2:]):
        cnt += 1
        left, right = (g1 * g2) * g3, g1 * (g2 * g3)
        scale = max(1.0, left.v.magnitude(), right.v.magnitude(), (g2 * g3).v.magnitude(), (g1 * g2).v.magnitude())
        if not left.equals(right, 1e-12 * scale):
            viol.append(f"associativity fails on triple #{cnt}")
        gi = g1.inverse()
        scale = max(1.0, gi.v.magnitude(), g1.v.magnitude())
        if not (g1 * gi).equals(e, 1e-12 * scale) or not (gi * g1).equals(e, 1e-12 * scale):
            viol.append(f"inverse fails on #{cnt}")
    for j in range(basis.d):
        lhs = aT * D[j] * aT.inverse()
        rhs = ModelGroupElement.translation(transpose_action(-1, D[j].v))
        cnt += 1
        if not lhs.equals(rhs):
            viol.append(f"T v T^-1 != (T^-1)^t v for direction {j}")
    claims.append(_claim("model-group-axioms", viol, cnt))

    # relative normalizer
    viol_T = normalizer_violations(aT, S_samples)
    viol_e = normalizer_violations(e, S_samples)
    claims.append(_claim("model-normalizer-contains-T", viol_T, len(S_samples)))
    claims.append(_claim("model-normalizer-excludes-identity", [] if viol_e else ["identity normalizes S"],
                         len(S_samples), violating_pairs=viol_e[:5]))

    # label equality as an equivalence relation
    viol, cnt = [], 0
    labels = [sector_act(x0, g) for g in G_samples]
    labels += [sector_act(y, h) for y, h in zip(labels, H_samples)]
    for p, q, r in itertools.product(labels[:8], repeat=3):
        cnt += 1
        if not p == p or (p == q) != (q == p) or (p == q and q == r and not p == r):
            viol.append("equivalence axioms fail")
    for g, h in zip(G_samples, H_samples):
        cnt += 1
        if not sector_act(x0, h * g) == sector_act(x0, g):
            viol.append("stabilizer element changes the label")
    claims.append(_claim("label-equivalence", viol, cnt))

    # class descriptors: gx independence and iteration stability
    viol, cnt = [], 0
    for a in (e, aT):
        for g, h in zip(G_samples, H_samples):
            x = sector_act(x0, g)
            c1, c2 = conjugate_classes_model(x, x0, a, g)
            d1, d2 = conjugate_classes_model(x, x0, a, h * g)
            cnt += 1
            if c1 != d1 or c2 != d2:
                viol.append("class depends on the choice of g_x")
            for y in class_sample(c2, x0, a, H_samples[:3]):
                if not c2.contains(y, x0, a) or conjugate_classes_model(y, x0, a)[0] != c1:
                    viol.append("third iteration differs from first")
            for y in class_sample(c1, x0, a, H_samples[:3]):
                if not c1.contains(y, x0, a) or conjugate_classes_model(y, x0, a)[0] != c2:
                    viol.append("fourth iteration differs from second")
    claims.append(_claim("class-gx-independence-and-iteration", viol, cnt))

    # (a) with a = identity, different labels have different classes
    viol, cnt = [], 0
    c_vac = conjugate_classes_model(x0, x0, e)
    for g in G_samples:
        x = sector_act(x0, g)
        c = conjugate_classes_model(x, x0, e)
        cnt += 1
        same = x == x0
        if same != (c[0] == c_vac[0]) or same != (c[1] == c_vac[1]):
            viol.append(f"label {x!r}: equal={same} but class equality differs")
    for i, j in itertools.combinations(range(basis.d), 2):
        cnt += 1
        if conjugate_classes_model(sector_act(x0, D[i]), x0, e) == conjugate_classes_model(sector_act(x0, D[j]), x0, e):
            viol.append(f"directions {i},{j} merge without T")
    claims.append(_claim("non-merging-without-infravacuum", viol, cnt))

    # (b) with a = T, first and second classes coincide along S
    viol, cnt = [], 0
    c_vac = conjugate_classes_model(x0, x0, aT)
    for s in S_samples:
        x = sector_act(x0, s)
        c = conjugate_classes_model(x, x0, aT)
        cnt += 1
        if c[0] != c_vac[0] or c[1] != c_vac[1]:
            viol.append(f"label {x!r} does not merge with the vacuum")
    claims.append(_claim("merging-with-infravacuum", viol, cnt,
                         hypotheses={"a_in_relative_normalizer": not viol_T}))

    # (c) [x0 . g]_S inside the second class of x0 . g
    viol, cnt = [], 0
    for g in G_samples:
        x = sector_act(x0, g)
        c2 = conjugate_classes_model(x, x0, aT)[1]
        for s in S_samples[: basis.d + 3]:
            cnt += 1
            if not c2.contains(sector_act(x, s), x0, aT):
                viol.append(f"[x0.g]_S point outside the second class for {x!r}")
    claims.append(_claim("S-orbit-inside-second-class", viol, cnt))

    # translates by the certified limits all give the vacuum label
    viol, cnt = [], 0
    for j in range(basis.d):
        u = transpose_action(-1, D[j].v)
        cnt += 1
        if not u.in_R() or not sector_act(x0, ModelGroupElement.translation(u)) == x0:
            viol.append(f"direction {j}: certified limit translate leaves the vacuum label")
        if not np.allclose(u.square_part.coeffs, basis.Tv(j).coeffs, atol=1e-14):
            viol.append(f"direction {j}: square part differs from the certified limit")
    claims.append(_claim("certified-limit-translates-equal", viol, cnt))

    # dressed labels with one T power stay pairwise distinct
    viol, cnt = [], 0
    xs = [sector_act(x0, ModelGroupElement(1, D[j].v)) for j in range(basis.d)]
    for i, j in itertools.combinations(range(basis.d), 2):
        cnt += 1
        if xs[i] == xs[j]:
            viol.append(f"directions {i},{j} share a label")
    claims.append(_claim("dressed-infravacuum-labels-distinct", viol, cnt))

    return {"model_axiom": MODEL_AXIOM, "d": basis.d, "fingerprints": basis.fingerprints(),
            "claims": [c.to_dict() for c in claims], "ok": all(c.ok for c in claims)}
