"""Relative normalizers, orbits and conjugate classes on finite group actions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FiniteGroup, GroupAction, NotASubgroupError, Subgroup, all_subgroups


class NotInReferenceOrbit(ValueError):
    """No ``g_x`` with ``x = x0 . g_x`` exists."""


class HypothesisViolated(ValueError):
    pass


def relative_normalizer(G: FiniteGroup, R: Subgroup, S: Subgroup) -> frozenset[int]:
    """``{g : g s g^-1 in R for every s in S}``.

    For ``R = S`` this is the ordinary normalizer of ``R``.
    """
    for H in (R, S):
        if not isinstance(H, Subgroup) or H.parent is not G:
            raise NotASubgroupError("R and S must be subgroups of G")
    if not R <= S:
        raise ValueError("relative normalizer needs R contained in S")
    conj = G.conj_table()
    s = np.fromiter(S.elements, dtype=np.int64)
    inR = np.zeros(G.order, dtype=bool)
    inR[list(R.elements)] = True
    ok = inR[conj[:, s]].all(axis=1)
    return frozenset(int(g) for g in np.flatnonzero(ok))


def orbit(x: int, H: Subgroup | frozenset, A: GroupAction) -> frozenset[int]:
    elts = H.elements if isinstance(H, Subgroup) else H
    return frozenset(int(A.act[x, h]) for h in elts)


def stabilizer(x: int, A: GroupAction) -> Subgroup:
    return Subgroup(A.group, frozenset(int(g) for g in np.flatnonzero(A.act[x] == x)))


@dataclass(frozen=True)
class ClassDescriptor:
    """A conjugate class stored as an explicit point set.

    ``acting`` is the subgroup whose orbit through ``representative`` gives
    ``members``; it is left empty for the directly enumerated form. The empty class has
    ``representative = None``. Equality compares member sets only.
    """

    members: frozenset
    representative: int | None = field(default=None, compare=False)
    acting: frozenset = field(default=frozenset(), compare=False)

    @property
    def empty(self) -> bool:
        return not self.members

    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))

    def check(self, A: GroupAction) -> bool:
        """Member set equals the orbit of the representative under ``acting``."""
        if self.representative is None:
            return self.empty
        if not self.acting:
            return self.representative in self.members
        return orbit(self.representative, self.acting, A) == self.members


EMPTY_CLASS = ClassDescriptor(frozenset())


def _descriptor(members) -> ClassDescriptor:
    members = frozenset(int(m) for m in members)
    return ClassDescriptor(members, min(members) if members else None)


def conjugate_set(x: int, x0: int, a: int, A: GroupAction) -> frozenset[int]:
    """``{g : x = x0.a.g}`` by enumeration."""
    y = int(A.act[x0, a])
    return frozenset(int(g) for g in np.flatnonzero(A.act[y] == x))


def conjugate_class_direct(x: int, x0: int, a: int, A: GroupAction) -> ClassDescriptor:
    """Enumerate ``{x0.a.g^-1 : x = x0.a.g}``; empty when ``x`` is outside the orbit of ``x0``."""
    y = int(A.act[x0, a])
    inv = A.group.inv
    return _descriptor(A.act[y, inv[g]] for g in conjugate_set(x, x0, a, A))


def iterate_conjugation(x: int, x0: int, a: int, A: GroupAction, times: int) -> ClassDescriptor:
    """Apply the direct conjugation ``times`` times, starting from ``{x}``.

    Each step sends a point set ``Y`` to the union of the conjugate classes of
    its points. ``times = 2`` is the second conjugate class.
    """
    pts = frozenset([x])
    for _ in range(times):
        pts = frozenset().union(*(conjugate_class_direct(y, x0, a, A).members for y in pts))
    return _descriptor(pts)


def second_conjugate_class_direct(x, x0, a, A) -> ClassDescriptor:
    return iterate_conjugation(x, x0, a, A, 2)


def reference_element(x: int, x0: int, A: GroupAction) -> int:
    """First group index ``g_x`` with ``x = x0.g_x``."""
    hits = np.flatnonzero(A.act[x0] == x)
    if hits.size == 0:
        raise NotInReferenceOrbit(f"point {x} is not in the orbit of {x0}")
    return int(hits[0])


def conjugated_stabilizer(x0: int, a: int, A: GroupAction) -> frozenset[int]:
    """``a^-1 G_x0 a``."""
    return stabilizer(x0, A).conjugate(a).elements


def conjugate_class_orbit(x: int, x0: int, a: int, A: GroupAction, gx: int | None = None) -> ClassDescriptor:
    """Orbit form ``[x0.a.gx^-1.a]`` under ``a^-1 G_x0 a``."""
    G = A.group
    if gx is None:
        gx = reference_element(x, x0, A)
    elif A.act[x0, gx] != x:
        raise ValueError("gx does not carry x0 to x")
    H = conjugated_stabilizer(x0, a, A)
    rep = A(x0, a, int(G.inv[gx]), a)
    return ClassDescriptor(orbit(rep, H, A), rep, H)


def second_conjugate_class_orbit(x: int, x0: int, a: int, A: GroupAction, gx: int | None = None) -> ClassDescriptor:
    """Orbit form ``[x0.gx]`` under ``a^-1 G_x0 a``."""
    if gx is None:
        gx = reference_element(x, x0, A)
    elif A.act[x0, gx] != x:
        raise ValueError("gx does not carry x0 to x")
    H = conjugated_stabilizer(x0, a, A)
    rep = int(A.act[x0, gx])
    return ClassDescriptor(orbit(rep, H, A), rep, H)


@dataclass
class Report:
    """Outcome of an exhaustive check: ``violations`` is empty on success."""

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "violations": [str(v) for v in self.violations], "details": self.details}


def check_prop_equivalences(A: GroupAction, x0: int, a: int, require_hypothesis: bool = True) -> Report:
    """For every ``g`` compare the three statements

    ``x0 = x0.g``, equal conjugate classes of ``x0`` and ``x0.g``, equal second
    conjugate classes of ``x0`` and ``x0.g``. Requires ``a^-1 G_x0 a`` inside ``G_x0``;
    with ``require_hypothesis=False`` the check runs anyway and records the hypothesis.
    Classes are computed by direct enumeration so a broken action table shows up.
    """
    G0 = stabilizer_set(x0, A)
    H = frozenset(A.group.m(int(A.group.inv[a]), h, a) for h in G0)
    if require_hypothesis and not H <= G0:
        raise HypothesisViolated("a^-1 G_x0 a is not contained in G_x0")
    rep = Report("equivalences", details={"hypothesis": H <= G0})
    c1_ref = conjugate_class_direct(x0, x0, a, A)
    c2_ref = second_conjugate_class_direct(x0, x0, a, A)
    for g in range(A.group.order):
        x = int(A.act[x0, g])
        fixed = x == x0
        same1 = conjugate_class_direct(x, x0, a, A) == c1_ref
        same2 = second_conjugate_class_direct(x, x0, a, A) == c2_ref
        rep.checked += 1
        if not (fixed == same1 == same2):
            rep.violations.append(f"g={g}: fixed={fixed} first={same1} second={same2}")
    return rep


def stabilizer_set(x: int, A: GroupAction) -> frozenset[int]:
    """Stabilizer as a bare set; unlike :func:`stabilizer` it tolerates broken tables."""
    return frozenset(int(g) for g in np.flatnonzero(A.act[x] == x))


def check_merging_theorem(A: GroupAction, x0: int, a: int, R: Subgroup, S: Subgroup,
                          require_hypotheses: bool = True) -> Report:
    """Check that ``x0`` and ``x0.s`` have equal first and second classes for all ``s`` in ``S``,
    and that ``[x0.g]_S`` lies inside the second class of ``x0.g`` for all ``g``.

    Hypotheses ``R <= S``, ``R <= G_x0`` and ``a in N(R, S)`` are recorded in
    ``details``; with ``require_hypotheses`` a failing hypothesis is a violation
    and the conclusions are still evaluated.
    """
    G = A.group
    rep = Report("merging")
    G0 = stabilizer_set(x0, A)
    hyp = {
        "R_in_S": R <= S,
        "R_in_stabilizer": R.elements <= G0,
        "a_in_relative_normalizer": R <= S and a in relative_normalizer(G, R, S),
    }
    rep.details["hypotheses"] = hyp
    if require_hypotheses:
        rep.violations += [f"hypothesis {k} fails" for k, v in hyp.items() if not v]
    c1 = conjugate_class_direct(x0, x0, a, A)
    c2 = second_conjugate_class_direct(x0, x0, a, A)
    conclusions = []
    for s in S:
        xs = int(A.act[x0, s])
        rep.checked += 1
        if conjugate_class_direct(xs, x0, a, A) != c1:
            conclusions.append(f"first classes of x0 and x0.{s} differ")
        if second_conjugate_class_direct(xs, x0, a, A) != c2:
            conclusions.append(f"second classes of x0 and x0.{s} differ")
    for g in range(G.order):
        xg = int(A.act[x0, g])
        rep.checked += 1
        if not orbit(xg, S, A) <= second_conjugate_class_direct(xg, x0, a, A).members:
            conclusions.append(f"[x0.{g}]_S not inside its second class")
    rep.details["conclusion_failures"] = len(conclusions)
    rep.violations += conclusions
    return rep


def random_action(G: FiniteGroup, rng: np.random.Generator, max_orbits: int = 3) -> GroupAction:
    """Disjoint union of coset actions on random subgroups, with shuffled point labels."""
    subs = all_subgroups(G)
    k = int(rng.integers(1, max_orbits + 1))
    parts = [GroupAction.on_cosets(subs[int(rng.integers(len(subs)))]) for _ in range(k)]
    A = GroupAction.disjoint_union(parts)
    return A.relabel(rng.permutation(A.n_points))


def check_orbit_forms(A: GroupAction, x0: int, a: int) -> Report:
    """Orbit forms versus direct enumeration for every point, plus g_x independence
    and stability of the third and fourth iterations."""
    rep = Report("orbit_forms")
    G = A.group
    for x in A.points:
        hits = np.flatnonzero(A.act[x0] == x)
        d1 = conjugate_class_direct(x, x0, a, A)
        d2 = second_conjugate_class_direct(x, x0, a, A)
        rep.checked += 1
        if hits.size == 0:
            if not (d1.empty and d2.empty):
                rep.violations.append(f"x={x}: outside orbit but class non-empty")
            continue
        for gx in hits:
            if conjugate_class_orbit(x, x0, a, A, int(gx)) != d1:
                rep.violations.append(f"x={x}, gx={gx}: first class mismatch")
            if second_conjugate_class_orbit(x, x0, a, A, int(gx)) != d2:
                rep.violations.append(f"x={x}, gx={gx}: second class mismatch")
        if iterate_conjugation(x, x0, a, A, 3) != d1:
            rep.violations.append(f"x={x}: third iteration differs from first")
        if iterate_conjugation(x, x0, a, A, 4) != d2:
            rep.violations.append(f"x={x}: fourth iteration differs from second")
    return rep


def find_merging_counterexample(groups) -> dict | None:
    """Smallest instance where the merging conclusions fail once ``a`` leaves ``N(R, S)``.

    Searches coset actions with ``R <= G_x0``; returns the instance description.
    """
    for G in groups:
        subs = all_subgroups(G)
        for K in subs:
            A = GroupAction.on_cosets(K)
            for R in subs:
                if not R <= K:
                    continue
                for S in subs:
                    if not R < S:
                        continue
                    N = relative_normalizer(G, R, S)
                    for a in range(G.order):
                        if a in N:
                            continue
                        r = check_merging_theorem(A, 0, a, R, S, require_hypotheses=False)
                        if r.details["conclusion_failures"]:
                            return {"group": G, "action": A, "x0": 0, "a": a, "R": R, "S": S, "report": r}
    return None


def find_equivalence_counterexample(groups) -> dict | None:
    """First coset action and ``a`` with ``a^-1 G_x0 a`` not inside ``G_x0`` where the equivalences fail."""
    for G in groups:
        for K in all_subgroups(G):
            A = GroupAction.on_cosets(K)
            for a in range(G.order):
                r = check_prop_equivalences(A, 0, a, require_hypothesis=False)
                if not r.details["hypothesis"] and r.violations:
                    return {"group": G, "action": A, "x0": 0, "a": a, "K": K, "report": r}
    return None
