"""Finite groups as multiplication tables, subgroups and right actions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np


class GroupAxiomError(ValueError):
    """A table fails the group (or action) axioms.

    ``violations`` lists human readable descriptions of what failed.
    """

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


class NotASubgroupError(ValueError):
    pass


def group_axiom_violations(table) -> list[str]:
    """Return every group-axiom failure of a square multiplication table.

    An empty list means the table defines a group. Associativity is checked
    exhaustively, so this is meant for tables of modest order.
    """
    mul = np.asarray(table)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        return [f"table must be a non-empty square array, got shape {mul.shape}"]
    n = mul.shape[0]
    if not np.issubdtype(mul.dtype, np.integer):
        return ["table entries must be integers"]
    if mul.min() < 0 or mul.max() >= n:
        return [f"table entries must lie in 0..{n - 1}"]
    out = []
    # rows of a group table are permutations
    for a in range(n):
        if len(set(mul[a].tolist())) != n:
            out.append(f"row {a} is not a permutation (left cancellation fails)")
    for b in range(n):
        if len(set(mul[:, b].tolist())) != n:
            out.append(f"column {b} is not a permutation (right cancellation fails)")
    bad = np.argwhere(mul[mul] != mul[:, mul])
    for a, b, c in bad[:20]:
        out.append(f"associativity fails at ({a}*{b})*{c} != {a}*({b}*{c})")
    if len(bad) > 20:
        out.append(f"... {len(bad) - 20} further associativity failures")
    ident = [e for e in range(n) if np.array_equal(mul[e], np.arange(n)) and np.array_equal(mul[:, e], np.arange(n))]
    if not ident:
        out.append("no two-sided identity element")
    return out


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table ``mul[a, b] = a*b``.

    Elements are the indices ``0..order-1``. ``labels`` are optional names used
    only for display.
    """

    mul: np.ndarray
    name: str = "G"
    labels: tuple | None = None
    identity: int = field(init=False)
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        mul = np.array(self.mul, dtype=np.int64)
        violations = group_axiom_violations(mul)
        if violations:
            raise GroupAxiomError(f"{self.name}: not a group", violations)
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        n = mul.shape[0]
        e = int(np.flatnonzero((mul == np.arange(n)).all(axis=1))[0])
        inv = np.argmax(mul == e, axis=1).astype(np.int64)
        inv.setflags(write=False)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inv", inv)

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def m(self, *elts: int) -> int:
        """Product of the given elements, left to right."""
        out = self.identity
        for g in elts:
            out = int(self.mul[out, g])
        return out

    def conj_table(self) -> np.ndarray:
        """``c[g, s] = g s g^{-1}``."""
        return self.mul[self.mul, self.inv[:, None]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def center(self) -> frozenset[int]:
        return frozenset(int(g) for g in range(self.order) if np.array_equal(self.mul[g], self.mul[:, g]))

    def label(self, g: int) -> str:
        return str(self.labels[g]) if self.labels is not None else str(g)

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], op: Callable, name: str = "G") -> "FiniteGroup":
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                mul[i, j] = index[op(a, b)]
        return cls(mul, name=name, labels=tuple(elements))

    @classmethod
    def generated_by(cls, gens: Sequence[Hashable], op: Callable, identity: Hashable, name: str = "G",
                     limit: int = 10_000) -> "FiniteGroup":
        """Close ``gens`` under ``op`` (breadth first; identity listed first)."""
        elements = [identity]
        seen = {identity}
        frontier = [identity]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = op(x, g)
                    if y not in seen:
                        seen.add(y)
                        elements.append(y)
                        new.append(y)
                        if len(elements) > limit:
                            raise ValueError("generated group exceeds size limit")
            frontier = new
        return cls.from_elements(elements, op, name=name)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: frozenset

    def __post_init__(self):
        elts = frozenset(int(x) for x in self.elements)
        object.__setattr__(self, "elements", elts)
        G = self.parent
        if G.identity not in elts:
            raise NotASubgroupError("subgroup must contain the identity")
        if any(x < 0 or x >= G.order for x in elts):
            raise NotASubgroupError("element index out of range")
        arr = np.fromiter(elts, dtype=np.int64)
        if not set(G.mul[np.ix_(arr, arr)].ravel().tolist()) <= elts:
            raise NotASubgroupError("not closed under multiplication")
        if not set(G.inv[arr].tolist()) <= elts:
            raise NotASubgroupError("not closed under inverses")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, g):
        return g in self.elements

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "Subgroup"):
        return self.elements <= other.elements

    def __lt__(self, other: "Subgroup"):
        return self.elements < other.elements

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"

    def conjugate(self, a: int) -> "Subgroup":
        """``a^{-1} H a``."""
        G = self.parent
        ai = int(G.inv[a])
        return Subgroup(G, frozenset(G.m(ai, h, a) for h in self.elements))

    @classmethod
    def trivial(cls, G: FiniteGroup) -> "Subgroup":
        return cls(G, frozenset([G.identity]))

    @classmethod
    def whole(cls, G: FiniteGroup) -> "Subgroup":
        return cls(G, frozenset(range(G.order)))

    @classmethod
    def generated(cls, G: FiniteGroup, gens: Iterable[int]) -> "Subgroup":
        return cls(G, _closure(G, frozenset([G.identity]), gens))


def _closure(G: FiniteGroup, start: frozenset, gens: Iterable[int]) -> frozenset:
    gens = [int(g) for g in gens]
    elts = set(start) | {G.identity}
    frontier = list(elts)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in elts:
                    elts.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elts)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of ``G``, sorted by (order, sorted elements).

    Starts from the cyclic subgroups and closes the family under joins; every
    finitely generated subgroup is reached because it is a join of cyclic ones.
    """
    cyclic = {_closure(G, frozenset(), [g]) for g in range(G.order)}
    family = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                J = _closure(G, A, A | C)
                if J not in family:
                    new.add(J)
        family |= new
        frontier = new
    return [Subgroup(G, s) for s in sorted(family, key=lambda s: (len(s), sorted(s)))]


@dataclass(frozen=True, eq=False)
class GroupAction:
    """A right action ``x . g`` of ``group`` on points ``0..n_points-1``.

    ``act[x, g]`` is the image of point ``x`` under ``g``. With ``check=False``
    an arbitrary table is accepted; this exists so that negative controls can be
    built from deliberately broken tables.
    """

    group: FiniteGroup
    act: np.ndarray
    labels: tuple | None = None
    check: bool = True

    def __post_init__(self):
        act = np.array(self.act, dtype=np.int64)
        if act.ndim != 2 or act.shape[1] != self.group.order:
            raise GroupAxiomError(f"action table must have shape (n_points, {self.group.order})")
        if act.min() < 0 or act.max() >= act.shape[0]:
            raise GroupAxiomError("action table maps outside the point set")
        act.setflags(write=False)
        object.__setattr__(self, "act", act)
        if self.check:
            violations = self.violations()
            if violations:
                raise GroupAxiomError("not a right group action", violations)

    @property
    def n_points(self) -> int:
        return self.act.shape[0]

    @property
    def points(self) -> range:
        return range(self.n_points)

    def __call__(self, x: int, *gs: int) -> int:
        for g in gs:
            x = int(self.act[x, g])
        return x

    def violations(self) -> list[str]:
        G, act = self.group, self.act
        out = []
        bad = np.flatnonzero(act[:, G.identity] != np.arange(self.n_points))
        out += [f"identity moves point {x}" for x in bad[:10]]
        comp = np.argwhere(act[act] != act[:, G.mul])
        out += [f"(x.{g}).{h} != x.({g}{h}) at x={x}" for x, g, h in comp[:10]]
        if len(comp) > 10:
            out.append(f"... {len(comp) - 10} further compatibility failures")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def relabel(self, perm: Sequence[int]) -> "GroupAction":
        """Rename point ``x`` to ``perm[x]``."""
        perm = np.asarray(perm, dtype=np.int64)
        new = np.empty_like(self.act)
        new[perm] = perm[self.act]
        return GroupAction(self.group, new, check=self.check)

    # constructors

    @classmethod
    def regular(cls, G: FiniteGroup) -> "GroupAction":
        return cls(G, G.mul.copy())

    @classmethod
    def trivial(cls, G: FiniteGroup, n_points: int = 1) -> "GroupAction":
        return cls(G, np.zeros((n_points, G.order), dtype=np.int64) + np.arange(n_points)[:, None])

    @classmethod
    def on_cosets(cls, H: Subgroup) -> "GroupAction":
        """Right multiplication on the right cosets ``H x``; the coset ``H`` itself is point 0."""
        G = H.parent
        cosets: list[frozenset] = []
        where = {}
        for x in [G.identity] + list(range(G.order)):
            if x in where:
                continue
            c = frozenset(int(G.mul[h, x]) for h in H.elements)
            for y in c:
                where[y] = len(cosets)
            cosets.append(c)
        act = np.empty((len(cosets), G.order), dtype=np.int64)
        for i, c in enumerate(cosets):
            rep = min(c)
            act[i] = [where[int(G.mul[rep, g])] for g in range(G.order)]
        return cls(G, act)

    @classmethod
    def disjoint_union(cls, actions: Sequence["GroupAction"]) -> "GroupAction":
        G = actions[0].group
        if any(A.group is not G for A in actions):
            raise ValueError("actions of different groups")
        blocks, offset = [], 0
        for A in actions:
            blocks.append(A.act + offset)
            offset += A.n_points
        return cls(G, np.vstack(blocks))
