"""Bundled catalogue of small groups.

Covers every isomorphism type of order at most 16 plus a few larger named
groups. Tables are generated from explicit constructions and then validated
by :class:`FiniteGroup`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .core import FiniteGroup, GroupAction, _closure, all_subgroups


def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Pairs ``(g, h)`` stored at index ``g * |H| + h``."""
    n, m = G.order, H.order
    gi = np.repeat(np.arange(n), m)
    hi = np.tile(np.arange(m), n)
    mul = G.mul[gi[:, None], gi[None, :]] * m + H.mul[hi[:, None], hi[None, :]]
    return FiniteGroup(mul, name=name or f"{G.name}x{H.name}")


def metacyclic(n: int, m: int, r: int, t: int, name: str) -> FiniteGroup:
    """``<x, y | x^n, y^m = x^t, y x y^-1 = x^r>`` on pairs ``x^a y^b``."""
    rp = [pow(r, b, n) for b in range(m)]

    def op(p, q):
        a, b = p
        c, d = q
        s = b + d
        return ((a + c * rp[b] + (t if s >= m else 0)) % n, s % m)

    elems = [(a, b) for b in range(m) for a in range(n)]
    return FiniteGroup.from_elements(elems, op, name=name)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order ``2n``."""
    return metacyclic(n, 2, n - 1, 0, name=f"D{2 * n}")


def _perm_op(p, q):
    # apply p first, then q; matches the right action x.g = g[x]
    return tuple(q[i] for i in p)


def permutation_group(gens, name: str) -> FiniteGroup:
    gens = [tuple(g) for g in gens]
    e = tuple(range(len(gens[0])))
    return FiniteGroup.generated_by(gens, _perm_op, e, name=name)


def symmetric(n: int) -> FiniteGroup:
    """``S_n`` with elements in lexicographic order, identity first."""
    elems = list(itertools.permutations(range(n)))
    return FiniteGroup.from_elements(elems, _perm_op, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    elems = [p for p in itertools.permutations(range(n)) if even(p)]
    return FiniteGroup.from_elements(elems, _perm_op, name=f"A{n}")


def permutation_action(G: FiniteGroup) -> GroupAction:
    """Natural action of a permutation group (labels are tuples) on its points."""
    pts = len(G.labels[0])
    act = np.array([[G.labels[g][x] for g in range(G.order)] for x in range(pts)])
    return GroupAction(G, act)


def quaternion() -> FiniteGroup:
    return metacyclic(4, 2, 3, 2, name="Q8")


def pauli() -> FiniteGroup:
    """Group generated by the Pauli matrices (central product of C4 and D8)."""
    X = ((0, 1), (1, 0))
    Y = ((0, -1j), (1j, 0))
    Z = ((1, 0), (0, -1))

    def op(A, B):
        return tuple(tuple(complex(sum(A[i][k] * B[k][j] for k in range(2))) for j in range(2)) for i in range(2))

    conv = lambda M: tuple(tuple(complex(v) for v in row) for row in M)
    return FiniteGroup.generated_by([conv(X), conv(Y), conv(Z)], op, conv(((1, 0), (0, 1))), name="Pauli")


def _sg16_3() -> FiniteGroup:
    """(C4 x C2) x| C2 where the C2 factor sends (i, j) to (i, j + i)."""
    def op(p, q):
        i1, j1, c1 = p
        i2, j2, c2 = q
        return ((i1 + i2) % 4, (j1 + j2 + c1 * i2) % 2, (c1 + c2) % 2)

    elems = [(i, j, c) for c in range(2) for j in range(2) for i in range(4)]
    return FiniteGroup.from_elements(elems, op, name="(C4xC2):C2")


def _builders() -> dict:
    C = cyclic
    dp = direct_product
    return {
        1: [lambda: C(1)],
        2: [lambda: C(2)],
        3: [lambda: C(3)],
        4: [lambda: C(4), lambda: dp(C(2), C(2), "C2^2")],
        5: [lambda: C(5)],
        6: [lambda: C(6), lambda: symmetric(3)],
        7: [lambda: C(7)],
        8: [lambda: C(8), lambda: dp(C(4), C(2)), lambda: dp(dp(C(2), C(2)), C(2), "C2^3"),
            lambda: dihedral(4), quaternion],
        9: [lambda: C(9), lambda: dp(C(3), C(3))],
        10: [lambda: C(10), lambda: dihedral(5)],
        11: [lambda: C(11)],
        12: [lambda: C(12), lambda: dp(C(6), C(2)), lambda: dihedral(6), lambda: alternating(4),
             lambda: metacyclic(3, 4, 2, 0, "Dic12")],
        13: [lambda: C(13)],
        14: [lambda: C(14), lambda: dihedral(7)],
        15: [lambda: C(15)],
        16: [
            lambda: C(16),
            lambda: dp(C(4), C(4)),
            _sg16_3,
            lambda: metacyclic(4, 4, 3, 0, "C4:C4"),
            lambda: dp(C(8), C(2)),
            lambda: metacyclic(8, 2, 5, 0, "M16"),
            lambda: dihedral(8),
            lambda: metacyclic(8, 2, 3, 0, "SD16"),
            lambda: metacyclic(8, 2, 7, 4, "Q16"),
            lambda: dp(dp(C(4), C(2)), C(2), "C4xC2^2"),
            lambda: dp(dihedral(4), C(2)),
            lambda: dp(quaternion(), C(2)),
            pauli,
            lambda: dp(dp(C(2), C(2)), dp(C(2), C(2)), "C2^4"),
        ],
    }


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[FiniteGroup, ...]:
    """One representative of every isomorphism type of order ``n`` (``n <= 16``)."""
    b = _builders()
    if n not in b:
        raise ValueError(f"catalogue only covers orders 1..16, got {n}")
    return tuple(f() for f in b[n])


@lru_cache(maxsize=None)
def catalogue(max_order: int = 16, extras: bool = True) -> tuple[FiniteGroup, ...]:
    """All groups of order ``<= max_order`` followed by the named extras."""
    out = [G for n in range(1, max_order + 1) for G in groups_of_order(n)]
    if extras:
        out += [named(k) for k in ("S4", "D12", "D24", "Q8")]
    return tuple(out)


def named(name: str) -> FiniteGroup:
    table = {
        "S3": lambda: symmetric(3),
        "S4": lambda: symmetric(4),
        "A4": lambda: alternating(4),
        "Q8": quaternion,
        "Pauli": pauli,
    }
    if name in table:
        return table[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    if name.startswith("D") and name[1:].isdigit():
        k = int(name[1:])
        if k % 2 or k < 4:
            raise ValueError(f"dihedral group name must be D<2n>, got {name}")
        return dihedral(k // 2)
    raise KeyError(f"unknown group {name!r}")


def fingerprint(G: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants, enough to separate the catalogue."""
    orders = sorted(G.element_order(g) for g in range(G.order))
    squares = {int(G.mul[g, g]) for g in range(G.order)}
    comm = {G.m(a, b, int(G.inv[a]), int(G.inv[b])) for a in range(G.order) for b in range(G.order)}
    derived = _closure(G, frozenset(), comm)
    subs = sorted(len(H) for H in all_subgroups(G))
    return (G.order, tuple(orders), len(G.center()), len(derived), len(squares), tuple(subs))
