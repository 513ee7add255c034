"""Plain-text tables: first line a count, then one row of integers per line."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import FiniteGroup, GroupAction, GroupAxiomError, group_axiom_violations


class TableFormatError(ValueError):
    pass


def _read_rows(text: str) -> tuple[int, np.ndarray]:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty table")
    try:
        n = int(lines[0])
        rows = [[int(t) for t in ln.replace(",", " ").split()] for ln in lines[1:]]
    except ValueError as exc:
        raise TableFormatError(f"non-integer entry: {exc}") from None
    if len(rows) != n:
        raise TableFormatError(f"header says {n} rows, found {len(rows)}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise TableFormatError("rows have different lengths")
    return n, np.array(rows, dtype=np.int64)


def parse_group(text: str, name: str = "G") -> FiniteGroup:
    n, mul = _read_rows(text)
    if mul.shape != (n, n):
        raise TableFormatError(f"multiplication table must be {n}x{n}, got {mul.shape}")
    return FiniteGroup(mul, name=name)


def read_group_violations(text: str) -> list[str]:
    """Like :func:`parse_group` but returns axiom failures instead of raising."""
    n, mul = _read_rows(text)
    if mul.shape != (n, n):
        return [f"multiplication table must be {n}x{n}, got {mul.shape}"]
    return group_axiom_violations(mul)


def format_group(G: FiniteGroup) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in G.mul]
    return "\n".join([str(G.order)] + rows) + "\n"


def parse_action(text: str, G: FiniteGroup, check: bool = True) -> GroupAction:
    n, act = _read_rows(text)
    if act.shape[1] != G.order:
        raise TableFormatError(f"action rows must have {G.order} entries")
    return GroupAction(G, act, check=check)


def format_action(A: GroupAction) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in A.act]
    return "\n".join([str(A.n_points)] + rows) + "\n"


def load_group(path, name: str | None = None) -> FiniteGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=name or path.stem)


def load_action(path, G: FiniteGroup, check: bool = True) -> GroupAction:
    return parse_action(Path(path).read_text(), G, check=check)


__all__ = ["TableFormatError", "GroupAxiomError", "parse_group", "format_group", "parse_action",
           "format_action", "load_group", "load_action", "read_group_violations"]
