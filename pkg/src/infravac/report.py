"""Claim records, canonical JSON and CSV output."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np


def claim(claim_id: str, ok, value=None, tolerance=None, **details) -> dict:
    row = {"claim": claim_id, "ok": bool(ok)}
    if value is not None:
        row["value"] = value
    if tolerance is not None:
        row["tolerance"] = tolerance
    if details:
        row["details"] = details
    return row


@dataclass
class Section:
    name: str
    claims: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def add(self, claim_id: str, ok, value=None, tolerance=None, **details) -> dict:
        row = claim(f"{self.name}.{claim_id}", ok, value, tolerance, **details)
        self.claims.append(row)
        return row

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.claims)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "claims": self.claims, "info": self.info}


def to_jsonable(x):
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return to_jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if np.isfinite(v) else str(v)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, str):
        return x
    return str(x)


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write_csv(path: Path, rows: list[dict]):
    path = Path(path)
    if not rows:
        path.write_text("")
        return
    cols = list(rows[0])
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v) for k, v in r.items()})


def assemble(sections: list[Section], config: dict, banner: str | None = None) -> dict:
    rep = {"ok": all(s.ok for s in sections), "config": config,
           "sections": {s.name: s.to_dict() for s in sections}}
    if banner:
        rep["model_axiom"] = banner
    rep["failed_claims"] = [c["claim"] for s in sections for c in s.claims if not c["ok"]]
    return rep


def write_outputs(out: Path, report: dict, sections: list[Section]) -> list[Path]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for s in sections:
        for name, rows in s.tables.items():
            p = out / f"{name}.csv"
            write_csv(p, rows)
            written.append(p)
    p = out / "report.json"
    p.write_text(canonical_json(report))
    written.append(p)
    return written
