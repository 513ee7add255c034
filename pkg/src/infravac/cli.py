"""Command-line front end: ``infravac <subcommand> [--config PATH] [--out DIR] [--seed N] [--tolerance-scale X]``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .campaigns import CAMPAIGNS
from .config import ConfigError, load_config
from .report import assemble, canonical_json, write_outputs
from .sectors import MODEL_AXIOM

EXIT_OK, EXIT_CLAIM, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="infravac", description="Verification campaigns for infravacuum sector merging.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in list(CAMPAIGNS) + ["all"]:
        s = sub.add_parser(name)
        s.add_argument("--config", type=Path, default=None, help="YAML campaign config")
        s.add_argument("--out", type=Path, default=None, help="output directory")
        s.add_argument("--seed", type=int, default=None)
        s.add_argument("--tolerance-scale", type=float, default=None, dest="tolerance_scale")
    return p


def run(command: str, config=None, out=None, seed=None, tolerance_scale=None, stream=sys.stdout) -> int:
    overrides = {}
    if seed is not None:
        overrides["seed"] = seed
    if tolerance_scale is not None:
        overrides["tolerance_scale"] = tolerance_scale
    try:
        cfg = load_config(config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    names = list(CAMPAIGNS) if command == "all" else [command]
    rng = np.random.default_rng(cfg.seed)
    sections, timings = [], {}
    for name in names:
        t0 = time.perf_counter()
        try:
            sec = CAMPAIGNS[name](cfg, rng)
        except OSError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        timings[name] = time.perf_counter() - t0
        sections.append(sec)
        for c in sec.claims:
            print(f"{'PASS' if c['ok'] else 'FAIL'} {c['claim']}", file=stream)
    banner = MODEL_AXIOM if "sectors-verify" in names else None
    report = assemble(sections, cfg.raw, banner)
    out_dir = Path(out) if out is not None else Path(cfg["out"])
    write_outputs(out_dir, report, sections)
    # wall-clock times are kept out of report.json so reports stay byte-identical
    (out_dir / "timings.json").write_text(canonical_json(timings))
    print(f"{'ok' if report['ok'] else 'FAILED'}: wrote {out_dir / 'report.json'}", file=stream)
    return EXIT_OK if report["ok"] else EXIT_CLAIM


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args.command, args.config, args.out, args.seed, args.tolerance_scale)


if __name__ == "__main__":
    sys.exit(main())
