#!/usr/bin/env python3
"""Regenerate every figure CSV (fig3a..fig6b) into an output directory.

Usage: python scripts/make_figure_data.py [outdir] [--workers K]
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from polarq import cli

FIGURE_TASKS = ("fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="figure_data")
    parser.add_argument("--workers", type=int, default=None)
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for task in FIGURE_TASKS:
        with tempfile.NamedTemporaryFile(
            "w", suffix=".json", delete=False, encoding="utf-8"
        ) as f:
            json.dump({"task": task}, f)
            cfg_path = f.name
        out = outdir / f"{task}.csv"
        argv = ["run", cfg_path, "--out", str(out)]
        if args.workers:
            argv += ["--workers", str(args.workers)]
        code = cli.main(argv)
        print(f"{task}: exit {code} -> {out}")
        status = status or code
    return status


if __name__ == "__main__":
    sys.exit(main())
