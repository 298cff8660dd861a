#!/usr/bin/env python3
"""Solve a single seeded instance from the sweep preset and print the JSON report."""

import sys
from pathlib import Path

from irs_secrecy.cli import main

if __name__ == "__main__":
    cfg = Path(__file__).resolve().parent.parent / "sweep.cfg"
    seed = sys.argv[1] if len(sys.argv) > 1 else "0"
    sys.exit(main(["solve", "--config", str(cfg), "--channel-seed", seed]))
