#!/usr/bin/env python3
"""Run the shipped power-sweep preset and report where the CSV landed."""

import sys
from pathlib import Path

from irs_secrecy.cli import main

if __name__ == "__main__":
    cfg = Path(__file__).resolve().parent.parent / "sweep.cfg"
    sys.exit(main(["sweep", "--config", str(cfg), *sys.argv[1:]]))
