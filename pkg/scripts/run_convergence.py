#!/usr/bin/env python3
"""Run the shipped convergence preset and report where the CSV landed."""

import sys
from pathlib import Path

from irs_secrecy.cli import main

if __name__ == "__main__":
    cfg = Path(__file__).resolve().parent.parent / "convergence.cfg"
    sys.exit(main(["convergence", "--config", str(cfg), *sys.argv[1:]]))
