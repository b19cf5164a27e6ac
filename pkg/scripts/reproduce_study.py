#!/usr/bin/env python3
"""
Run the shipped sampling study: the five-item structure, six filters,
N_obs in {50, 100, 500, 1000}, R = 10000.

Extra arguments are passed through, e.g. ``--workers 4`` or ``--out results/run2``.
"""

import os
import sys

ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, ROOT)

from filterfunc.main import main  # noqa: E402

if __name__ == "__main__":
    config = os.path.join(ROOT, "data", "study.yaml")
    sys.exit(main(["--config", config, "study", *sys.argv[1:]]))
