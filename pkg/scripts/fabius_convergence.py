#!/usr/bin/env python3
"""Fabius fixed-point iteration: convergence behaviour across grid sizes.

Prints, per dyadic grid, the sweep count to reach the tolerance, the
sup defect of the symmetry identity T(x) + T(1-x) = 1, the deviation of
T(1/4) from its exact dyadic value 5/72, and the residual of the
self-similarity T'(x) = 2 T(2x) measured by finite differences.

Usage:
  python scripts/fabius_convergence.py [--tolerance 1e-10] [--max-log2 14]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from stepblend.numerics import finite_difference_jet
from stepblend.step_functions import fabius, fabius_table


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tolerance", type=float, default=1e-10)
    parser.add_argument("--min-log2", type=int, default=8)
    parser.add_argument("--max-log2", type=int, default=14)
    args = parser.parse_args(argv)

    print(f"{'grid':>8} {'sweeps':>6} {'symmetry':>12} {'|T(1/4)-5/72|':>14} "
          f"{'selfsim residual':>17}")
    for log2 in range(args.min_log2, args.max_log2 + 1):
        n = 2**log2
        _, table, sweeps = fabius_table(args.tolerance, n)
        symmetry = float(np.max(np.abs(table + table[::-1] - 1.0)))
        quarter = abs(table[n // 4] - 5.0 / 72.0)
        step = fabius(args.tolerance, n)
        residual = max(
            abs(finite_difference_jet(step.value, float(x), 1, scale=8.0)[1]
                - 2.0 * step.value(2.0 * float(x)))
            for x in np.linspace(0.02, 0.48, 24)
        )
        print(f"{n:>8} {sweeps:>6} {symmetry:>12.3e} {quarter:>14.3e} "
              f"{residual:>17.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
