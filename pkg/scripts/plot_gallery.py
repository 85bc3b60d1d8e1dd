#!/usr/bin/env python3
"""Render the standard gallery of steps, staircases, blends, and transitions.

Writes minimal SVG polyline plots into an output directory (default
``out/``); every curve comes straight from the library handles.

Usage:
  python scripts/plot_gallery.py [--out DIR] [--n POINTS]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from stepblend import catalog
from stepblend.cli import _write_svg
from stepblend.flat_ends import to_staircase
from stepblend.functions import Interval
from stepblend.operators import apply, multiplicative_blend, step_carrier
from stepblend.step_functions import (
    beta_step,
    expo_rational_step,
    fabius,
    rational_step,
    trig_step,
)
from stepblend.transitions import transition_from_single


def sample(fn, interval, n):
    xs = [float(x) for x in np.linspace(interval.a, interval.b, n)]
    return xs, [fn(x) for x in xs]


def plot(path, interval, named_fns, n):
    xs = None
    columns, names = [], []
    for name, fn in named_fns:
        xs, ys = sample(fn, interval, n)
        columns.append(ys)
        names.append(name)
    _write_svg(path, xs, columns, names)
    print(f"wrote {path}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out")
    parser.add_argument("--n", type=int, default=513)
    args = parser.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    unit = Interval(0.0, 1.0)

    plot(out / "beta_orders.svg", unit, [
        ("B(4,1)", beta_step((4, 1)).value),
        ("B(2,2)", beta_step((2, 2)).value),
        ("B(1,4)", beta_step((1, 4)).value),
    ], args.n)

    plot(out / "step_families.svg", unit, [
        ("beta(2,2)", beta_step((2, 2)).value),
        ("rational(2,2)", rational_step((2, 2)).value),
        ("trig m=1", trig_step(1).value),
        ("expo-rational", expo_rational_step().value),
        ("fabius", fabius(1e-9, 2**12).value),
    ], args.n)

    plot(out / "trig_steepening.svg", unit, [
        (f"trig m={m}", trig_step(m).value) for m in range(4)
    ], args.n)

    staircase = to_staircase(trig_step(1), (0.0, 1.0), (0.0, 1.0))
    plot(out / "staircase_demos.svg", unit, [
        ("x - sin(20 pi x)/(20 pi)", catalog.make_staircase_demo().value),
        ("trig staircase", staircase.value),
    ], args.n)

    blend_iv = Interval(2.0, 4.0)
    ripple = catalog.make_ripple(blend_iv)
    blended = apply(
        multiplicative_blend(step_carrier(rational_step((4, 2)), blend_iv, "leftward")),
        ripple,
    )
    plot(out / "blend_to_zero.svg", blend_iv, [
        ("input", ripple.value),
        ("blended to zero at left end", blended.value),
    ], args.n)

    f = catalog.make_cos(5.0, (1.0, 4.0))
    g = catalog.make_polynomial([2.0, 0.0, 0.125], (2.0, 5.0))
    t = transition_from_single(
        multiplicative_blend(step_carrier(rational_step((2, 2)), blend_iv, "leftward")),
        f, g,
    )
    plot(out / "transition.svg", t.outer, [("smooth transition", t.value)], args.n)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
