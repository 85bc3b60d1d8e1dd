"""Command-line front end.

Subcommands:

* ``eval``   -- print ``x,value[,d1..dk]`` rows for a step family;
* ``sample`` -- uniformly sample a family, a blend, or a transition
  descriptor to CSV, JSON, or a minimal SVG polyline plot;
* ``verify`` -- run a named verification suite and report pass/fail.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
Floats are printed with Python's shortest round-trip repr (at most 17
significant digits), so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .flat_ends import change_of_interval, monotonicity_check, product, symmetry_check
from .functions import EndpointJet, Interval, StepOrders, min_order
from .hermite import HermiteSpec, hermite_interpolant, hermite_oracle, hermite_xi_polynomial
from .numerics import binomial_identity_check, fd_tolerance
from .operators import apply as apply_blend
from .operators import hermite_blend, multiplicative_blend, step_carrier
from .step_functions import (
    beta_step,
    ode_forcing_constant,
    ode_residual,
    rational_step,
    trig_coefficients,
    trig_step,
)
from .transitions import PiecewiseTransition, seam_report, transition_from_single

__all__ = ["main", "build_transition", "build_blend", "load_descriptor"]


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# Descriptor handling


def _branch_from_spec(spec: dict, interval):
    kind = spec.get("kind")
    if kind == "constant":
        return catalog.make_constant(spec["value"], interval)
    if kind == "polynomial":
        return catalog.make_polynomial(spec["coefficients"], interval)
    if kind in ("sin", "cos"):
        maker = catalog.make_sin if kind == "sin" else catalog.make_cos
        return maker(
            frequency=spec.get("frequency", 1.0),
            interval=interval,
            amplitude=spec.get("amplitude", 1.0),
        )
    if kind == "ripple":
        return catalog.make_ripple(interval)
    if kind == "samples":
        path = Path(spec["path"])
        values = _read_sample_csv(path)
        return catalog.from_samples(values, interval)
    raise ValueError(f"unknown branch kind {kind!r}")


def _read_sample_csv(path: Path) -> np.ndarray:
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            continue  # header row
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] not in (1, 2):
        raise ValueError(f"{path}: expected one or two numeric columns")
    return data[:, -1]


def _carrier_from_spec(spec: dict, interval, direction: str):
    sigma = catalog.make_step(
        spec["family"],
        orders=spec.get("orders"),
        m=spec.get("m"),
    )
    return step_carrier(sigma, interval, direction)


def _operator_from_spec(spec: dict, interval, orders):
    kind = spec.get("kind")
    if kind == "hermite":
        return hermite_blend("leftward", orders, interval)
    if kind == "multiplicative":
        carrier = _carrier_from_spec(spec["carrier"], interval, "leftward")
        return multiplicative_blend(carrier, orders)
    raise ValueError(f"unknown operator kind {kind!r}")


def build_transition(descriptor: dict) -> PiecewiseTransition:
    """Instantiate a transition from its JSON descriptor."""
    outer = Interval.coerce(descriptor["outer"])
    inner = Interval.coerce(descriptor["inner"])
    if not (outer.a < inner.a < inner.b < outer.b):
        raise ValueError("descriptor intervals must satisfy a < a0 < b0 < b")
    orders = StepOrders.coerce(tuple(descriptor["orders"]))
    f = _branch_from_spec(descriptor["left"], (outer.a, inner.b))
    g = _branch_from_spec(descriptor["right"], (inner.a, outer.b))
    op = _operator_from_spec(descriptor["operator"], inner, orders)
    t = transition_from_single(op, f, g)
    return PiecewiseTransition(
        outer=t.outer,
        inner=t.inner,
        left_branch=t.left_branch,
        core=t.core,
        right_branch=t.right_branch,
        orders=t.orders,
        provenance=t.provenance,
        descriptor=descriptor,
    )


def build_blend(descriptor: dict):
    """Instantiate a blended function (operator applied to an input)."""
    interval = Interval.coerce(descriptor["interval"])
    direction = descriptor.get("direction", "leftward")
    f = _branch_from_spec(descriptor["input"], interval)
    carrier = _carrier_from_spec(descriptor["carrier"], interval, direction)
    orders = descriptor.get("orders")
    op = multiplicative_blend(carrier, StepOrders.coerce(tuple(orders)) if orders else None)
    return apply_blend(op, f)


def load_descriptor(path: str) -> dict:
    with open(path) as fh:
        descriptor = json.load(fh)
    if descriptor.get("type") not in ("transition", "blend"):
        raise ValueError("descriptor 'type' must be 'transition' or 'blend'")
    return descriptor


# ---------------------------------------------------------------------------
# eval / sample


def _family_from_args(args):
    orders = None
    if args.orders:
        l, r = (int(p) for p in args.orders.split(","))
        orders = (l, r)
    return catalog.make_step(
        args.family,
        orders=orders,
        m=args.m,
        tolerance=args.fabius_tolerance,
        grid_size=args.fabius_grid,
    )


def _rows(fn_value, fn_jet, xs, derivs: int):
    for x in xs:
        if derivs:
            d = fn_jet(x, derivs).derivatives()
            yield [x, d[0], *d[1:]]
        else:
            yield [x, fn_value(x)]


def cmd_eval(args) -> int:
    f = _family_from_args(args)
    xs = [float(p) for p in args.at.split(",")]
    for row in _rows(f.value, f.jet, xs, args.derivs):
        print(",".join(_fmt(v) for v in row))
    return 0


def _sampling_target(args):
    if args.descriptor:
        descriptor = load_descriptor(args.descriptor)
        if descriptor["type"] == "transition":
            t = build_transition(descriptor)
            return t.value, t.jet, t.outer
        blended = build_blend(descriptor)
        return blended.value, blended.jet, blended.domain
    f = _family_from_args(args)
    return f.value, f.jet, f.domain


def _write_svg(path, xs, columns, names) -> None:
    width, height, margin = 800, 600, 40
    lo = min(min(c) for c in columns)
    hi = max(max(c) for c in columns)
    if hi - lo < 1e-30:
        hi = lo + 1.0
    x0, x1 = xs[0], xs[-1]

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - lo) / (hi - lo) * (height - 2 * margin)

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<text x="{margin}" y="{height - margin + 20}" font-size="12">{_fmt(x0)}</text>',
        f'<text x="{width - margin - 30}" y="{height - margin + 20}" font-size="12">{_fmt(x1)}</text>',
        f'<text x="4" y="{height - margin}" font-size="12">{_fmt(lo)}</text>',
        f'<text x="4" y="{margin + 6}" font-size="12">{_fmt(hi)}</text>',
    ]
    for i, (col, name) in enumerate(zip(columns, names)):
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, col))
        color = palette[i % len(palette)]
        parts.append(f'<polyline fill="none" stroke="{color}" points="{pts}"><title>{name}</title></polyline>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


def cmd_sample(args) -> int:
    if args.n < 2:
        raise ValueError("need at least two sample points")
    value_fn, jet_fn, domain = _sampling_target(args)
    xs = [float(x) for x in np.linspace(domain.a, domain.b, args.n)]
    names = ["value"] + [f"d{i}" for i in range(1, args.derivs + 1)]
    rows = list(_rows(value_fn, jet_fn, xs, args.derivs))
    if args.format == "csv":
        lines = ["x," + ",".join(names)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    elif args.format == "json":
        payload = {"x": xs}
        for i, name in enumerate(names):
            payload[name] = [row[i + 1] for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    else:  # svg
        if not args.output:
            raise ValueError("svg output needs --output")
        columns = [[row[i + 1] for row in rows] for i in range(len(names))]
        _write_svg(Path(args.output), xs, columns, names)
    return 0


# ---------------------------------------------------------------------------
# verify suites


class _Suite:
    def __init__(self, name: str):
        self.name = name
        self.checks = []

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def report(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checks": self.checks}

    def print_table(self) -> None:
        width = max((len(c["name"]) for c in self.checks), default=10)
        for c in self.checks:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"{c['name']:<{width}}  {status}  {c['detail']}")
        print(f"suite {self.name}: {'PASS' if self.passed else 'FAIL'} "
              f"({sum(c['passed'] for c in self.checks)}/{len(self.checks)} checks)")


def _battery_for_flatness(args):
    family = args.family or "beta"
    max_order = args.max_order if args.max_order is not None else 4
    if family == "beta":
        return [(beta_step((l, r)), l, r, "jet", 1.0)
                for l in range(max_order + 1) for r in range(max_order + 1)]
    if family == "rational":
        return [(rational_step((l, r)), l, r, "jet", 1.0)
                for l in range(max_order + 1) for r in range(max_order + 1)]
    if family == "trig":
        m = args.m if args.m is not None else 1
        k = min(2 * m + 1, 6)
        return [(trig_step(m), k, k, "jet", 1.0)]
    if family == "expo":
        k = min(max_order, 4)
        return [(catalog.make_step("expo"), k, k, "fd", 1000.0)]
    if family == "fabius":
        k = min(max_order, 3)
        return [(catalog.make_step("fabius"), k, k, "fd", 1.0)]
    raise ValueError(f"unknown family {family!r}")


def _suite_flatness(args) -> _Suite:
    from .numerics import finite_difference_jet

    suite = _Suite("flatness")
    for f, l, r, method, relax in _battery_for_flatness(args):
        a, b = f.domain.a, f.domain.b
        if method == "jet":
            left = f.jet(a, l).derivatives()[1:] if l else ()
            right = f.jet(b, r).derivatives()[1:] if r else ()
            tol_l = tol_r = 1e-8
        else:
            left = finite_difference_jet(f.value, a, l, 1.0, f.domain)[1:] if l else ()
            right = finite_difference_jet(f.value, b, r, 1.0, f.domain)[1:] if r else ()
            tol_l = max(fd_tolerance(k, True, relax) for k in range(1, l + 1)) if l else 1.0
            tol_r = max(fd_tolerance(k, True, relax) for k in range(1, r + 1)) if r else 1.0
        worst_l = max((abs(d) for d in left), default=0.0)
        worst_r = max((abs(d) for d in right), default=0.0)
        value_ok = abs(f.value(a)) < 1e-12 and abs(f.value(b) - 1.0) < 1e-12
        suite.check(
            f"{f.label} flat({l},{r})",
            worst_l <= tol_l and worst_r <= tol_r and value_ok,
            f"left {worst_l:.3e} right {worst_r:.3e}",
        )
    return suite


def _symmetric_battery(args):
    if args.family == "rational" and args.orders:
        l, r = (int(p) for p in args.orders.split(","))
        return [rational_step((l, r))]
    battery = [trig_step(m) for m in range(3)]
    battery += [beta_step((l, l)) for l in (1, 2, 4)]
    battery += [rational_step((2, 2)), catalog.make_step("expo"), catalog.make_staircase_demo()]
    return battery


def _suite_symmetry(args) -> _Suite:
    suite = _Suite("symmetry")
    for f in _symmetric_battery(args):
        rep = symmetry_check(f, 1001)
        suite.check(f"{f.label} symmetric", rep.max_defect < 1e-12,
                    f"defect {rep.max_defect:.3e}")
    return suite


def _suite_closure(args) -> _Suite:
    suite = _Suite("closure")
    steps = [beta_step((2, 1)), rational_step((1, 2)), trig_step(1)]
    for h in steps:
        for f in steps:
            for combo, name in ((product(h, f), "product"),
                                (change_of_interval(h, f), "composition")):
                l = min_order(h.flat_left, f.flat_left)
                r = min_order(h.flat_right, f.flat_right)
                if name == "composition":
                    l, r = h.flat_left, h.flat_right
                d = combo.jet(0.0, l).derivatives()[1:]
                e = combo.jet(1.0, r).derivatives()[1:]
                worst = max([abs(v) for v in (*d, *e)], default=0.0)
                endpoints = abs(combo.value(0.0)) < 1e-12 and abs(combo.value(1.0) - 1.0) < 1e-12
                increasing = monotonicity_check(combo, 2001).increasing()
                suite.check(
                    f"{name}({h.label},{f.label})",
                    worst < 1e-8 and endpoints and increasing,
                    f"flat defect {worst:.3e}",
                )
    return suite


def _suite_hermite_oracle(args) -> _Suite:
    suite = _Suite("hermite-oracle")
    rng = np.random.default_rng(20240901)
    for l in range(4):
        for r in range(4):
            a0 = float(rng.uniform(-1.0, 1.0))
            b0 = a0 + float(rng.uniform(0.5, 3.0))
            spec = HermiteSpec(
                EndpointJet(a0, tuple(rng.uniform(-1, 1, l + 1))),
                EndpointJet(b0, tuple(rng.uniform(-1, 1, r + 1))),
            )
            direct = hermite_xi_polynomial(spec)
            solved = hermite_oracle(spec)
            coeff_dev = float(np.max(np.abs(direct - solved)))
            h = hermite_interpolant(spec)
            pts = rng.uniform(a0, b0, 20)
            from ._poly import poly_eval
            point_dev = max(
                abs(h.value(float(x)) - poly_eval(solved, (float(x) - a0) / (b0 - a0)))
                for x in pts
            )
            suite.check(
                f"hermite({l},{r})",
                coeff_dev < 1e-8 and point_dev < 1e-8,
                f"coeff {coeff_dev:.3e} point {point_dev:.3e}",
            )
    return suite


def _suite_trig_ode(args) -> _Suite:
    suite = _Suite("trig-ode")
    m = args.m if args.m is not None else 2
    xs = np.linspace(0.05, 0.95, 19)
    res = ode_residual(m, xs)
    scale = ode_forcing_constant(m)
    suite.check(f"ode residual m={m}", res / scale < 1e-6,
                f"residual {res:.3e} (scaled {res / scale:.3e})")
    t = trig_step(m)
    boundary = t.jet(1.0, 2 * m + 1).derivatives()
    worst = max(abs(d) for d in boundary[1:])
    suite.check(
        f"boundary pattern m={m}",
        abs(boundary[0] - 1.0) < 1e-12 and worst < 1e-8,
        f"value defect {abs(boundary[0] - 1.0):.3e}, deriv defect {worst:.3e}",
    )
    return suite


def _suite_binomial(args) -> _Suite:
    suite = _Suite("binomial")
    max_m = args.max_m if args.max_m is not None else 10
    for m in range(1, max_m + 1):
        result = binomial_identity_check(m)
        suite.check(f"m={m}", all(result.values()),
                    f"k=1..{m} all zero" if all(result.values()) else f"failed: {result}")
        coeffs = trig_coefficients(m)
        alphas = coeffs.cosine_weights()
        first = sum(alphas) == -0.5
        rest = all(
            sum((2 * j + 1) ** (2 * k) * a for j, a in enumerate(alphas)) == 0
            for k in range(1, m + 1)
        )
        suite.check(f"cosine-weight system m={m}", first and rest, "exact")
    return suite


def _transition_battery():
    inner = Interval(2.0, 4.0)
    f = catalog.make_cos(frequency=5.0, interval=(1.0, 4.0))
    g = catalog.make_polynomial([0.5, 0.25], (2.0, 5.0))
    carrier = step_carrier(rational_step((2, 2)), inner, "leftward")
    yield "multiplicative", transition_from_single(multiplicative_blend(carrier, (2, 2)), f, g), 2
    yield "hermite", transition_from_single(hermite_blend("leftward", (2, 2), inner), f, g), 2


def _suite_seams(args) -> _Suite:
    suite = _Suite("seams")
    check_order = args.max_order if args.max_order is not None else None
    for name, t, order in _transition_battery():
        k = check_order if check_order is not None else order
        jet_rep = seam_report(t, min(k, order), method="jet")
        fd_rep = seam_report(t, min(k, 4), method="fd", fd_scale=4.0)
        worst_jet = max(r.max_mismatch for r in jet_rep.values())
        worst_fd = max(
            max(
                m / fd_tolerance(i, one_sided=True)
                for i, m in enumerate(rep.mismatches)
                if i > 0
            )
            for rep in fd_rep.values()
        )
        value_fd = max(rep.mismatches[0] for rep in fd_rep.values())
        ok = worst_jet < 1e-7 and worst_fd < 1.0 and value_fd < 1e-10
        suite.check(f"{name} seams", ok,
                    f"jet {worst_jet:.3e}, fd(rel) {worst_fd:.3e}")
        if check_order is not None and check_order > order:
            sharp = seam_report(t, check_order, method="fd", fd_scale=4.0)
            beyond = max(rep.mismatches[-1] for rep in sharp.values())
            suite.check(f"{name} order-{check_order} mismatch is visible",
                        beyond > 1e-4, f"mismatch {beyond:.3e}")
    return suite


_SUITES = {
    "flatness": _suite_flatness,
    "symmetry": _suite_symmetry,
    "closure": _suite_closure,
    "hermite-oracle": _suite_hermite_oracle,
    "trig-ode": _suite_trig_ode,
    "binomial": _suite_binomial,
    "seams": _suite_seams,
}


def cmd_verify(args) -> int:
    suite = _SUITES[args.suite](args)
    suite.print_table()
    if args.report:
        Path(args.report).write_text(json.dumps(suite.report(), indent=2, sort_keys=True) + "\n")
    return 0 if suite.passed else 1


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepblend",
        description="Evaluate, sample, and verify smooth steps, blends, and transitions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_options(p):
        p.add_argument("--family", choices=["beta", "rational", "expo", "fabius", "trig"])
        p.add_argument("--orders", help="comma-separated pair, e.g. 1,1")
        p.add_argument("--m", type=int, help="trig family index")
        p.add_argument("--fabius-tolerance", type=float, default=1e-10)
        p.add_argument("--fabius-grid", type=int, default=2**14)

    p_eval = sub.add_parser("eval", help="print value (and derivative) rows")
    add_family_options(p_eval)
    p_eval.add_argument("--at", required=True, help="comma-separated evaluation points")
    p_eval.add_argument("--derivs", type=int, default=0)
    p_eval.set_defaults(func=cmd_eval)

    p_sample = sub.add_parser("sample", help="sample a function or descriptor to a file")
    add_family_options(p_sample)
    p_sample.add_argument("--descriptor", help="JSON transition/blend descriptor path")
    p_sample.add_argument("--n", type=int, default=101)
    p_sample.add_argument("--derivs", type=int, default=0)
    p_sample.add_argument("--output")
    p_sample.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p_sample.set_defaults(func=cmd_sample)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(_SUITES))
    p_verify.add_argument("--family")
    p_verify.add_argument("--orders")
    p_verify.add_argument("--m", type=int)
    p_verify.add_argument("--max-m", type=int, dest="max_m")
    p_verify.add_argument("--max-order", type=int, dest="max_order")
    p_verify.add_argument("--report", help="write the JSON report here")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
