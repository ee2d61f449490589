"""Command line front end.

    mapforms verify  --suite hat-calculus --suite boundary --seed 7 --out report.json
    mapforms converge --identity derivation-circle --levels 32,64,128,256
    mapforms demo mw-links --out demo-out/

verify runs named identity suites and writes a structured report (JSON or
CSV); converge reruns one identity over a node ladder with FD steps scaled
accordingly and emits a residual table with the fitted order; demo produces
value tables as CSV plus a JSON summary.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
configuration error.  Reports carry the seed, meshes, tolerances and the
conventions in force, and are byte-identical for identical (config, seed).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import catalog as cat
from . import grassmannian as gr
from . import mechanics as me
from .domains import circle, torus2
from .forms import coefficient_form
from .mapspace import map_space_d, hat_map
from .report import VerificationReport, fit_order, make_environment
from .suites import (SUITES, SuiteConfig, brane_catalog, run_suite,
                     two_route_residual, _derivation_residual)

USAGE_ERROR = 2


def _load_config(path, args) -> SuiteConfig:
    config = SuiteConfig()
    if path:
        with open(path) as fh:
            raw = json.load(fh)
        known = {k: v for k, v in raw.items()
                 if k in SuiteConfig.__dataclass_fields__}
        unknown = sorted(set(raw) - set(known) - {"suites"})
        if unknown:
            raise ValueError(f"unknown config keys: {unknown}")
        if "order_steps" in known:
            known["order_steps"] = tuple(known["order_steps"])
        config = replace(config, **known)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if getattr(args, "nodes", None) is not None:
        config = replace(config, nodes=args.nodes)
    return config


def _config_suites(path) -> list:
    if not path:
        return []
    with open(path) as fh:
        return json.load(fh).get("suites", [])


def cmd_verify(args) -> int:
    try:
        config = _load_config(args.config, args)
        suites = list(args.suite) or _config_suites(args.config)
        if not suites:
            print("error: no suites requested (use --suite, e.g. "
                  f"--suite hat-calculus; available: {sorted(SUITES)})",
                  file=sys.stderr)
            return USAGE_ERROR
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            print(f"error: unknown suite ids {unknown}; available: "
                  f"{sorted(SUITES)}", file=sys.stderr)
            return USAGE_ERROR
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    records = []
    for name in suites:
        records.extend(run_suite(name, config))
    report = VerificationReport(suite="+".join(suites), records=records,
                                environment=make_environment(config))
    for r in records:
        print(r.line())
    n_fail = sum(not r.passed for r in records)
    print(f"{len(records) - n_fail}/{len(records)} checks passed")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        text = report.to_csv() if args.format == "csv" else report.to_json()
        out.write_text(text)
        print(f"report written to {out}")
    return 0 if n_fail == 0 else 1


# ---------------------------------------------------------------------------
# convergence studies

def _converge_derivation(kind):
    def runner(nodes: int, fd_step: float, seed: int) -> float:
        dom = circle(nodes) if kind == "circle" else torus2(max(int(round(np.sqrt(nodes))), 8))
        m, p, q = (3, 2, 0) if kind == "circle" else (4, 2, 1)
        rng = np.random.default_rng([seed, 90])
        return _derivation_residual(dom, m, p, q, rng, fd_step)
    return runner


def _converge_two_route(nodes: int, fd_step: float, seed: int) -> float:
    dom = circle(nodes)
    rng = np.random.default_rng([seed, 91])
    return two_route_residual(dom, 3, 2, 1, rng)


def _converge_quadrature(nodes: int, fd_step: float, seed: int) -> float:
    # quadrature of the exact derivative of a periodic function: zero up to
    # roundoff at every level (the machine-floor reference case)
    dom = circle(nodes)
    rng = np.random.default_rng([seed, 92])
    g = cat.random_scalar(1, rng, n_terms=3, max_mode=3)
    from .forms import integrate
    dg = coefficient_form(1, 0, {(): g}).analytic_d
    return abs(integrate(dg, dom))


CONVERGE_IDS = {
    "derivation-circle": ("FD-limited derivation identity on the circle",
                          _converge_derivation("circle")),
    "derivation-torus": ("FD-limited derivation identity on the torus",
                         _converge_derivation("torus2")),
    "two-route-circle": ("spectral two-route agreement (machine floor)",
                         _converge_two_route),
    "quadrature-circle": ("spectral quadrature of an exact derivative",
                          _converge_quadrature),
}


def cmd_converge(args) -> int:
    try:
        config = _load_config(args.config, args)
        if args.identity not in CONVERGE_IDS:
            print(f"error: unknown identity {args.identity!r}; available: "
                  f"{sorted(CONVERGE_IDS)}", file=sys.stderr)
            return USAGE_ERROR
        levels = [int(t) for t in args.levels.split(",") if t]
        if not levels:
            raise ValueError("empty level list")
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    label, runner = CONVERGE_IDS[args.identity]
    base_nodes = levels[0]
    rows = []
    for nodes in levels:
        fd = config.fd_step * base_nodes / nodes * 40.0  # keep the FD term visible
        residual = runner(nodes, fd, config.seed)
        rows.append((nodes, fd, residual))
    steps = [1.0 / n for n, _, _ in rows]
    residuals = [r for _, _, r in rows]
    order, note = fit_order(steps, residuals)
    order_text = f"{order:.2f}" if order is not None else note

    print(f"identity: {args.identity} ({label})")
    print("nodes,fd_step,residual")
    for nodes, fd, residual in rows:
        print(f"{nodes},{fd:.6e},{residual:.6e}")
    print(f"fitted order vs 1/nodes: {order_text}")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        if args.format == "json":
            out.write_text(json.dumps({
                "identity": args.identity, "label": label,
                "levels": [{"nodes": n, "fd_step": fd, "residual": r}
                           for n, fd, r in rows],
                "order": order, "order_note": note,
                "seed": config.seed,
            }, indent=2, sort_keys=True) + "\n")
        else:
            with open(out, "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["nodes", "fd_step", "residual"])
                writer.writerows(rows)
        print(f"table written to {out}")
    return 0


# ---------------------------------------------------------------------------
# demos

def demo_mw_links(config: SuiteConfig):
    """Loop-space area pairing: circle value, horizontality, closedness."""
    dom = circle(128)
    nu = cat.named_form("vol3")
    rng = np.random.default_rng([config.seed, 95])
    rows = [("loop", "slot_fields", "value")]
    circ = gr.embed(cat.unit_circle_map(dom, 3))
    ez, rad, ex = (cat.named_field(n) for n in ("e_z", "radial", "e_x"))
    v_circle = gr.tilda_eval(nu, circ, [ez, rad])
    rows.append(("unit-circle", "e_z,radial", f"{v_circle:.15f}"))
    rows.append(("unit-circle", "e_z,e_x", f"{gr.tilda_eval(nu, circ, [ez, ex]):.3e}"))
    wavy = gr.embed(cat.random_loop(dom, 3, rng, amp=0.2))
    rows.append(("wavy-loop", "e_z,radial", f"{gr.tilda_eval(nu, wavy, [ez, rad]):.15f}"))
    from .mapspace import MapTangent
    tang = gr.tangential_tangent(circ, np.sin(3 * dom.nodes[:, :1]) + 0.2)
    pert = MapTangent(circ.rep, gr.generator_M(rad, circ.rep).vectors + tang.vectors)
    horiz = abs(gr.tilda_eval(nu, circ, [ez, pert]) - v_circle)
    dW = map_space_d(hat_map(nu, dom), config.fd_step)
    ts = [cat.random_tangent(circ.rep, rng) for _ in range(3)]
    closed = abs(dW(circ.rep, *ts))
    summary = {
        "circle_value": v_circle,
        "circle_value_error": abs(v_circle - 2.0 * np.pi),
        "horizontality_defect": horiz,
        "closedness_residual": closed,
        "passed": bool(abs(v_circle - 2.0 * np.pi) < 1e-8 and horiz < 1e-8
                       and closed < 1e-6),
    }
    return summary, {"mw-links.csv": rows}


def demo_dualpair(config: SuiteConfig):
    """Commuting hamiltonian actions on F(T^2, R^2) with their momenta."""
    dom = torus2(config.torus_side)
    rng = np.random.default_rng([config.seed, 96])
    sys = me.canonical_r2()
    theta = coefficient_form(2, 1, {(1,): cat.scalar_coordinate(0, 2)},
                             name="x dy")
    om_ex = me.exact_two_form(theta)
    report = me.dual_pair_report(sys, om_ex, dom, rng, fd_step=config.fd_step)
    rows = [("quantity", "value")]
    rows.append(("commutation_error", f"{report['commutation_error']:.3e}"))
    rows.append(("diffham_residual", f"{report['diffham_residual']:.3e}"))
    rows.append(("diffex_residual", f"{report['diffex_residual']:.3e}"))
    rows.append(("diffex_cocycle_spread", f"{report['diffex_cocycle_spread']:.3e}"))
    # momentum samples along the homotopy; the cocycle column stays constant
    names = [p.name for p in sys.catalog]
    path_rows = [("t",) + tuple(f"J_ham[{n}]" for n in names)
                 + ("J_vol", "cocycle")]
    for step_data in report["homotopy_path"]:
        path_rows.append(
            (f"{step_data['t']:.2f}",)
            + tuple(f"{v:.12f}" for v in step_data["momentum_diffham"])
            + (f"{step_data['momentum_diffex']:.12f}",
               f"{step_data['cocycle_diffex']:.3e}"))
    summary = {
        "commutation_error": report["commutation_error"],
        "diffham_residual": report["diffham_residual"],
        "diffex_residual": report["diffex_residual"],
        "diffex_cocycle_spread": report["diffex_cocycle_spread"],
        "passed": bool(report["commutation_error"] < 1e-12
                       and report["diffham_residual"] < 1e-6
                       and report["diffex_residual"] < 1e-6
                       and report["diffex_cocycle_spread"] < 1e-6),
    }
    return summary, {"dualpair.csv": rows,
                     "dualpair-homotopy.csv": path_rows}


def demo_branes(config: SuiteConfig):
    """Twist closedness for the cataloged boundary data."""
    iv, cases = brane_catalog(config)
    rows = [("case", "applicable", "gate_residual", "closedness_residual",
             "passed")]
    ok = True
    for idx, (name, H, B, D, should_apply) in enumerate(cases):
        rng = np.random.default_rng([config.seed, 97, idx])
        rep = me.brane_twist_check(H, B, D, iv, rng, n_trials=2,
                                   fd_step=config.fd_step)
        rows.append((name, rep.applicable, f"{rep.gate_residual:.3e}",
                     f"{rep.closedness_residual:.3e}", rep.passed))
        ok = ok and (rep.passed if should_apply
                     else (not rep.applicable and not rep.passed))
    summary = {"cases": len(cases), "passed": bool(ok)}
    return summary, {"branes.csv": rows}


DEMOS = {
    "mw-links": demo_mw_links,
    "dualpair": demo_dualpair,
    "branes": demo_branes,
}


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(f"error: unknown demo {args.name!r}; available: "
              f"{sorted(DEMOS)}", file=sys.stderr)
        return USAGE_ERROR
    try:
        config = _load_config(args.config, args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    summary, tables = DEMOS[args.name](config)
    out_dir = Path(args.out or "demo-out")
    out_dir.mkdir(parents=True, exist_ok=True)
    for fname, rows in tables.items():
        with open(out_dir / fname, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(rows)
    (out_dir / f"{args.name}.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n")
    for key, value in summary.items():
        print(f"{key}: {value}")
    print(f"artifacts written to {out_dir}/")
    return 0 if summary.get("passed", True) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapforms",
        description="identity suites, convergence studies, and demos for the "
                    "map-space form calculus")
    sub = parser.add_subparsers(dest="command")

    p_verify = sub.add_parser("verify", help="run identity suites")
    p_verify.add_argument("--suite", action="append", default=[],
                          help=f"suite id, repeatable ({sorted(SUITES)})")
    p_verify.add_argument("--config", help="JSON config file")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--nodes", type=int, default=None)
    p_verify.add_argument("--out", help="report file path")
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")

    p_conv = sub.add_parser("converge", help="node-refinement study")
    p_conv.add_argument("--identity", required=True,
                        help=f"identity id ({sorted(CONVERGE_IDS)})")
    p_conv.add_argument("--levels", default="32,64,128,256")
    p_conv.add_argument("--config", help="JSON config file")
    p_conv.add_argument("--seed", type=int, default=None)
    p_conv.add_argument("--out", help="table file path")
    p_conv.add_argument("--format", choices=["json", "csv"], default="csv")

    p_demo = sub.add_parser("demo", help="run a demo")
    p_demo.add_argument("name", help=f"demo id ({sorted(DEMOS)})")
    p_demo.add_argument("--config", help="JSON config file")
    p_demo.add_argument("--seed", type=int, default=None)
    p_demo.add_argument("--out", help="output directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "converge":
        return cmd_converge(args)
    if args.command == "demo":
        return cmd_demo(args)
    parser.print_help()
    return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
