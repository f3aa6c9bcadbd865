"""Command line front end.

Subcommands:
  simulate    run a named or configured scenario over its seeds
  sweep       census over an explicit lambda list
  catalog     enumerate and classify the axial patterns of a shape
  classify    read a value matrix from CSV and print its pattern report
  synthesize  verify a stable equilibrium on a balanced coloring

Scenario configs are JSON; command line flags override file values.  Schema
(all keys optional except coefficients when no --scenario is given):

{
  "name": "my-scenario",
  "shape": [4, 6],
  "coefficients": {"c_d": 1.0, "c_c": -1.0, "c_dl": -0.5, "c_s": -0.5},
  "sigmoids": [0.5, 0.3],
  "epsilon": 0.01,
  "seeds": [0, 1, 2],
  "radius": 0.001,
  "quantize_tol": 0.0001,
  "integrator": {"step": 0.05, "t_max": 3000.0,
                 "equilibrium_tol": 1e-9, "record_stride": 10}
}
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .colorings import synthesize_stable_admissible
from .experiments import (BUILTIN_SCENARIOS, Scenario, catalog_rows, get_scenario,
                          run_scenario, sweep_lambda)
from .model import CriticalCoefficients, NetworkShape, SigmoidParams
from .patterns import Coloring, classify_state, quantize_to_coloring


def _parse_seeds(text: str) -> tuple[int, ...]:
    """Accepts '0,1,5' or a range '0..19'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(",") if x.strip())


def _scenario_from_args(args) -> Scenario:
    sc = get_scenario(args.scenario) if args.scenario else None
    if args.config:
        with open(args.config) as fh:
            raw = json.load(fh)
        base = sc if sc is not None else None
        shape = NetworkShape(*raw["shape"]) if "shape" in raw else (base.shape if base else NetworkShape(4, 6))
        if "coefficients" in raw:
            co = raw["coefficients"]
            coeffs = CriticalCoefficients(c_d=co["c_d"], c_c=co["c_c"],
                                          c_dl=co["c_dl"], c_s=co["c_s"])
        elif base is not None:
            coeffs = base.coefficients
        else:
            raise SystemExit("config needs 'coefficients' (or use --scenario)")
        sig = SigmoidParams(*raw["sigmoids"]) if "sigmoids" in raw else \
            (base.sigmoids if base else SigmoidParams(0.5, 0.3))
        kw = {}
        for key in ("epsilon", "radius", "quantize_tol"):
            if key in raw:
                kw[key] = raw[key]
        if "seeds" in raw:
            kw["seeds"] = tuple(raw["seeds"])
        integ = raw.get("integrator", {})
        for src, dst in (("step", "step"), ("t_max", "t_max"),
                         ("equilibrium_tol", "equilibrium_tol"),
                         ("record_stride", "record_stride")):
            if src in integ:
                kw[dst] = integ[src]
        sc = Scenario(name=raw.get("name", sc.name if sc else "custom"),
                      shape=shape, coefficients=coeffs, sigmoids=sig,
                      **({k: v for k, v in kw.items()}))
    if sc is None:
        raise SystemExit("need --scenario or --config")
    if args.seeds:
        sc = sc.replace(seeds=_parse_seeds(args.seeds))
    if args.epsilon is not None:
        sc = sc.replace(epsilon=args.epsilon)
    return sc


def _cmd_simulate(args) -> int:
    sc = _scenario_from_args(args)
    reports = run_scenario(sc, out_dir=args.out_dir,
                           match_catalog=args.catalog != "off")
    n_conv = sum(r.converged for r in reports)
    print(f"{sc.name}: lambda={sc.lambda_value():.6g}, "
          f"{n_conv}/{len(reports)} converged")
    for r in reports:
        cls = r.pattern.pattern_class.value if r.pattern else "-"
        match = f"axial #{r.axial_index} case {r.axial_case} {r.axial_verdict}" \
            if r.axial_index is not None else "no axial match"
        print(f"  seed {r.seed:3d}: converged={r.converged} residual={r.residual:.2e} "
              f"class={cls} ({match})")
    if args.out_dir:
        print(f"reports written to {args.out_dir}")
    return 0


def _cmd_sweep(args) -> int:
    sc = _scenario_from_args(args)
    lambdas = [float(x) for x in args.lambda_list.split(",") if x.strip()]
    out_csv = None
    if args.out_dir:
        import os
        os.makedirs(args.out_dir, exist_ok=True)
        out_csv = os.path.join(args.out_dir, f"{sc.name}_sweep.csv")
    rows = sweep_lambda(sc, lambdas, out_csv=out_csv)
    for row in rows:
        print(f"lambda={row['lambda']:.6g}: converged={row['frac_converged']:.2f} "
              f"zero={row['frac_zero']:.2f} "
              f"dissensus={row['frac_Dissensus']:.2f} "
              f"mean_amp={row['mean_amplitude']:.4g}")
    if out_csv:
        print(f"sweep written to {out_csv}")
    return 0


def _cmd_catalog(args) -> int:
    shape = NetworkShape(args.m, args.n)
    cat, rows = catalog_rows(shape)
    by_case: dict[str, int] = {}
    by_verdict: dict[str, int] = {}
    for row in rows:
        by_case[row["case"]] = by_case.get(row["case"], 0) + 1
        by_verdict[row["verdict"]] = by_verdict.get(row["verdict"], 0) + 1
        extra = f"rho={row['rho']}" if row["rho"] else f"split={row['split']}"
        print(f"#{row['index']}: case {row['case']} {row['verdict']} "
              f"({row['num_colors']} colors, {extra})")
        for line in row["coloring"].splitlines():
            print("   " + line)
    print(f"total {len(rows)}: by case {by_case}, by verdict {by_verdict}")
    if args.out_dir:
        import os
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, f"axial_catalog_{args.m}x{args.n}.json")
        with open(path, "w") as fh:
            fh.write(cat.export_json() + "\n")
        print(f"catalog written to {path}")
    return 0


def _cmd_classify(args) -> int:
    with open(args.matrix) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if lines and lines[0].startswith("t,"):
        # trajectory file: infer the shape from the header, use the last sample
        last_label = lines[0].split(",")[-1]          # "z_m_n"
        _, m, n = last_label.split("_")
        m, n = int(m), int(n)
        vals = [float(x) for x in lines[-1].split(",")][1:]
        Z = np.array(vals).reshape(m, n)
    else:
        Z = np.array([[float(x) for x in ln.split(",")] for ln in lines])
    coloring = quantize_to_coloring(Z, args.tol)
    report = classify_state(coloring, Z)
    report.quantization_tol = args.tol
    print(report.to_json())
    return 0


def _cmd_synthesize(args) -> int:
    with open(args.coloring) as fh:
        coloring = Coloring.from_text(fh.read())
    # generic levels: distinct integers centered on zero
    K = coloring.num_colors
    levels = [k - (K - 1) / 2 for k in range(K)]
    y = [[levels[c] for c in row] for row in coloring.cells]
    fmap, report = synthesize_stable_admissible(coloring, y)
    payload = {
        "levels": [float(v) for v in fmap.levels],
        "polynomial_degree": len(fmap.coeffs) - 1,
        "residual_max": report.residual_max,
        "max_eigenvalue_deviation": report.max_eigenvalue_deviation,
        "exact_roots": report.exact_roots,
        "exact_slopes": report.exact_slopes,
        "stable": report.max_eigenvalue_deviation < 0.5,
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="indecision",
        description="Simulate and classify indecision-breaking on agent-option "
                    "influence networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_flags(p):
        p.add_argument("--scenario", choices=sorted(BUILTIN_SCENARIOS),
                       help="built-in scenario name")
        p.add_argument("--config", help="JSON scenario config (flags override)")
        p.add_argument("--seeds", help="comma list '0,3,7' or range '0..19'")
        p.add_argument("--epsilon", type=float, default=None,
                       help="offset above the bifurcation threshold")
        p.add_argument("--out-dir", default=None, help="directory for reports")

    p_sim = sub.add_parser("simulate", help="run a scenario over its seeds")
    add_scenario_flags(p_sim)
    p_sim.add_argument("--catalog", choices=("auto", "off"), default="auto",
                       help="match finals against the axial catalog")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="census over a lambda list")
    add_scenario_flags(p_sweep)
    p_sweep.add_argument("--lambda-list", required=True,
                         help="comma-separated lambda values")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cat = sub.add_parser("catalog", help="axial catalog of a shape")
    p_cat.add_argument("m", type=int)
    p_cat.add_argument("n", type=int)
    p_cat.add_argument("--out-dir", default=None)
    p_cat.set_defaults(func=_cmd_catalog)

    p_cls = sub.add_parser("classify", help="pattern report for a CSV matrix")
    p_cls.add_argument("matrix", help="CSV file: one matrix row per line, or "
                                      "a trajectory file (the last sample is used)")
    p_cls.add_argument("--tol", type=float, default=1e-5,
                       help="quantization tolerance")
    p_cls.set_defaults(func=_cmd_classify)

    p_syn = sub.add_parser("synthesize",
                           help="stable equilibrium on a balanced coloring")
    p_syn.add_argument("coloring", help="text file, one row of color ids per line")
    p_syn.set_defaults(func=_cmd_synthesize)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
