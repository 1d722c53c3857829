"""Command-line front end: analysis, cycle search, and verification reports.

Subcommands
    analyze    focal values and classification of a weighted field
    cycles     displacement scan and limit-cycle isolation
    verify     case-study claim table (reference integrals, ratios, cycles)
    quad       reference-integral table under both quadrature schemes
    jacobian   focal-value Jacobian of a named parameter family
    survey     parity statistics over random fields at given weights

Every report is plain UTF-8 text; ``--out`` additionally writes the text plus
a JSON document and a CSV table next to it.  Exit status: 0 on success, 1 on
input or integration errors, 2 when a reproduction check fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import casestudy, flow, focal
from .cycles import find_cycles, closure_error
from .errors import QhfocusError, ReproductionError
from .fields import WeightedField, load_system, format_system
from .quadrature import trapezoid_periodic, gauss_panels

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REPRODUCTION = 2


def _parse_params(text: str | None) -> dict[str, float]:
    if not text:
        return {}
    out = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise ValueError(f"malformed --params entry {piece!r}, expected k=v")
        key, val = piece.split("=", 1)
        out[key.strip()] = float(val)
    return out


def _family_field(name: str, params: dict[str, float]) -> WeightedField:
    if name == "eq325":
        return casestudy.eq325_field(
            params.get("eps1", 0.0), params.get("eps2", 0.0)
        )
    if name == "eq327":
        if params.get("delta0", 0.0) != 0.0:
            raise ValueError(
                "family eq327 with delta0 != 0 has linear damping; "
                "only the cycles command accepts it"
            )
        return casestudy.eq329_weighted(
            a50=params.get("a50", 0.0),
            b41=params.get("b41", 1.0),
            a22=params.get("a22", 0.0),
            b13=params.get("b13", 0.0),
            sigma=params.get("sigma", 0.1),
            delta1=params.get("delta1", 0.0),
            delta2=params.get("delta2", 0.0),
        )
    raise ValueError(f"unknown family {name!r}")


def _load_field(args) -> WeightedField:
    if args.system:
        return load_system(args.system)
    if args.family:
        return _family_field(args.family, _parse_params(args.params))
    raise ValueError("provide --system <path> or --family <name>")


def _emit(args, lines: list[str], doc: dict, rows: list[list]) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        base = Path(args.out)
        base.write_text(text, encoding="utf-8")
        base.with_suffix(".json").write_text(
            json.dumps(doc, indent=2, default=float) + "\n", encoding="utf-8"
        )
        if rows:
            with base.with_suffix(".csv").open("w", newline="", encoding="utf-8") as fh:
                csv.writer(fh).writerows(rows)


# -- analyze ----------------------------------------------------------------------


def cmd_analyze(args) -> int:
    field = _load_field(args)
    report = focal.focal_values(
        field,
        K=args.order,
        tol=args.zero_tol,
        integ_tol=args.tol,
        precision=args.precision,
    )
    struct = focal.structural_center(field)
    lines = [
        "focal analysis",
        f"  weights           p={field.p} q={field.q} (gcd {report.weight_gcd})",
        f"  jet order         K={report.order}",
        f"  integrator tol    {args.tol:g}",
        f"  zero tol          {args.zero_tol:g}",
        f"  parity class      {report.parity_class}",
        f"  verdict           {report.verdict}",
        f"  first nonzero     {report.first_nonzero_index}",
        f"  focus order       {report.focus_order}",
    ]
    for k in range(2, report.order + 1):
        lines.append(f"  nu_{k:<2d} = {report.nu(k):+.15e}  (tol {args.tol:g})")
    lines.append(f"  hamiltonian       {struct['hamiltonian']}")
    lines.append(f"  x-axis reversible {struct['x-axis']}")
    lines.append(f"  y-axis reversible {struct['y-axis']}")
    rows = [["k", "nu_k", "tol"]]
    rows += [[k, report.nu(k), args.tol] for k in range(2, report.order + 1)]
    if args.rq_table:
        from .polar import rq_table

        from .polar import PolarRHS

        table = rq_table(PolarRHS(field), np.linspace(0.0, 2 * np.pi, 181))
        with Path(args.rq_table).open("w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(table.tolist())
        lines.append(f"  R/Q table written to {args.rq_table}")
    doc = {
        "command": "analyze",
        "p": field.p,
        "q": field.q,
        "order": report.order,
        "tol": args.tol,
        "zero_tol": args.zero_tol,
        "precision": args.precision,
        "parity_class": report.parity_class,
        "verdict": report.verdict,
        "first_nonzero_index": report.first_nonzero_index,
        "focus_order": report.focus_order,
        "values": {str(k): report.nu(k) for k in range(2, report.order + 1)},
        "structural": struct,
        "system": format_system(field),
    }
    _emit(args, lines, doc, rows)
    return EXIT_OK


# -- cycles -----------------------------------------------------------------------


def cmd_cycles(args) -> int:
    params = _parse_params(args.params)
    if args.family == "eq327" and params.get("delta0", 0.0) != 0.0:
        backend = "cartesian"
        system = casestudy.eq329_cartesian(
            a50=params.get("a50", 0.0),
            b41=params.get("b41", 1.0),
            a22=params.get("a22", 0.0),
            b13=params.get("b13", 0.0),
            sigma=params.get("sigma", 0.1),
            delta0=params.get("delta0", 0.0),
            delta1=params.get("delta1", 0.0),
            delta2=params.get("delta2", 0.0),
        )
        field = None
    else:
        backend = "polar"
        field = _load_field(args)
        system = field
    result = find_cycles(
        backend,
        system,
        args.h_min,
        args.h_max,
        grid_n=args.grid,
        tol=args.tol,
        noise_floor=args.noise_floor,
    )
    lines = [
        "cycle search",
        f"  backend        {backend}",
        f"  h range        [{args.h_min:g}, {args.h_max:g}] on {args.grid} points",
        f"  integrator tol {args.tol:g}",
        f"  cycles found   {len(result.cycles)}",
    ]
    for c in result.cycles:
        closure = ""
        if field is not None:
            err = closure_error(field, c.h_star, field.p, tol=args.tol)
            closure = f"  cartesian closure {err:.3e}"
        lines.append(
            f"  h* = {c.h_star:.12f}  {c.stability:8s} residual {c.residual:.3e}"
            f" (tol {args.tol:g}){closure}"
        )
    for w in result.warnings:
        lines.append(f"  warning: {w}")
    rows = [["h", "Delta", "tol"]] + [[h, d, args.tol] for h, d in result.scan]
    doc = {
        "command": "cycles",
        "backend": backend,
        "h_min": args.h_min,
        "h_max": args.h_max,
        "grid": args.grid,
        "tol": args.tol,
        "cycles": [
            {
                "h_star": c.h_star,
                "bracket": list(c.bracket),
                "residual": c.residual,
                "stability": c.stability,
            }
            for c in result.cycles
        ],
        "warnings": result.warnings,
    }
    _emit(args, lines, doc, rows)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    t0 = time.time()
    lines = ["case-study verification"]
    rows = [["row", "value", "target", "tol", "pass"]]
    doc: dict = {"command": "verify", "rows": {}}
    failures = []

    def row(name, value, target, tol, ok):
        mark = "pass" if ok else "FAIL"
        lines.append(
            f"  [{mark}] {name:28s} value={value:.12e} target={target!r} tol={tol:g}"
        )
        rows.append([name, value, target, tol, mark])
        doc["rows"][name] = {
            "value": float(value),
            "target": target,
            "tol": tol,
            "pass": bool(ok),
        }
        if not ok:
            failures.append(name)

    fresh = casestudy.compute_reference_constants(tol=args.tol)
    frozen = casestudy.reference_constants(frozen=True)
    for key in ("I2", "I4", "IA", "IB"):
        rel = abs(fresh[key] / frozen[key] - 1.0)
        row(f"integral {key} vs frozen", fresh[key], frozen[key], 1e-10, rel <= 1e-10)

    v322 = casestudy.verify_322(tol=args.tol)
    row(
        f"combined prefactor ({v322.reading_used})",
        v322.combination_value,
        casestudy.EQ322_TARGET,
        1e-4,
        v322.ok,
    )

    ratios = casestudy.focal_ratio_constants()
    rng = np.random.default_rng(args.seed)

    samples = rng.uniform(-1.0, 1.0, size=(3, 4))
    errs = []
    for a22, a50, b13, b41 in samples:
        field = casestudy.field23(a22=a22, a50=a50, b13=b13, b41=b41)
        rep = focal.focal_values(field, K=3, integ_tol=args.tol)
        v2 = 5 * a50 + b41
        if abs(v2) < 0.1:
            continue
        errs.append(abs(rep.nu(2) / (ratios["nu2_over_V2"] * v2) - 1.0))
    row("nu2 / ((1/60) I2 V2)", 1.0 + max(errs), 1.0, 1e-8, max(errs) <= 1e-8)

    errs = []
    for _ in range(3):
        a22, b13, b41 = rng.uniform(0.2, 1.0, size=3)
        field = casestudy.field23(a22=a22, a50=-b41 / 5, b13=b13, b41=b41)
        rep = focal.focal_values(field, K=5, integ_tol=args.tol)
        v4 = -(5 * a22 - 3 * b13) * (2 * a22 + 3 * b13) * b41
        errs.append(abs(rep.nu(4) / (ratios["nu4_over_V4"] * v4) - 1.0))
    row("nu4 / ((13/16800) I4 V4)", 1.0 + max(errs), 1.0, 1e-5, max(errs) <= 1e-5)

    errs = []
    for _ in range(2):
        b13, b41 = rng.uniform(0.2, 1.0, size=2)
        a22 = 0.6 * b13  # V4 = 0 slice
        field = casestudy.field23(a22=a22, a50=-b41 / 5, b13=b13, b41=b41)
        rep = focal.focal_values(field, K=7, integ_tol=args.tol)
        v6 = (2 * a22 + 3 * b13) ** 2 * b41**3
        errs.append(abs(rep.nu(6) / (ratios["nu6_over_V6"] * v6) - 1.0))
    row("nu6 / (c6 V6)", 1.0 + max(errs), 1.0, 1e-4, max(errs) <= 1e-4)

    u2 = max(
        casestudy.verify_u2(
            np.linspace(0.3, 2 * np.pi, 8), casestudy.field23(0.7, 1.0, -0.3, 1.0)
        )
    )
    row("u2 closed form residual", u2, 0.0, 1e-10, u2 <= 1e-10)

    thm = casestudy.verify_thm34(
        sigma=0.1, samples=[(0.0, 1.0), (1.0, 0.0), (0.3, -0.1), (-0.2, 2.0)]
    )
    row("thm34 lambda1,2 residual", thm.lambda12_max, 0.0, 1e-10, thm.lambda12_max <= 1e-10)
    row("thm34 ratio spread", thm.ratio_spread, 0.0, 1e-4, thm.ratio_spread <= 1e-4)
    row(
        "thm34 ratio / (47/128)",
        thm.ratio_over_documented,
        float(np.pi),
        1e-6,
        thm.matches_documented,
    )

    lines.append(f"  elapsed {time.time() - t0:.1f}s")
    doc["elapsed_seconds"] = time.time() - t0
    doc["failures"] = failures
    _emit(args, lines, doc, rows)
    if failures:
        sys.stderr.write(
            "reproduction failure in rows: " + ", ".join(failures) + "\n"
        )
        return EXIT_REPRODUCTION
    return EXIT_OK


# -- quad -------------------------------------------------------------------------


def cmd_quad(args) -> int:
    period = 2 * np.pi
    integrands = {
        "I2": casestudy.g2_integrand,
        "I4": casestudy.nu4_integrand,
        "IA": casestudy.a_integrand,
        "IB": casestudy.b_integrand_factory(casestudy.nested_f2),
    }
    lines = ["reference integrals, two independent schemes"]
    rows = [["integral", "trapezoid", "gauss", "difference", "tol"]]
    doc = {"command": "quad", "tol": args.tol, "integrals": {}}
    worst = 0.0
    for name, fn in integrands.items():
        a = trapezoid_periodic(fn, tol=args.tol)
        b = gauss_panels(fn, 0.0, period, tol=args.tol)
        diff = abs(a.value - b.value)
        worst = max(worst, diff / max(1.0, abs(a.value)))
        lines.append(
            f"  {name}: trapezoid={a.value:.15e} ({a.nodes_used} nodes)"
            f"  gauss={b.value:.15e} ({b.nodes_used} nodes)"
            f"  |diff|={diff:.3e} (tol {args.tol:g})"
        )
        rows.append([name, a.value, b.value, diff, args.tol])
        doc["integrals"][name] = {
            "trapezoid": a.value,
            "gauss": b.value,
            "difference": diff,
        }
    _emit(args, lines, doc, rows)
    if worst > 1e-10:
        sys.stderr.write("quadrature schemes disagree beyond 1e-10 relative\n")
        return EXIT_REPRODUCTION
    return EXIT_OK


# -- jacobian ---------------------------------------------------------------------


def cmd_jacobian(args) -> int:
    params = _parse_params(args.params)
    if args.family == "eq325":
        names = ["eps1", "eps2"]
        family = lambda e: casestudy.eq325_field(e[0], e[1])
        indices = (2, 4, 6)
    elif args.family == "eq327":
        sigma = params.get("sigma", 0.1)
        a50 = params.get("a50", 0.0)
        b41 = params.get("b41", 1.0)
        names = ["delta1", "delta2"]
        family = lambda e: casestudy.eq329_weighted(
            a50=a50, b41=b41, sigma=sigma, delta1=e[0], delta2=e[1]
        )
        indices = (3, 5, 7)
    else:
        raise ValueError("jacobian needs --family eq325 or eq327")
    eps0 = np.array([params.get(n, 0.0) for n in names])
    res = focal.focal_jacobian(family, eps0, indices, K=args.order, integ_tol=args.tol)
    lines = [
        "focal-value jacobian",
        f"  family      {args.family}",
        f"  parameters  {', '.join(names)} at {eps0.tolist()}",
        f"  indices     {list(res.indices)}",
        f"  tol         {args.tol:g}",
        f"  rank        {res.rank}" + ("  (ill conditioned)" if res.ill_conditioned else ""),
        f"  singular values {np.array2string(res.singular_values, precision=6)}",
    ]
    rows = [["index"] + names]
    for i, k in enumerate(res.indices):
        vals = res.matrix[i, :]
        lines.append(f"  d nu_{k} / d({', '.join(names)}) = {np.array2string(vals, precision=9)}")
        rows.append([k] + vals.tolist())
    doc = {
        "command": "jacobian",
        "family": args.family,
        "parameters": names,
        "point": eps0.tolist(),
        "indices": list(res.indices),
        "tol": args.tol,
        "matrix": res.matrix.tolist(),
        "singular_values": res.singular_values.tolist(),
        "rank": res.rank,
        "ill_conditioned": res.ill_conditioned,
    }
    _emit(args, lines, doc, rows)
    return EXIT_OK


# -- survey -----------------------------------------------------------------------


def cmd_survey(args) -> int:
    pairs = [tuple(int(v) for v in pq.split(":")) for pq in args.weights.split(",")]
    lines = [f"parity survey, seed {args.seed}, {args.samples} samples per weight pair"]
    rows = [["p", "q", "expected_parity", "samples", "skipped", "unresolved", "parity_ok"]]
    doc = {"command": "survey", "seed": args.seed, "tol": args.tol, "results": []}
    all_ok = True
    for p, q in pairs:
        res = focal.parity_survey(
            p, q, n_samples=args.samples, seed=args.seed, integ_tol=args.tol
        )
        all_ok = all_ok and res.parity_ok
        lines.append(
            f"  ({p}:{q}) expected {res.expected_parity} indices: "
            f"{res.n_samples} sampled, {res.n_skipped} skipped, "
            f"{res.n_unresolved} unresolved, counts {dict(sorted(res.first_index_counts.items()))}, "
            f"parity_ok={res.parity_ok} (tol {args.tol:g})"
        )
        rows.append(
            [p, q, res.expected_parity, res.n_samples, res.n_skipped, res.n_unresolved, res.parity_ok]
        )
        doc["results"].append(
            {
                "p": p,
                "q": q,
                "expected_parity": res.expected_parity,
                "n_samples": res.n_samples,
                "n_skipped": res.n_skipped,
                "n_unresolved": res.n_unresolved,
                "first_index_counts": {str(k): v for k, v in res.first_index_counts.items()},
                "parity_ok": res.parity_ok,
            }
        )
    _emit(args, lines, doc, rows)
    return EXIT_OK if all_ok else EXIT_REPRODUCTION


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhfocus",
        description="focal values, centers, and limit cycles of weighted-homogeneous planar fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol_default=1e-12):
        p.add_argument("--system", help="system description file")
        p.add_argument("--family", choices=["eq325", "eq327"], help="named parameter family")
        p.add_argument("--params", help="family parameters, k=v,...")
        p.add_argument("--tol", type=float, default=tol_default, help="integrator tolerance")
        p.add_argument("--out", help="write report text here, plus .json and .csv siblings")

    p = sub.add_parser("analyze", help="focal values and classification")
    common(p)
    p.add_argument("--order", type=int, default=None, help="jet truncation order K")
    p.add_argument("--zero-tol", type=float, default=1e-9, help="focal-value zero threshold")
    p.add_argument("--precision", choices=["double", "extended"], default="double")
    p.add_argument("--rq-table", help="write the angular R/Q component table to this CSV")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("cycles", help="displacement scan and cycle isolation")
    common(p, tol_default=1e-13)
    p.add_argument("--h-min", type=float, required=True)
    p.add_argument("--h-max", type=float, required=True)
    p.add_argument("--grid", type=int, default=48, help="scan grid size")
    p.add_argument("--noise-floor", type=float, default=None)
    p.set_defaults(fn=cmd_cycles)

    p = sub.add_parser("verify", help="case-study claim table")
    common(p)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("quad", help="reference integrals under both schemes")
    common(p)
    p.set_defaults(fn=cmd_quad)

    p = sub.add_parser("jacobian", help="focal-value jacobian of a family")
    common(p)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(fn=cmd_jacobian)

    p = sub.add_parser("survey", help="parity statistics over random fields")
    common(p)
    p.add_argument("--weights", default="1:1,1:2,2:3,3:4", help="comma list of p:q pairs")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(fn=cmd_survey)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ReproductionError as exc:
        sys.stderr.write(f"reproduction failure: {exc}\n")
        return EXIT_REPRODUCTION
    except (QhfocusError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
