"""Command-line front end.

Four subcommands:

* ``eval``     - evaluate a similarity solution on a grid, CSV/JSON to stdout
                 or a file;
* ``profile``  - write figure-style curve families (CSV per curve plus a
                 rendered PNG); presets ``fig1``, ``fig2``, ``fig3``, ``fig5``
                 reproduce the standard plots;
* ``verify``   - run the verification suite, emit the JSON report, exit
                 nonzero if any check fails;
* ``gel-sim``  - evolve the solvent-injection problem with the
                 finite-difference oracle and report convergence metrics.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
The environment variable ``SIMDIFF_TOL_SCALE`` (float, default 1) uniformly
relaxes verification tolerances for low-precision platforms.

Every CSV is deterministic for a given configuration: fixed header
``# family=..., p=..., D=..., t=...`` and ``abscissa,value`` rows at 17
significant digits (lossless for doubles).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import gel3d, oracle, plotting, similarity1d, verify
from .gel3d import GelParams
from .similarity1d import DiffusionParams, SolutionFamily

__all__ = ["main", "build_parser", "run_gel_experiment"]

_FAMILY_MAKERS = {
    "gaussian": similarity1d.gaussian_family,
    "dawson": similarity1d.dawson_family,
    "symmetric": similarity1d.symmetric_family,
    "antisymmetric": similarity1d.antisymmetric_family,
    "gel": similarity1d.gel_family,
}

# descriptive synonyms accepted on the command line
_FAMILY_ALIASES = {"classical": "gaussian", "exotic": "dawson"}

_DEFAULT_OUT = "simdiff_out"


# --------------------------------------------------------------------------
# small parsing / formatting helpers


def _parse_times(text: str) -> List[float]:
    try:
        times = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError("could not parse time list %r" % text)
    if not times or any(t <= 0.0 for t in times):
        raise ValueError("times must be a comma-separated list of positive reals")
    return times


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be min:max:n, got %r" % text)
    lo, hi = float(parts[0]), float(parts[1])
    n = int(parts[2])
    if not (lo < hi and n >= 2):
        raise ValueError("grid needs min < max and n >= 2")
    return np.linspace(lo, hi, n)


def _fmt(value: float) -> str:
    return "%.17g" % value


def _csv_text(
    family_label: str, p: float, d_coeff: float, t: float, xs, values
) -> str:
    lines = [
        "# family=%s, p=%s, D=%s, t=%s" % (family_label, _fmt(p), _fmt(d_coeff), _fmt(t))
    ]
    lines.extend("%s,%s" % (_fmt(x), _fmt(v)) for x, v in zip(xs, values))
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    with open(path, "w") as handle:
        handle.write(text)


def _family_from_args(args) -> SolutionFamily:
    label = _FAMILY_ALIASES.get(args.family, args.family)
    maker = _FAMILY_MAKERS[label]
    if label in ("gaussian", "dawson"):
        if float(args.p) != int(args.p):
            raise ValueError(
                "family %r requires an integer exponent, got p=%g" % (args.family, args.p)
            )
        return maker(int(args.p))
    return maker(args.p)


def _curve(family: SolutionFamily, params: DiffusionParams, grid, t: float):
    return [
        similarity1d.similarity_solution(family, params, float(x), t) for x in grid
    ]


# --------------------------------------------------------------------------
# eval


def _cmd_eval(args) -> int:
    family = _family_from_args(args)
    label = _FAMILY_ALIASES.get(args.family, args.family)
    params = DiffusionParams(d_coeff=args.d_coeff, amplitude=args.amplitude)
    grid = _parse_grid(args.grid)
    times = _parse_times(args.times)
    chunks = []
    curves = []
    for t in times:
        values = _curve(family, params, grid, t)
        curves.append(
            {
                "family": label,
                "p": family.p,
                "d_coeff": params.d_coeff,
                "time": t,
                "abscissa": [float(x) for x in grid],
                "values": [float(v) for v in values],
            }
        )
        chunks.append(_csv_text(label, family.p, params.d_coeff, t, grid, values))
    if args.format == "json":
        text = json.dumps({"schema": 1, "curves": curves}, indent=2) + "\n"
    else:
        text = "".join(chunks)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------------------
# profile

_PRESET_NAMES = ("fig1", "fig2", "fig3", "fig5")


def _preset_curves(name: str):
    """Curve plan for a preset: list of (tag, family_label, p, d_coeff, t, grid, values)."""
    plan = []
    if name in ("fig1", "fig3"):
        label = "gaussian" if name == "fig1" else "dawson"
        family = _FAMILY_MAKERS[label](0)
        params = DiffusionParams()
        grid = np.linspace(-40.0, 40.0, 321)
        for t in (1.0, 4.0, 9.0):
            plan.append(
                (
                    "t%g" % t,
                    label,
                    0,
                    params.d_coeff,
                    t,
                    grid,
                    _curve(family, params, grid, t),
                )
            )
    elif name == "fig2":
        params = DiffusionParams()
        grid = np.linspace(-10.0, 10.0, 401)
        for p in (0, 1, 2):
            family = similarity1d.dawson_family(p)
            plan.append(
                (
                    "p%d" % p,
                    "dawson",
                    p,
                    params.d_coeff,
                    1.0,
                    grid,
                    _curve(family, params, grid, 1.0),
                )
            )
    elif name == "fig5":
        gel = GelParams.scaled()
        amp = gel3d.matched_amplitude(gel)
        grid = np.linspace(0.25, 40.0, 160)
        for t in (1.0, 4.0, 9.0):
            values = [gel3d.displacement(gel, 1.0, float(r), t, amp) for r in grid]
            plan.append(("t%g" % t, "gel", 1.0, gel.d_coeff, t, grid, values))
    else:
        raise ValueError("unknown preset %r" % name)
    return plan


def _cmd_profile(args) -> int:
    if args.preset:
        if args.preset not in _PRESET_NAMES:
            raise ValueError(
                "invalid preset %r (choose from %s)" % (args.preset, ", ".join(_PRESET_NAMES))
            )
        stem = args.preset
        plan = _preset_curves(args.preset)
    else:
        if args.family is None:
            raise ValueError("profile needs --preset or --family/--p")
        family = _family_from_args(args)
        label = _FAMILY_ALIASES.get(args.family, args.family)
        params = DiffusionParams(d_coeff=args.d_coeff, amplitude=args.amplitude)
        grid = _parse_grid(args.grid)
        stem = "profile_%s%g" % (label, family.p)
        plan = [
            (
                "t%g" % t,
                label,
                family.p,
                params.d_coeff,
                t,
                grid,
                _curve(family, params, grid, t),
            )
            for t in _parse_times(args.times)
        ]
    out_dir = args.out or _DEFAULT_OUT
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if args.format == "json":
        curves = [
            {
                "tag": tag,
                "family": label,
                "p": p,
                "d_coeff": d_coeff,
                "time": t,
                "abscissa": [float(x) for x in grid],
                "values": [float(v) for v in values],
            }
            for tag, label, p, d_coeff, t, grid, values in plan
        ]
        path = os.path.join(out_dir, "%s.json" % stem)
        _write(path, json.dumps({"schema": 1, "curves": curves}, indent=2) + "\n")
        written.append(path)
    else:
        for tag, label, p, d_coeff, t, grid, values in plan:
            path = os.path.join(out_dir, "%s_%s.csv" % (stem, tag))
            _write(path, _csv_text(label, p, d_coeff, t, grid, values))
            written.append(path)
    png = os.path.join(out_dir, "%s.png" % stem)
    plotting.render_curves(
        png,
        [("%s" % tag, grid, values) for tag, _, _, _, _, grid, values in plan],
        xlabel="x",
        ylabel="value",
        title=stem,
    )
    written.append(png)
    for path in written:
        print(path)
    return 0


# --------------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    tol_scale = float(os.environ.get("SIMDIFF_TOL_SCALE", "1"))
    similarity1d.set_perturbation(args.perturb)
    try:
        records = verify.run_checks(only=args.only, tol_scale=tol_scale)
    finally:
        similarity1d.set_perturbation(0.0)
    if not records:
        raise ValueError("no verification checks match %r" % args.only)
    report = verify.build_report(records, tol_scale=tol_scale)
    text = json.dumps(report, indent=2) + "\n"
    for rec in records:
        print(
            "%s %-28s max_residual=%.3e tolerance=%.3e"
            % ("PASS" if rec.passed else "FAIL", rec.name, rec.max_residual, rec.tolerance),
            file=sys.stderr,
        )
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0 if report["all_pass"] else 1


# --------------------------------------------------------------------------
# gel-sim


def run_gel_experiment(
    params: GelParams,
    r_max: float = 100.0,
    n_cells: int = 4000,
    times: Sequence[float] = (1.0, 4.0, 9.0, 16.0, 25.0),
):
    """Evolve the injection initial condition and score it against the
    analytic relaxed state.

    Returns ``(summary, snapshots)`` where ``snapshots`` is a list of
    ``(time, field, density_interior)`` and the summary carries, per snapshot,
    the volume-weighted relative L2 distance of the evolved density to the
    analytic Gaussian, the conserved-solvent ratio, and the far-field metric
    ``r^2 U`` at r = 20.
    """
    times = sorted(float(t) for t in times)
    if times[0] <= 0.0:
        raise ValueError("snapshot times must be positive")
    radii = np.linspace(0.0, r_max, n_cells + 1)[1:]
    dr = float(radii[0])
    if params.core_radius < 5.0 * dr:
        raise ValueError(
            "core radius %g under-resolved: need at least 5 grid spacings (dr=%g)"
            % (params.core_radius, dr)
        )
    d_coeff = params.d_coeff
    dt = dr * dr / d_coeff
    outer_value = params.strain * params.core_volume / (4.0 * math.pi * r_max * r_max)
    field = gel3d.injection_ic(params, radii)
    eps_v0 = params.strain * params.core_volume

    snapshots = []
    rows = []
    t_now = 0.0
    r20 = int(np.argmin(np.abs(radii - 20.0)))
    for t_next in times:
        spec = oracle.EvolveSpec(d_coeff, t_now, t_next, dt)
        field = oracle.evolve_radial(field, spec, lambda rb, tb: outer_value)
        t_now = t_next
        u = field.values
        r_in = radii[1:-1]
        density = -((u[2:] - u[:-2]) / (2.0 * dr) + 2.0 * u[1:-1] / r_in)
        exact = np.array(
            [gel3d.density_deviation(params, float(r), t_next) for r in r_in]
        )
        weight = 4.0 * math.pi * r_in * r_in
        l2 = math.sqrt(
            np.trapezoid((density - exact) ** 2 * weight, r_in)
            / np.trapezoid(exact**2 * weight, r_in)
        )
        volume_ratio = float(np.trapezoid(-density * weight, r_in)) / eps_v0
        tail_metric = float(u[r20] * radii[r20] ** 2)
        snapshots.append((t_next, field, density))
        rows.append(
            {
                "time": t_next,
                "l2_rel_distance": l2,
                "solvent_volume_ratio": volume_ratio,
                "tail_r2u_at_r20": tail_metric,
            }
        )

    l2_values = [row["l2_rel_distance"] for row in rows]
    window = [
        row["tail_r2u_at_r20"] for row in rows if 9.0 <= d_coeff * row["time"] <= 25.0
    ]
    tail_reference = eps_v0 / (4.0 * math.pi)
    tail_variation = (
        (max(window) - min(window)) / tail_reference if len(window) >= 2 else 0.0
    )
    late = [
        row
        for row in rows
        if math.sqrt(d_coeff * row["time"]) >= 3.0 * params.core_radius
    ]
    summary = {
        "schema": 1,
        "params": {
            "strain": params.strain,
            "core_radius": params.core_radius,
            "d_coeff": d_coeff,
            "r_max": r_max,
            "n_cells": n_cells,
        },
        "snapshots": rows,
        "l2_monotone_decreasing": all(
            b["l2_rel_distance"] < a["l2_rel_distance"]
            for a, b in zip(rows, rows[1:])
        ),
        "l2_late_max": max((row["l2_rel_distance"] for row in late), default=None),
        "volume_worst_error": max(
            abs(row["solvent_volume_ratio"] - 1.0) for row in rows
        ),
        "tail_reference_r2u": tail_reference,
        "tail_variation": tail_variation,
    }
    return summary, snapshots


def _cmd_gel_sim(args) -> int:
    params = GelParams.scaled(
        d_coeff=args.d_coeff, strain=args.strain, core_radius=args.core_radius
    )
    times = _parse_times(args.times)
    summary, snapshots = run_gel_experiment(
        params, r_max=args.r_max, n_cells=args.n_cells, times=times
    )
    out_dir = args.out or _DEFAULT_OUT
    os.makedirs(out_dir, exist_ok=True)
    written = []
    disp_curves = []
    dens_curves = []
    for t, field, density in snapshots:
        path = os.path.join(out_dir, "gel_displacement_t%g.csv" % t)
        _write(
            path,
            _csv_text("gel", 1.0, params.d_coeff, t, field.radii, field.values),
        )
        written.append(path)
        r_in = field.radii[1:-1]
        path = os.path.join(out_dir, "gel_density_t%g.csv" % t)
        _write(path, _csv_text("gel-density", 1.0, params.d_coeff, t, r_in, density))
        written.append(path)
        show = field.radii <= 12.0
        disp_curves.append(("Dt=%g" % (params.d_coeff * t), field.radii[show], field.values[show]))
        show_in = r_in <= 12.0
        dens_curves.append(("Dt=%g" % (params.d_coeff * t), r_in[show_in], density[show_in]))
        dens_curves.append(
            (
                "~exact Dt=%g" % (params.d_coeff * t),
                r_in[show_in],
                [gel3d.density_deviation(params, float(r), t) for r in r_in[show_in]],
            )
        )
    summary_path = os.path.join(out_dir, "gel_summary.json")
    _write(summary_path, json.dumps(summary, indent=2) + "\n")
    written.append(summary_path)
    png = os.path.join(out_dir, "gel_sim.png")
    plotting.render_gel_panels(png, disp_curves, dens_curves, title="solvent injection")
    written.append(png)
    for path in written:
        print(path)
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simdiff",
        description="similarity solutions of the diffusion equation, their "
        "radial gel counterpart, and a finite-difference verification oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_options(p, default_grid):
        p.add_argument(
            "--family",
            choices=sorted(_FAMILY_MAKERS) + sorted(_FAMILY_ALIASES),
            default=None,
            help="scaling-function family (classical and exotic are synonyms "
            "for gaussian and dawson)",
        )
        p.add_argument("--p", type=float, default=0.0, help="family exponent")
        p.add_argument("--times", default="1", help="comma-separated times, e.g. 1,4,9")
        p.add_argument(
            "--grid",
            default=default_grid,
            help="abscissa grid min:max:n (use --grid=-40:40:321 for negative min)",
        )
        p.add_argument("--d-coeff", type=float, default=1.0, help="diffusion constant")
        p.add_argument("--amplitude", type=float, default=1.0, help="solution amplitude")

    p_eval = sub.add_parser("eval", help="evaluate a similarity solution on a grid")
    add_family_options(p_eval, "-10:10:81")
    p_eval.add_argument("--out", default=None, help="output file (default stdout)")
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.set_defaults(func=_cmd_eval)
    p_eval.set_defaults(family="gaussian")

    p_prof = sub.add_parser(
        "profile", help="write curve-family CSVs plus a rendered PNG"
    )
    p_prof.add_argument("--preset", default=None, help="one of fig1, fig2, fig3, fig5")
    add_family_options(p_prof, "-40:40:321")
    p_prof.add_argument("--out", default=None, help="output directory")
    p_prof.add_argument("--format", choices=("csv", "json"), default="csv")
    p_prof.set_defaults(func=_cmd_profile)

    p_ver = sub.add_parser("verify", help="run the verification suite")
    p_ver.add_argument("--only", default=None, help="run only checks matching PATTERN")
    p_ver.add_argument(
        "--perturb",
        type=float,
        default=0.0,
        help="bias the Dawson base profile (sensitivity test hook)",
    )
    p_ver.add_argument("--out", default=None, help="report file (default stdout)")
    p_ver.add_argument("--format", choices=("json",), default="json")
    p_ver.set_defaults(func=_cmd_verify)

    p_gel = sub.add_parser(
        "gel-sim", help="evolve the solvent-injection experiment end to end"
    )
    p_gel.add_argument(
        "--strain", type=float, default=0.01, help="relative swelling of the core"
    )
    p_gel.add_argument(
        "--core-radius", type=float, default=1.0, help="radius of the swollen core"
    )
    p_gel.add_argument(
        "--d-coeff", type=float, default=1.0, help="collective diffusion constant"
    )
    p_gel.add_argument(
        "--r-max", type=float, default=100.0, help="outer radius of the domain"
    )
    p_gel.add_argument(
        "--n-cells", type=int, default=4000, help="number of radial cells"
    )
    p_gel.add_argument(
        "--times", default="1,4,9,16,25", help="comma-separated snapshot times"
    )
    p_gel.add_argument("--out", default=None, help="output directory")
    p_gel.add_argument("--format", choices=("csv", "json"), default="csv")
    p_gel.set_defaults(func=_cmd_gel_sim)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError) as exc:
        print("simdiff: error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("simdiff: i/o error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
