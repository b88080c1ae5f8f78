"""Command-line front end: spectrum tables, potential and eigenfunction
data, figure reproduction, and the verification suites.

Exit codes: 0 success, 1 verification/numeric failure, 2 usage or domain
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .legendre import assoc_legendre, theta_normalization
from .model import QuantumNumbers, analytic_eigenfunction, analytic_energy, polar_potential, quantum_lattice
from .output import utc_timestamp, write_csv, write_json
from .solver import Grid, solve_polar
from .verify import (
    VerificationReport,
    analytic_variance,
    verify_confinement,
    verify_degeneracy,
    verify_orthonormality,
    verify_residual,
    verify_spectrum,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_POTENTIAL_M = [0, 1, 2, 5, 10, 30]
DEFAULT_PANEL_M = [0, 10, 30]
# m = 0 is left out of the default numeric-spectrum check: the critical
# -1/(4 theta^2) boundary coupling makes the finite-difference energies
# converge only logarithmically there (run it explicitly with --m 0).
DEFAULT_SPECTRUM_M = [1, 2, 5, 10, 30]
FORMATS = ("csv", "json", "svg")


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _m_list(text: str) -> list[int]:
    tokens = [tok for tok in text.split(",") if tok.strip()]
    if not tokens:
        raise argparse.ArgumentTypeError("expected a comma-separated list of integers")
    return [_nonneg_int(tok.strip()) for tok in tokens]


def _format_list(text: str) -> list[str]:
    formats = [tok.strip() for tok in text.split(",") if tok.strip()]
    for fmt in formats:
        if fmt not in FORMATS:
            raise argparse.ArgumentTypeError(f"unknown format {fmt!r}; choose from {','.join(FORMATS)}")
    if not formats:
        raise argparse.ArgumentTypeError("expected at least one format")
    return formats


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polar-well",
        description="Angular confinement toolkit: exact spectrum, independent "
        "finite-difference solver, and figure/data reproduction.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")
    common.add_argument("--overwrite", action="store_true", help="replace existing output files")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="tabulate level energies")
    p.add_argument("--m", type=_m_list, default=None, help="comma list of m values")
    p.add_argument("--n-max", type=_nonneg_int, default=2, help="highest level per m (default 2)")
    p.add_argument("--numeric", action="store_true", help="also solve numerically and report errors")
    p.add_argument("--grid", type=_positive_int, default=4000, help="interior grid size (default 4000)")
    p.add_argument("--richardson", action="store_true", help="extrapolate numeric energies from grid/2 and grid")
    p.add_argument("--format", type=_format_list, default=["csv"], help="csv,json")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("potential", parents=[common], help="sample the confining potential family")
    p.add_argument("--m", type=_m_list, default=None, help="comma list of m values")
    p.add_argument("--samples", type=_positive_int, default=721, help="interior sample count (default 721)")
    p.add_argument("--v-cap", type=float, default=100.0, help="vertical clip for the plot (default 100)")
    p.add_argument("--format", type=_format_list, default=["csv", "svg"], help="csv,svg")
    p.set_defaults(handler=cmd_potential)

    p = sub.add_parser("eigenfunction", parents=[common], help="sample exact eigenfunctions")
    p.add_argument("--m", type=_m_list, default=None, help="comma list of m values (default 0)")
    p.add_argument("--n", type=_nonneg_int, default=0, help="level index (default 0)")
    p.add_argument("--samples", type=_positive_int, default=721, help="interior sample count (default 721)")
    p.add_argument("--squared", action="store_true", help="polar plot of the probability density instead of |amplitude|")
    p.add_argument("--format", type=_format_list, default=["csv", "svg"], help="csv,svg")
    p.set_defaults(handler=cmd_eigenfunction)

    p = sub.add_parser("figure", parents=[common], help="reproduce the standard figures 1-4")
    p.add_argument("figure_id", type=int, choices=[1, 2, 3, 4], help="which figure to produce")
    p.add_argument("--m", type=_m_list, default=None, help="override the default m set")
    p.add_argument("--l-max", type=_nonneg_int, default=6, help="lattice extent for figure 2 (default 6)")
    p.add_argument("--samples", type=_positive_int, default=721, help="interior sample count (default 721)")
    p.add_argument("--v-cap", type=float, default=100.0, help="vertical clip for potential panels (default 100)")
    p.add_argument("--squared", action="store_true", help="polar panels show the probability density")
    p.add_argument("--format", type=_format_list, default=["csv", "svg"], help="csv,svg")
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument(
        "--suite",
        choices=["spectrum", "residual", "orthonormality", "confinement", "degeneracy", "all"],
        default="all",
        help="which suite to run (default all)",
    )
    p.add_argument("--m", type=_m_list, default=None, help="override the suite's m values")
    p.add_argument("--n", type=_nonneg_int, default=None, help="level index for residual/confinement")
    p.add_argument("--n-max", type=_nonneg_int, default=None, help="highest level for spectrum/orthonormality")
    p.add_argument("--grid", type=_positive_int, default=None, help="override the suite's grid size")
    p.add_argument("--l-max", type=_nonneg_int, default=None, help="lattice extent for degeneracy (default 30)")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    p.set_defaults(handler=cmd_verify)

    return parser


def _sample_nodes(samples: int) -> np.ndarray:
    return Grid(samples).nodes


def _theta_magnitude(qn: QuantumNumbers, theta: np.ndarray) -> np.ndarray:
    """|N P_l^m(cos theta)|: the angular amplitude magnitude."""
    norm = theta_normalization(qn.l, qn.m)
    return norm * np.abs(np.asarray(assoc_legendre(qn.l, qn.m, np.cos(theta))))


def cmd_spectrum(args) -> int:
    ms = args.m if args.m is not None else DEFAULT_POTENTIAL_M
    header = ["m", "n", "l", "analytic_energy"]
    if args.numeric:
        header += ["numeric_energy", "abs_error", "rel_error"]
    rows = []
    for m in ms:
        numeric = None
        if args.numeric:
            numeric = [
                sol.energy
                for sol in solve_polar(m, args.n_max + 1, args.grid, extrapolate=args.richardson)
            ]
        for n in range(args.n_max + 1):
            qn = QuantumNumbers(m, n)
            row = [m, n, qn.l, analytic_energy(qn)]
            if numeric is not None:
                exact = analytic_energy(qn)
                err = abs(numeric[n] - exact)
                row += [numeric[n], err, err / exact]
            rows.append(row)
    written = []
    if "csv" in args.format:
        path = args.out / "spectrum.csv"
        write_csv(path, header, rows, overwrite=args.overwrite)
        written.append(path)
    if "json" in args.format:
        payload = {
            "config": {
                "m_values": ms,
                "n_max": args.n_max,
                "numeric": args.numeric,
                "grid_size": args.grid if args.numeric else None,
                "richardson": args.richardson,
            },
            "rows": [dict(zip(header, row)) for row in rows],
        }
        path = args.out / "spectrum.json"
        write_json(path, payload, overwrite=args.overwrite)
        written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_potential(args) -> int:
    ms = args.m if args.m is not None else DEFAULT_POTENTIAL_M
    theta = _sample_nodes(args.samples)
    curves = {m: np.asarray(polar_potential(m).evaluator(theta)) for m in ms}
    written = []
    if "csv" in args.format:
        for m in ms:
            path = args.out / f"potential_m{m}.csv"
            write_csv(path, ["theta", "V"], zip(theta, curves[m]), overwrite=args.overwrite)
            written.append(path)
    if "svg" in args.format:
        from .figures import potential_figure, save_svg

        path = args.out / "potential.svg"
        from .output import prepare_target

        prepare_target(path, args.overwrite)
        save_svg(potential_figure(theta, curves, args.v_cap), path)
        written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_eigenfunction(args) -> int:
    ms = args.m if args.m is not None else [0]
    theta = _sample_nodes(args.samples)
    written = []
    for m in ms:
        qn = QuantumNumbers(m, args.n)
        y = np.asarray(analytic_eigenfunction(qn).wavefunction(theta))
        magnitude = _theta_magnitude(qn, theta)
        stem = f"eigenfunction_m{m}_n{args.n}"
        if "csv" in args.format:
            path = args.out / f"{stem}.csv"
            write_csv(path, ["theta", "y", "theta_abs"], zip(theta, y, magnitude),
                      overwrite=args.overwrite)
            written.append(path)
        if "svg" in args.format:
            from .figures import polar_magnitude_figure, save_svg, state_line_figure
            from .output import prepare_target

            path = args.out / f"{stem}_line.svg"
            prepare_target(path, args.overwrite)
            save_svg(state_line_figure(theta, {f"m = {m}, n = {args.n}": y},
                                       "eigenfunction (unit-weight form)"), path)
            written.append(path)
            path = args.out / f"{stem}_polar.svg"
            prepare_target(path, args.overwrite)
            radial = magnitude**2 if args.squared else magnitude
            title = "probability density" if args.squared else "angular amplitude"
            save_svg(polar_magnitude_figure(theta, radial, f"{title}, m = {m}, n = {args.n}"), path)
            written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_figure(args) -> int:
    from .figures import (
        confinement_grid_figure,
        lattice_figure,
        potential_figure,
        save_svg,
        state_line_figure,
    )
    from .output import prepare_target

    theta = _sample_nodes(args.samples)
    written = []

    def emit_csv(name: str, header, rows) -> None:
        path = args.out / name
        write_csv(path, header, rows, overwrite=args.overwrite)
        written.append(path)

    def emit_svg(name: str, fig) -> None:
        path = args.out / name
        prepare_target(path, args.overwrite)
        save_svg(fig, path)
        written.append(path)

    if args.figure_id == 1:
        ms = args.m if args.m is not None else DEFAULT_POTENTIAL_M
        curves = {m: np.asarray(polar_potential(m).evaluator(theta)) for m in ms}
        if "csv" in args.format:
            header = ["theta"] + [f"V_m{m}" for m in ms]
            emit_csv("figure1.csv", header, zip(theta, *[curves[m] for m in ms]))
        if "svg" in args.format:
            emit_svg("figure1.svg", potential_figure(theta, curves, args.v_cap))
    elif args.figure_id == 2:
        lattice = quantum_lattice(args.l_max)
        points = [(qn.m, qn.l) for qn in lattice]
        if "csv" in args.format:
            emit_csv("figure2.csv", ["m", "n", "l"], [(qn.m, qn.n, qn.l) for qn in lattice])
        if "svg" in args.format:
            emit_svg("figure2.svg", lattice_figure(points, args.l_max))
    elif args.figure_id == 3:
        ms = args.m if args.m is not None else DEFAULT_PANEL_M
        panels = []
        for m in ms:
            qn = QuantumNumbers(m, 0)
            panels.append(
                {
                    "m": m,
                    "potential": np.asarray(polar_potential(m).evaluator(theta)),
                    "ground": np.asarray(analytic_eigenfunction(qn).wavefunction(theta)),
                    "magnitude": _theta_magnitude(qn, theta),
                }
            )
        if "csv" in args.format:
            header = ["theta"]
            columns = [theta]
            for panel in panels:
                m = panel["m"]
                header += [f"V_m{m}", f"y_m{m}", f"theta_abs_m{m}"]
                columns += [panel["potential"], panel["ground"], panel["magnitude"]]
            emit_csv("figure3.csv", header, zip(*columns))
        if "svg" in args.format:
            rendered = [
                dict(panel, magnitude=panel["magnitude"] ** 2) if args.squared else panel
                for panel in panels
            ]
            emit_svg("figure3.svg", confinement_grid_figure(theta, rendered, args.v_cap))
        variances = [analytic_variance(QuantumNumbers(m, 0)) for m in ms]
        meta = {
            "m_values": ms,
            "level": 0,
            "ground_state_variances": variances,
            "squeezing_monotone": all(b < a for a, b in zip(variances, variances[1:])),
            "samples": args.samples,
        }
        path = args.out / "figure3_meta.json"
        write_json(path, meta, overwrite=args.overwrite)
        written.append(path)
    else:
        ms = args.m if args.m is not None else DEFAULT_PANEL_M
        curves = {
            f"m = {m}": np.asarray(analytic_eigenfunction(QuantumNumbers(m, 1)).wavefunction(theta))
            for m in ms
        }
        if "csv" in args.format:
            header = ["theta"] + [f"y_m{m}" for m in ms]
            emit_csv("figure4.csv", header, zip(theta, *curves.values()))
        if "svg" in args.format:
            emit_svg("figure4.svg", state_line_figure(theta, curves, "first excited states (n = 1)"))
    for path in written:
        print(path)
    return EXIT_OK


def _prefixed(report: VerificationReport, prefix: str) -> list:
    return [dataclasses.replace(case, case_id=f"{prefix}{case.case_id}") for case in report.cases]


def _suite_spectrum(args) -> VerificationReport:
    ms = args.m if args.m is not None else DEFAULT_SPECTRUM_M
    n_max = args.n_max if args.n_max is not None else 2
    grid = args.grid if args.grid is not None else 8000
    return verify_spectrum(ms, n_max, grid)


def _suite_residual(args) -> VerificationReport:
    grid = args.grid if args.grid is not None else 4000
    if args.m is not None:
        pairs = [(m, args.n if args.n is not None else 0) for m in args.m]
    else:
        pairs = [(0, 0), (2, 1)]
    cases = []
    configs = []
    for m, n in pairs:
        report = verify_residual(QuantumNumbers(m, n), grid)
        cases.extend(_prefixed(report, f"m{m}_n{n}_"))
        configs.append(report.config)
    return VerificationReport("residual", {"runs": configs}, cases)


def _suite_orthonormality(args) -> VerificationReport:
    grid = args.grid if args.grid is not None else 4000
    n_max = args.n_max if args.n_max is not None else 4
    ms = args.m if args.m is not None else [0, 1, 2]
    cases = []
    for m in ms:
        report = verify_orthonormality(m, n_max, grid)
        cases.extend(_prefixed(report, f"m{m}_"))
    config = {"m_values": ms, "n_max": n_max, "grid_size": grid}
    return VerificationReport("orthonormality", config, cases)


def _suite_confinement(args) -> VerificationReport:
    grid = args.grid if args.grid is not None else 4000
    if args.m is not None or args.n is not None:
        chains = [(args.m if args.m is not None else DEFAULT_POTENTIAL_M,
                   args.n if args.n is not None else 0)]
    else:
        chains = [(DEFAULT_POTENTIAL_M, 0), (DEFAULT_PANEL_M, 1)]
    cases = []
    configs = []
    for ms, n in chains:
        report = verify_confinement(ms, n, grid)
        cases.extend(_prefixed(report, f"n{n}:"))
        configs.append(report.config)
    return VerificationReport("confinement", {"chains": configs}, cases)


def _suite_degeneracy(args) -> VerificationReport:
    l_max = args.l_max if args.l_max is not None else 30
    return verify_degeneracy(l_max)


_SUITES = {
    "spectrum": _suite_spectrum,
    "residual": _suite_residual,
    "orthonormality": _suite_orthonormality,
    "confinement": _suite_confinement,
    "degeneracy": _suite_degeneracy,
}


def _print_table(report: VerificationReport) -> None:
    print(f"suite: {report.suite}")
    print(f"{'case':<48} {'expected':>13} {'observed':>13} {'abs_err':>10} {'tol':>9}  status")
    for case in report.cases:
        observed = "n/a" if case.observed is None else f"{case.observed:.6g}"
        abs_err = "n/a" if case.abs_error is None else f"{case.abs_error:.3g}"
        status = "PASS" if case.passed else "FAIL"
        print(
            f"{case.case_id:<48} {case.expected:>13.6g} {observed:>13} {abs_err:>10} "
            f"{case.tolerance:>9.3g}  {status}"
        )
    verdict = "PASS" if report.passed else "FAIL"
    print(f"result: {verdict} ({len(report.cases)} cases)")


def cmd_verify(args) -> int:
    if args.suite == "all":
        cases = []
        config = {}
        for name, builder in _SUITES.items():
            report = builder(args)
            cases.extend(_prefixed(report, f"{name}:"))
            config[name] = report.config
        report = VerificationReport("all", config, cases)
    else:
        report = _SUITES[args.suite](args)
    payload = report.to_dict(utc_timestamp())
    path = args.out / f"verify_{report.suite}.json"
    write_json(path, payload, overwrite=args.overwrite)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        _print_table(report)
    print(path)
    return EXIT_OK if report.passed else EXIT_FAILURE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
