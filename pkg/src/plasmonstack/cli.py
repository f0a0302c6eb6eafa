"""Command-line surface: mode tables, polynomial dumps, field grids, the
disk-degeneration sweep, and the independent discretization cross-checks.

Exit codes: 0 success, 1 configuration error, 2 numerical cross-validation
failure (including fixture drift under --check), 3 resonance-singular solve
requested without a loss parameter.

The only environment variable honored is PLASMONSTACK_THREADS, which caps
the BLAS/OpenMP thread pools; it must be read before numpy loads, so all
numerical imports happen inside main().
"""

from __future__ import annotations

import argparse
import json
import os
import sys


def _apply_thread_env():
    threads = os.environ.get("PLASMONSTACK_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plasmonstack",
        description="Plasmon modes, resonant materials, and perturbed fields "
        "for multi-layer confocal-ellipse structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, presets):
        p.add_argument("--preset", help="named reference configuration: " + ", ".join(presets))
        p.add_argument("--config", help="JSON config file (overrides preset values)")
        p.add_argument("--out", default="out", help="output directory (default: ./out)")
        p.add_argument("--check", action="store_true",
                       help="recompute the preset and diff against its committed fixture")

    p = sub.add_parser("modes", help="compute cross-validated plasmon modes")
    common(p, ["table1", "table2"])
    p.add_argument("--layers", type=int, help="layer count for --xi-outer/--ratio stacks")
    p.add_argument("--xi", type=float, nargs="+", help="explicit decreasing elliptic radii")
    p.add_argument("--semimajor", type=float, nargs="+", help="semi-major axes (converted via R)")
    p.add_argument("--R", type=float, default=1.0, help="focal half-distance (default 1)")
    p.add_argument("--n", type=int, help="Fourier order")
    p.add_argument("--sigma0", type=float, help="background conductivity (default 1)")
    p.add_argument("--table", action="store_true",
                   help="print the 4-decimal table-reproduction view to stdout")
    _tol_flags(p)

    p = sub.add_parser("charpoly", help="dump polynomial coefficients and span values")
    common(p, ["fig5", "fig8"])
    p.add_argument("--xi", type=float, nargs="+")
    p.add_argument("--semimajor", type=float, nargs="+")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--n", type=int)
    p.add_argument("--span-points", type=int)

    p = sub.add_parser("field", help="sample perturbed potential or gradient grids")
    common(p, ["fig10", "fig11-analog", "fig12"])
    p.add_argument("--mode-rank", type=int, nargs="+", help="restrict to these ranks")
    p.add_argument("--parity", choices=["even", "odd", "both"], help="restrict parity")
    p.add_argument("--gradient", action="store_true", help="emit |grad(u-H)| instead of u-H")
    p.add_argument("--delta", type=float, help="loss parameter added to the resonant contrast")
    p.add_argument("--n", type=int)
    _tol_flags(p)

    p = sub.add_parser("sweep-disk", help="even/odd splitting gap vs stack scale")
    common(p, ["fig9"])
    p.add_argument("--layers", type=int)
    p.add_argument("--ratio", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--L", type=float, nargs="+", help="scale values (xi_1 = L * layers)")
    _tol_flags(p)

    p = sub.add_parser("bie-validate", help="independent discretization cross-checks")
    common(p, ["bie-circle", "bie-confocal"])
    p.add_argument("--nodes", type=int, nargs="+", help="node counts for the refinement study")

    p = sub.add_parser("make-fixtures", help="(maintainer) regenerate committed preset fixtures")
    p.add_argument("names", nargs="*", help="preset names (default: all)")
    return parser


def _tol_flags(p):
    p.add_argument("--tol-cross", type=float, help="route cross-validation tolerance")
    p.add_argument("--tol-imag", type=float, help="eigenvalue realness tolerance")
    p.add_argument("--tol-bound", type=float, help="spectral interval slack")


_DIRECT_FLAGS = {
    "modes": {"n": "n", "sigma0": "sigma0"},
    "charpoly": {"n": "n", "span_points": "span_points"},
    "field": {"n": "n", "delta": "delta", "mode_rank": "ranks"},
    "sweep-disk": {"layers": "layers", "ratio": "ratio", "n": "n", "L": "L"},
    "bie-validate": {"nodes": "nodes"},
}


def _merge_config(command, args, preset_cfg):
    """preset < --config file < explicit flags."""
    from .errors import ConfigError

    cfg = dict(preset_cfg or {})
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc

    geometry_flags = {}
    if getattr(args, "xi", None):
        geometry_flags = {"R": args.R, "xi": args.xi}
    elif getattr(args, "semimajor", None):
        geometry_flags = {"R": args.R, "semimajor": args.semimajor}
    if geometry_flags:
        cfg["geometry"] = geometry_flags
        layers = getattr(args, "layers", None)
        if command == "modes" and layers is not None:
            given = len(geometry_flags.get("xi") or geometry_flags.get("semimajor"))
            if layers != given:
                raise ConfigError(f"--layers {layers} contradicts the {given} radii given")

    for flag, key in _DIRECT_FLAGS.get(command, {}).items():
        value = getattr(args, flag, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "gradient", False):
        cfg["quantity"] = "gradient"
    parity = getattr(args, "parity", None)
    if parity:
        cfg["parities"] = ["even", "odd"] if parity == "both" else [parity]
    tol = {}
    for flag, key in (("tol_cross", "cross"), ("tol_imag", "imag"), ("tol_bound", "bound")):
        value = getattr(args, flag, None)
        if value is not None:
            tol[key] = value
    if tol:
        cfg["tolerances"] = dict(cfg.get("tolerances", {})) | tol
    return cfg


def _print_mode_table(payload):
    for parity, tag in (("even", "+"), ("odd", "-")):
        rows = payload[parity]
        print(f"f{tag}  (n={payload['n']})")
        print("lambda_" + tag + " : " + " ".join(f"{r['lambda']:8.4f}" for r in rows))
        print("sigma_1  : " + " ".join(f"{r['sigma1']:8.4f}" for r in rows))


def _write_outputs(command, cfg, result, out_dir, grids=None):
    from .output import write_csv, write_json

    os.makedirs(out_dir, exist_ok=True)
    tolerances = cfg.get("tolerances")
    if command == "modes":
        rows = []
        for parity in ("even", "odd"):
            for r in result[parity]:
                omega = r.get("omega")
                rows.append((parity, r["rank"], r["lambda"], r["sigma1"],
                             "" if omega is None else omega))
        write_csv(
            os.path.join(out_dir, "modes.csv"),
            ("parity", "rank", "lambda", "sigma1", "omega"),
            rows,
            cfg,
            tolerances,
        )
        write_json(os.path.join(out_dir, "modes.json"), result, cfg, tolerances)
    elif command == "charpoly":
        rows = []
        for name, key in (("+", "coeff_plus"), ("-", "coeff_minus")):
            for k, c in enumerate(result[key]):
                rows.append((name, k, c))
        write_csv(os.path.join(out_dir, "coefficients.csv"), ("sign", "k", "c_k"), rows, cfg)
        span_rows = list(
            zip(
                result["span"]["plus"]["lambda"],
                result["span"]["plus"]["value"],
                result["span"]["minus"]["value"],
            )
        )
        write_csv(
            os.path.join(out_dir, "span.csv"),
            ("lambda", "f_plus", "f_minus"),
            span_rows,
            cfg,
            extra={"span-max-abs-plus": result["span"]["plus"]["max_abs"],
                   "span-max-abs-minus": result["span"]["minus"]["max_abs"]},
        )
        write_json(os.path.join(out_dir, "charpoly.json"), result, cfg)
    elif command == "sweep-disk":
        write_csv(
            os.path.join(out_dir, "sweep.csv"),
            ("L", "gap"),
            list(zip(result["L"], result["gap"])),
            cfg,
            extra={"gap-norm": result["gap_norm"],
                   "log-gap-slope-vs-min-xi": result["log_gap_slope_vs_min_xi"]},
        )
        write_json(os.path.join(out_dir, "sweep.json"), result, cfg)
    elif command == "field":
        for meta, grid in grids or ():
            stem = f"field_{meta['parity']}_r{meta['rank']}"
            rows = []
            if grid.quantity == "potential":
                columns = ("x1", "x2", "re", "im")
                for i, x1 in enumerate(grid.x1):
                    for j, x2 in enumerate(grid.x2):
                        v = grid.values[i, j]
                        rows.append((x1, x2, v.real, v.imag))
            else:
                columns = ("x1", "x2", "gradmag")
                for i, x1 in enumerate(grid.x1):
                    for j, x2 in enumerate(grid.x2):
                        rows.append((x1, x2, grid.values[i, j]))
            write_csv(os.path.join(out_dir, stem + ".csv"), columns, rows, cfg, tolerances)
            sidecar = dict(meta)
            sidecar["interfaces"] = [
                {"x1": list(px), "x2": list(py)} for px, py in grid.interfaces
            ]
            write_json(os.path.join(out_dir, stem + ".json"), sidecar, cfg, tolerances)
        write_json(os.path.join(out_dir, "field_summary.json"), result, cfg, tolerances)
    elif command == "bie-validate":
        write_json(os.path.join(out_dir, "bie_report.json"), result, cfg)


def _run_command(command, cfg):
    from . import runconfig, runners

    cfg = runconfig.normalize(command, cfg)
    grids = None
    if command == "field":
        result, grids = runners.run_field(cfg)
    else:
        result = runners.run(command, cfg)
    return cfg, result, grids


def _fixture_path(name):
    return os.path.join(os.path.dirname(__file__), "fixtures", f"{name}.json")


def _check_fixture(preset_name, result):
    from .fixtures_io import compare_fixture, load_fixture

    fixture = load_fixture(_fixture_path(preset_name))
    return compare_fixture(fixture, result)


def _cmd_make_fixtures(args):
    from .fixtures_io import fixture_tolerances, save_fixture
    from .presets import PRESETS

    names = args.names or sorted(PRESETS)
    for name in names:
        preset = PRESETS[name]
        cfg, result, _ = _run_command(preset.command, dict(preset.config))
        save_fixture(_fixture_path(name), name, preset.command, result, fixture_tolerances(preset.command))
        print(f"wrote fixture {name}")
    return 0


def main(argv=None):
    _apply_thread_env()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # bad usage is a configuration error (exit 1); --help stays 0
        return exc.code if exc.code in (0, None) else 1

    from .errors import ConfigError, CrossValidationError, PlasmonstackError, ResonanceError
    from .presets import get_preset

    if args.command == "make-fixtures":
        return _cmd_make_fixtures(args)

    try:
        preset = get_preset(args.preset) if args.preset else None
        if preset is not None and preset.command != args.command:
            raise ConfigError(
                f"preset {preset.name!r} belongs to command {preset.command!r}, not {args.command!r}"
            )
        if preset is None and args.check:
            raise ConfigError("--check requires --preset")
        cfg = _merge_config(args.command, args, preset.config if preset else {})
        if not cfg:
            raise ConfigError("empty configuration: pass --preset, --config, or flags")
        cfg, result, grids = _run_command(args.command, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ResonanceError as exc:
        print(f"resonance-singular solve: {exc}", file=sys.stderr)
        return 3
    except CrossValidationError as exc:
        print(f"cross-validation failure: {exc}", file=sys.stderr)
        return 2
    except PlasmonstackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.check:
        mismatches = _check_fixture(preset.name, result)
        if mismatches:
            print(f"fixture drift for preset {preset.name!r}:", file=sys.stderr)
            for m in mismatches[:20]:
                print(f"  {m}", file=sys.stderr)
            return 2
        print(f"preset {preset.name!r} matches its fixture")
        return 0

    _write_outputs(args.command, cfg, result, args.out, grids)
    if args.command == "modes" and args.table:
        _print_mode_table(result)
    print(f"wrote {args.command} outputs to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
