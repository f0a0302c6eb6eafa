"""Command implementations shared by the CLI and the fixture machinery.

Each runner takes a normalized config (see :mod:`plasmonstack.runconfig`)
and returns a JSON-friendly payload; the field runner additionally returns
the sampled grids for CSV emission.  Payloads double as fixture content,
so they contain only reproducible numbers.
"""

from __future__ import annotations

import numpy as np

from . import bie as bie_mod
from . import charpoly as cp
from . import field as field_mod
from . import spectrum
from .errors import ConfigError
from .geometry import LayerStack, cartesian_to_elliptic
from .materials import DrudeParams, resonant_frequency
from .npcore import EVEN, ODD


def _stack(cfg):
    return LayerStack(R=cfg["geometry"]["R"], xi=tuple(cfg["geometry"]["xi"]))


def run_modes(cfg):
    stack = _stack(cfg)
    tol = cfg["tolerances"]
    ms = spectrum.modes(
        stack,
        cfg["n"],
        sigma0=cfg["sigma0"],
        cross_tol=tol["cross"],
        imag_tol=tol["imag"],
        bound_slack=tol["bound"],
    )
    drude = None
    if "drude" in cfg:
        d = cfg["drude"]
        drude = DrudeParams(sigma_prime=d["sigma_prime"], omega_p=d["omega_p"], tau_damp=d["tau"])
    payload = {"n": cfg["n"], "sigma0": cfg["sigma0"], "layers": stack.N}
    for parity in (EVEN, ODD):
        rows = []
        for mode in ms.modes(parity):
            row = {
                "rank": mode.rank,
                "lambda": mode.lambda_root,
                "sigma1": mode.sigma1_resonant,
            }
            if drude is not None:
                try:
                    row["omega"] = resonant_frequency(mode.lambda_root, drude, cfg["sigma0"])
                except Exception:
                    row["omega"] = None
            rows.append(row)
        payload[parity] = rows
    payload["root_symmetry_max"] = spectrum.verify_root_symmetry(ms)
    return payload


def run_charpoly(cfg):
    stack = _stack(cfg)
    n = cfg["n"]
    plus = cp.build_charpoly(stack, n, +1)
    minus = cp.build_charpoly(stack, n, -1)
    payload = {
        "n": n,
        "layers": stack.N,
        "coeff_plus": plus.coeffs.tolist(),
        "coeff_minus": minus.coeffs.tolist(),
    }
    span = {}
    for name, poly in (("plus", plus), ("minus", minus)):
        roots = np.sort(poly.roots().real)
        grid = np.linspace(roots[0], roots[-1], cfg["span_points"])
        vals = poly.evaluate(grid)
        span[name] = {
            "lambda": grid.tolist(),
            "value": vals.tolist(),
            "max_abs": float(np.abs(vals).max()),
        }
    payload["span"] = span
    return payload


def run_sweep(cfg):
    tol = cfg["tolerances"]
    pairs = spectrum.disk_degeneration_sweep(
        cfg["layers"],
        cfg["ratio"],
        cfg["n"],
        cfg["L"],
        cross_tol=tol["cross"],
        imag_tol=tol["imag"],
        bound_slack=tol["bound"],
    )
    L = [p[0] for p in pairs]
    gap = [p[1] for p in pairs]
    min_xi = [l * cfg["layers"] * cfg["ratio"] ** (cfg["layers"] - 1) for l in L]
    slope = float(np.polyfit(min_xi, np.log(gap), 1)[0]) if len(L) >= 2 else None
    return {
        "layers": cfg["layers"],
        "ratio": cfg["ratio"],
        "n": cfg["n"],
        "L": L,
        "gap": gap,
        "min_xi": min_xi,
        "log_gap_slope_vs_min_xi": slope,
        "gap_norm": "euclidean",
    }


def _probe(values, size=8):
    """Fixed-size subsample of a grid for drift fixtures."""
    nx, ny = values.shape
    ix = np.linspace(0, nx - 1, size).round().astype(int)
    iy = np.linspace(0, ny - 1, size).round().astype(int)
    sub = values[np.ix_(ix, iy)]
    return np.real(sub).tolist()


def run_field(cfg):
    """Returns (payload, grids) with grids a list of (meta, FieldGrid)."""
    stack = _stack(cfg)
    n = cfg["n"]
    tol = cfg["tolerances"]
    ms = spectrum.modes(
        stack, n, cross_tol=tol["cross"], imag_tol=tol["imag"], bound_slack=tol["bound"]
    )
    grids = []
    entries = []
    for parity in cfg["parities"]:
        lams = ms.lambdas(parity)
        for rank in cfg["ranks"]:
            # delta = 0 evaluates exactly at resonance; the density solve
            # raises the singularity error itself in that case
            lam = complex(lams[rank - 1], cfg["delta"])
            H = field_mod.BackgroundField.single(n, parity, 1.0)
            grid = field_mod.field_grid(
                stack,
                lam,
                H,
                cfg["bbox"],
                cfg["resolution"],
                normalize=cfg["normalize"],
                quantity=cfg["quantity"],
            )
            mag = np.abs(grid.values.real) if cfg["quantity"] == "potential" else grid.values
            am = np.unravel_index(int(np.argmax(mag)), mag.shape)
            argmax_xy = [float(grid.x1[am[0]]), float(grid.x2[am[1]])]
            xi_m, eta_m = cartesian_to_elliptic(argmax_xy[0], argmax_xy[1], stack.R)
            meta = {
                "parity": parity,
                "rank": rank,
                "lambda": lam,
                "delta": cfg["delta"],
                "normalization": grid.normalization,
                "argmax_xy": argmax_xy,
                "argmax_eta": float(eta_m),
            }
            entries.append(
                {
                    "parity": parity,
                    "rank": rank,
                    "lambda_re": lam.real,
                    "normalization": grid.normalization,
                    "probe": _probe(mag),
                }
            )
            grids.append((meta, grid))
    payload = {
        "n": n,
        "quantity": cfg["quantity"],
        "delta": cfg["delta"],
        "grids": entries,
    }
    return payload, grids


def _curve_factory(spec):
    def build(M):
        return bie_mod.curves_from_spec(spec, M)

    return build


def _monotone_decreasing(values, floor=1e-13):
    """Strict decrease judged above the roundoff floor (machine-precision
    plateaus, e.g. on a circle, count as converged rather than as drift)."""
    ok = True
    for a, b in zip(values, values[1:]):
        ok = ok and (b < a or (a <= floor and b <= floor))
    return bool(ok)


def run_bie(cfg):
    """Identity residual refinement plus spectral cross-checks per geometry."""
    build = _curve_factory(cfg["curves"])
    nodes = cfg["nodes"]
    report = {"curves": cfg["curves"], "nodes": nodes}
    calderon = []
    selfadj = []
    bound_excess = []
    for M in nodes:
        curves = build(M)
        calderon.append(bie_mod.calderon_residual(curves))
        selfadj.append(bie_mod.self_adjointness_check(curves))
        ev = bie_mod.block_np_eigenvalues(curves, deflated=True)
        bound_excess.append(float(np.abs(ev.real).max() - 0.5))
    report["calderon_residual"] = calderon
    report["self_adjointness_residual"] = selfadj
    report["spectral_bound_excess"] = bound_excess
    report["monotone_calderon"] = _monotone_decreasing(calderon)
    report["monotone_self_adjointness"] = _monotone_decreasing(selfadj)

    spec = cfg["curves"]
    if spec["type"] == "polar" and not spec.get("coeffs") and np.ndim(spec["scale"]) == 0:
        # single circle: closed-form spectra
        M = max(nodes)
        curve = bie_mod.curves_from_spec(spec, M)[0]
        K = bie_mod.assemble_kstar_block(curve)
        ev = np.sort(np.linalg.eigvals(K).real)
        r = float(spec["scale"])
        S = bie_mod.assemble_single_layer(curve)
        evs = np.linalg.eigvals(S).real
        report["circle"] = {
            "radius": r,
            "eig_half_err": float(abs(ev[-1] - 0.5)),
            "eig_rest_max": float(np.abs(ev[:-1]).max()),
            "s_const_err": float(np.abs(evs - r * np.log(r)).min()),
            "s_mode1_err": float(np.abs(evs + r / 2.0).min()),
        }

    if "match_orders" in cfg and spec["type"] == "confocal":
        from . import spectrum as spectrum_mod

        M = cfg["match_nodes"]
        curves = build(M)
        ev = bie_mod.block_np_eigenvalues(curves, deflated=False)
        stack = LayerStack(R=spec["R"], xi=tuple(spec["xi"]))
        worst = 0.0
        for n in range(1, cfg["match_orders"] + 1):
            ms = spectrum_mod.modes(stack, n)
            for parity in (EVEN, ODD):
                for lam in ms.lambdas(parity):
                    worst = max(worst, float(np.abs(ev - (-lam)).min()))
        report["mode_containment_max_err"] = worst
        report["match_orders"] = cfg["match_orders"]
        report["match_nodes"] = M
    return report


def run(command, cfg):
    if command == "modes":
        return run_modes(cfg)
    if command == "charpoly":
        return run_charpoly(cfg)
    if command == "sweep-disk":
        return run_sweep(cfg)
    if command == "field":
        return run_field(cfg)[0]
    if command == "bie-validate":
        return run_bie(cfg)
    raise ConfigError(f"unknown command {command!r}")
