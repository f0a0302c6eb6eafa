"""Committed preset fixtures: save, load, and tolerance-aware comparison.

A fixture stores a runner payload verbatim plus the comparison tolerances
used by ``--check``.  Comparison walks the payload recursively and reports
every numeric leaf outside rtol/atol of the stored value, so drift is
localized, not just detected.
"""

from __future__ import annotations

import json
import math

from . import __version__
from .output import jsonable

#: Comparison tolerances per command: payloads are deterministic up to
#: eigensolver/BLAS noise, so these are drift detectors, not oracles.
FIXTURE_TOLERANCES = {
    "modes": {"rtol": 1e-7, "atol": 1e-9},
    "charpoly": {"rtol": 1e-9, "atol": 1e-13},
    "sweep-disk": {"rtol": 1e-6, "atol": 1e-12},
    # resonant grids amplify root noise by ~1/delta; residuals ride an
    # exponential convergence curve, so both get looser relative bands
    "field": {"rtol": 1e-3, "atol": 1e-3},
    "bie-validate": {"rtol": 0.5, "atol": 1e-12},
}

#: span values cross zero; compare them absolutely at the span scale
_CHARPOLY_SPAN_ATOL = 1e-9


def fixture_tolerances(command):
    return dict(FIXTURE_TOLERANCES[command])


def save_fixture(path, name, command, payload, tolerances):
    doc = {
        "preset": name,
        "command": command,
        "version": __version__,
        "tolerances": tolerances,
        "payload": jsonable(payload),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_fixture(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _close(a, b, rtol, atol):
    if a is None or b is None:
        return a is b
    return math.isclose(a, b, rel_tol=rtol, abs_tol=atol)


def _walk(expected, actual, rtol, atol, path, out):
    if isinstance(expected, dict):
        if not isinstance(actual, dict) or set(expected) != set(actual):
            out.append(f"{path}: structure mismatch")
            return
        for key in expected:
            # span values compare absolutely (they pass through zero)
            sub_atol = _CHARPOLY_SPAN_ATOL if key == "value" and "span" in path else atol
            _walk(expected[key], actual[key], rtol, sub_atol, f"{path}.{key}", out)
    elif isinstance(expected, list):
        if not isinstance(actual, list) or len(expected) != len(actual):
            out.append(f"{path}: length mismatch")
            return
        for i, (e, a) in enumerate(zip(expected, actual)):
            _walk(e, a, rtol, atol, f"{path}[{i}]", out)
    elif isinstance(expected, bool) or isinstance(expected, str):
        if expected != actual:
            out.append(f"{path}: {actual!r} != {expected!r}")
    elif isinstance(expected, (int, float)):
        if not _close(float(expected), float(actual), rtol, atol):
            out.append(f"{path}: {actual!r} differs from fixture {expected!r}")
    elif expected is None:
        if actual is not None:
            out.append(f"{path}: {actual!r} != None")
    else:
        out.append(f"{path}: unsupported fixture type {type(expected).__name__}")


def compare_fixture(fixture, payload):
    """Return a list of human-readable mismatch strings (empty = match)."""
    tol = fixture["tolerances"]
    out = []
    _walk(fixture["payload"], jsonable(payload), tol["rtol"], tol["atol"], "payload", out)
    return out
