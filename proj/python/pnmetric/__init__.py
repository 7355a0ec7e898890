"""Finite partial n-metric spaces: axiom validation, topology, sequence
analysis, and fixed-point solving. Thin wrappers over the compiled module
that parse its JSON reports into dicts."""

import json

try:
    from ._pnmetric import (
        Error,
        Space,
        associated_metric_json,
        certify_json,
        convert,
        orbit_json,
        separation_json,
        sequence_json,
        solve_json,
        validate_json,
    )
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _pnmetric import (
        Error,
        Space,
        associated_metric_json,
        certify_json,
        convert,
        orbit_json,
        separation_json,
        sequence_json,
        solve_json,
        validate_json,
    )

__all__ = [
    "Error",
    "Space",
    "load_space",
    "convert",
    "validate",
    "associated_metric",
    "separation",
    "analyze_sequence",
    "solve",
    "orbit",
    "certify",
]


def load_space(path):
    with open(path, "r", encoding="utf-8") as handle:
        return Space.from_json(handle.read())


def validate(space, profile="partial_n_metric", tol=1e-9):
    return json.loads(validate_json(space, profile, tol))


def associated_metric(space, tol=1e-9):
    return json.loads(associated_metric_json(space, tol))


def separation(space):
    return json.loads(separation_json(space))


def analyze_sequence(space, names, window=-1, tol=1e-9):
    return json.loads(sequence_json(space, list(names), window, tol))


def solve(space, mapping, start, strong=False, max_steps=0, tol=1e-9):
    return json.loads(solve_json(space, dict(mapping), start, strong, max_steps, tol))


def orbit(space, mapping, start):
    return json.loads(orbit_json(space, dict(mapping), start))


def certify(space, mapping, start, kind="r", r=0.0, lam=0.5, tol=1e-9):
    return json.loads(certify_json(space, dict(mapping), start, kind, r, lam, tol))
