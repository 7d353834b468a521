"""Exact wild-ramification invariants of rank-1 Artin-Schreier sheaves."""

import json

from ._core import (
    ManifestError,
    RamlabError,
    canonical_manifest,
    depth_bound,
    intersection_multiplicity,
    phi_dim,
    run_manifest_json,
    swan,
)

RamlabError.code = property(lambda self: self.args[1] if len(self.args) > 1 else None)
ManifestError.diagnostics = property(lambda self: list(self.args[2]) if len(self.args) > 2 else [])


def run_manifest(text, parallel=1, seed=None):
    """Run every task of a manifest and return the JSON report as a dict."""
    return json.loads(run_manifest_json(text, parallel, seed))


def run_manifest_file(path, **kwargs):
    with open(path, encoding="utf-8") as fh:
        return run_manifest(fh.read(), **kwargs)


__all__ = [
    "ManifestError",
    "RamlabError",
    "canonical_manifest",
    "depth_bound",
    "intersection_multiplicity",
    "phi_dim",
    "run_manifest",
    "run_manifest_file",
    "swan",
]
