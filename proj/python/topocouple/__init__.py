"""Exact coarse-equivalence certificates (Python bindings)."""

import json

from ._topocouple import (
    TopocoupleError,
    ball_sizes,
    certify_config,
    distance,
    make_group,
    moduli,
    net,
    packing_number,
    psi,
)
from ._topocouple import certify as _certify


def certify(**settings):
    """Run the pipeline with config-file keys; returns (report dict, exit code)."""
    text, code = _certify({k: str(v) for k, v in settings.items()})
    return json.loads(text), code


__all__ = [
    "TopocoupleError",
    "ball_sizes",
    "certify",
    "certify_config",
    "distance",
    "make_group",
    "moduli",
    "net",
    "packing_number",
    "psi",
]
