"""Transition densities of Brownian motion on complex projective space."""

import json as _json

from ._core import (
    Truncation,
    TruncationError,
    __version__,
    auto_truncation,
    closed_form_coefficient,
    density_1d,
    density_2d,
    laplace_by_quadrature,
    laplace_series,
    simulate,
    solve_coefficients,
)
from ._core import validate as _validate


def validate(tier="quick", seed=20240611, threads=1):
    """Run the validation suite and return the report as a dict."""
    return _json.loads(_validate(tier, seed, threads))


__all__ = [
    "Truncation",
    "TruncationError",
    "__version__",
    "auto_truncation",
    "closed_form_coefficient",
    "density_1d",
    "density_2d",
    "laplace_by_quadrature",
    "laplace_series",
    "simulate",
    "solve_coefficients",
    "validate",
]
