"""Incremental subgradient-proximal methods.

Runs are described by the same JSON configs the ``incrprox`` CLI reads.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Union

from ._incrprox import (
    ConfigError,
    ConstraintSet,
    ConvergenceError,
    Error,
    EstimationError,
    ParameterError,
    ball,
    box,
    cyclic_error_bound,
    cyclic_iteration_estimate,
    halfspace,
    hyperplane,
    interpolated_projection,
    intersection,
    randomized_error_bound,
    randomized_expected_iterations,
    shrink,
    whole_space,
)
from ._incrprox import run_text as _run_text

__all__ = [
    "Result",
    "run",
    "ConfigError",
    "ConstraintSet",
    "ConvergenceError",
    "Error",
    "EstimationError",
    "ParameterError",
    "ball",
    "box",
    "cyclic_error_bound",
    "cyclic_iteration_estimate",
    "halfspace",
    "hyperplane",
    "interpolated_projection",
    "intersection",
    "randomized_error_bound",
    "randomized_expected_iterations",
    "shrink",
    "whole_space",
]


@dataclass
class Result:
    status: str
    message: str
    csv: str
    trace: dict
    bounds: dict
    warnings: list = field(default_factory=list)

    @property
    def rows(self) -> list[dict]:
        """The CSV trace as a list of dicts (values left as strings)."""
        return list(csv.DictReader(io.StringIO(self.csv)))

    @property
    def final_point(self) -> list[float]:
        return self.trace["metadata"]["final_point"]


def run(config: Union[str, Mapping[str, Any]]) -> Result:
    """Execute a run from a config dict or JSON text."""
    text = config if isinstance(config, str) else json.dumps(config)
    out = _run_text(text)
    return Result(
        status=out["status"],
        message=out["message"],
        csv=out["csv"],
        trace=json.loads(out["trace"]),
        bounds=json.loads(out["bounds"]),
        warnings=list(out["warnings"]),
    )
