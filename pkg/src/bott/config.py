"""Runtime limits and tolerances, overridable from a JSON config file.

The config path is taken from the BOTT_CONFIG environment variable (or
passed explicitly); individual CLI flags override file values.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from fractions import Fraction

ENV_VAR = "BOTT_CONFIG"


@dataclass(frozen=True)
class Limits:
    orbit_stage_bound: int = 8
    root_stage_bound: int = 8
    positivity_depth: int = 20
    integrability_grid: int = 5
    csc_tolerance: Fraction = Fraction(1, 10 ** 12)


def load_limits(path: str | None = None) -> Limits:
    if path is None:
        path = os.environ.get(ENV_VAR)
    limits = Limits()
    if not path:
        return limits
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    updates = {}
    for field in ("orbit_stage_bound", "root_stage_bound", "positivity_depth",
                  "integrability_grid"):
        if field in raw:
            updates[field] = int(raw[field])
    if "csc_tolerance" in raw:
        updates["csc_tolerance"] = Fraction(str(raw["csc_tolerance"]))
    return replace(limits, **updates)
