"""Certification layer: fibre, fixed-point and collapse checks, and the named suites."""

from .checks import (
    CheckResult,
    Verdict,
    bredon_check,
    collapsibility,
    generating_simplex_check,
    order_homotopy_check,
    poset_contractibility,
    quillen_check,
)
from .report import Report, derive_seed
from .suites import SUITES, csorba_round_trip, engine_pair_check, run_suite

__all__ = [
    "CheckResult", "Verdict", "bredon_check", "collapsibility", "generating_simplex_check",
    "order_homotopy_check", "poset_contractibility", "quillen_check", "Report", "derive_seed",
    "SUITES", "csorba_round_trip", "engine_pair_check", "run_suite",
]
