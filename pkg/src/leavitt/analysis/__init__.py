"""Structural verdicts, pin-down, family checks and identity suites."""

from .families import check_family
from .pin import CyclePolynomial, PinDown, ScalarVertex, find_supporting_vertex, pin_down
from .report import Instance, Report
from .structure import (
    AdmissiblePair,
    Verdict,
    admissible_pairs,
    breaking_vertices,
    condition_L,
    cycle_exit,
    hereditary_saturated_subsets,
    hereditary_subsets,
    simple_cycles,
    simplicity_verdict,
    singular,
    unital,
)
from .suites import SUITES, verify_identity_suite
