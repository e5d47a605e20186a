"""Lozenge tilings with free boundaries, condensation identities and dent correlations."""
from __future__ import annotations

from .counting import count_region, mf_enumerate, mf_profile_dp, mf_subset_oracle, symmetric_count
from .formulas import (
    PiScaledRational,
    bulk_asymptote,
    bulk_correlation,
    butterfly_sym_formula,
    corner_correlation,
    flashlight_formula,
    macmahon_box,
    spp,
)
from .graph import FreeMatchGraph, dual_graph, make_graph
from .lattice import Region, TriCell, make_region
from .regions import butterfly_hexagon, flashlight, free_trapezoid, hexagon, reduced_flashlight

__all__ = [
    "FreeMatchGraph", "PiScaledRational", "Region", "TriCell",
    "bulk_asymptote", "bulk_correlation", "butterfly_hexagon", "butterfly_sym_formula",
    "corner_correlation", "count_region", "dual_graph", "flashlight", "flashlight_formula",
    "free_trapezoid", "hexagon", "macmahon_box", "make_graph", "make_region",
    "mf_enumerate", "mf_profile_dp", "mf_subset_oracle", "reduced_flashlight", "spp",
    "symmetric_count",
]
