"""Desk-scale reversible simulation of the arithmetic construction."""

from .arithmetic import ADDER_MANIFEST, build_cuccaro_adder, build_lookup_addition
from .circuit import BasisState, Circuit, Gate, GateKind, ResourceCount, count_resources, simulate, simulate_batch
from .coset import (
    CosetRegister,
    RunwayLayout,
    RunwayValue,
    build_runway_fold,
    coset_decode,
    coset_encode,
    folded_value,
    insert_runways,
    remove_runways_classically,
)
from .deviation import deviation_bound, measure_empirical_deviation
from .modexp import ModexpCircuit, SimParams, build_windowed_modexp, modexp
from .recovery import PostProcessingFailure, recover_factors_from_sum

__all__ = [
    "ADDER_MANIFEST", "BasisState", "Circuit", "CosetRegister", "Gate", "GateKind", "ModexpCircuit",
    "PostProcessingFailure", "ResourceCount", "RunwayLayout", "RunwayValue", "SimParams",
    "build_cuccaro_adder", "build_lookup_addition", "build_runway_fold", "build_windowed_modexp",
    "count_resources", "coset_decode", "coset_encode", "deviation_bound", "folded_value",
    "insert_runways", "measure_empirical_deviation", "modexp", "recover_factors_from_sum",
    "remove_runways_classically", "simulate", "simulate_batch",
]
