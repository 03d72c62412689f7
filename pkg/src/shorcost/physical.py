"""Lattice-surgery layout, runtime and physical qubit count of the construction.

Each runway-delimited piece of the registers gets its own strip of the chip:
two rows of factories feeding a reaction-limited ripple-carry operating area,
plus rows holding the piece's slice of the three registers. Pieces sit side by
side and run independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import error_budget as eb
from .abstract_cost import (
    AbstractCosts,
    CostParams,
    abstract_costs,
    effective_separation,
    lookup_costs,
)
from .config import DEFAULT_ASSUMPTIONS, PhysicalAssumptions
from .factories import FactoryModel, factory_model

SECONDS_PER_DAY = 86400.0

# Rows of the operating area besides the factories: 3 ripple-carry, 6 AutoCCZ
# fixup, 8 routing.
OPERATING_ROWS = 3 + 6 + 8
REGISTERS_PER_PIECE = 3


@dataclass(frozen=True)
class BoardLayout:
    pieces: int
    width_per_piece: int
    height: int
    factories_per_piece: int
    register_rows: int
    factory_area: float
    logical_qubit_total: int

    @property
    def nondistill_fraction(self) -> float:
        return 1 - self.pieces * self.factory_area / self.logical_qubit_total


@dataclass(frozen=True)
class LookupAdditionTime:
    lookup: float
    addition: float
    misc: float

    @property
    def total(self) -> float:
        return self.lookup + self.addition + self.misc


@dataclass(frozen=True)
class PhysicalEstimate:
    physical_qubits: int
    runtime_per_run: float
    cycles: float
    retry_risk: float
    volume_per_run: float
    expected_volume: float

    @property
    def megaqubits(self) -> float:
        return self.physical_qubits / 1e6

    @property
    def hours_per_run(self) -> float:
        return self.runtime_per_run / 3600


@dataclass(frozen=True)
class PointEvaluation:
    abstract: AbstractCosts
    layout: BoardLayout
    timing: LookupAdditionTime
    errors: eb.ErrorBudget
    physical: PhysicalEstimate


def physical_qubits_per_logical(d: int) -> int:
    if d < 3:
        raise ValueError(f"code distance must be at least 3, got {d}")
    return 2 * (d + 1) ** 2


def board_geometry(n: int, c_pad: int, params: CostParams, factory: FactoryModel | None = None,
                   assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS) -> BoardLayout:
    """Logical-qubit footprint of the whole machine.

    Factories are packed in two rows with one-tile routing gaps between and
    around them; each of the three registers contributes whole rows holding
    its piece plus runway.
    """
    if factory is None:
        factory = factory_model(params.factory, params.d1, params.d2)
    count = factory.factories_needed(assumptions.cycle_time, assumptions.reaction_time)
    columns = math.ceil(count / 2)
    width = math.ceil(columns * factory.footprint_w - 1e-9) + columns + 1
    factory_rows = math.ceil(2 * factory.footprint_h - 1e-9)
    piece_bits = effective_separation(n, params.c_sep) + c_pad
    register_rows = REGISTERS_PER_PIECE * math.ceil(piece_bits / width)
    height = factory_rows + OPERATING_ROWS + register_rows
    pieces = math.ceil(n / params.c_sep)
    return BoardLayout(
        pieces=pieces,
        width_per_piece=width,
        height=height,
        factories_per_piece=count,
        register_rows=register_rows,
        factory_area=count * factory.footprint_w * factory.footprint_h,
        logical_qubit_total=pieces * width * height,
    )


def lookup_addition_time(params: CostParams, c_pad: int, n: int | None = None,
                         assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS) -> LookupAdditionTime:
    """Wall-clock time of one lookup addition.

    The lookup is code-depth limited (d2/2 cycles per entry thanks to the
    double-access hallways); the piecewise ripple-carry addition is reaction
    limited at two reactions per piece bit.
    """
    c_sep = params.c_sep if n is None else effective_separation(n, params.c_sep)
    entries = lookup_costs(params.c_exp, params.c_mul, n or 1).compute
    return LookupAdditionTime(
        lookup=assumptions.cycle_time * params.d2 / 2 * entries,
        addition=2 * (c_sep + c_pad) * assumptions.reaction_time,
        misc=assumptions.misc_time,
    )


def total_runtime(n: int, n_e: int, params: CostParams,
                  assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS) -> float:
    costs = abstract_costs(n, n_e, params)
    return costs.lookup_additions * lookup_addition_time(params, costs.c_pad, n, assumptions).total


def evaluate(n: int, n_e: int, params: CostParams,
             assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS,
             factory_table=None) -> PointEvaluation:
    """Every model output for one parameter point."""
    factory = factory_model(params.factory, params.d1, params.d2, factory_table)
    costs = abstract_costs(n, n_e, params)
    layout = board_geometry(n, costs.c_pad, params, factory, assumptions)
    timing = lookup_addition_time(params, costs.c_pad, n, assumptions)
    runtime = costs.lookup_additions * timing.total
    cycles = runtime / assumptions.cycle_time

    deviation = eb.total_deviation(n, n_e, params)
    topo = eb.topological_error(layout.logical_qubit_total, layout.nondistill_fraction, cycles,
                                params.d2, assumptions.gate_error)
    distill = eb.distillation_error(costs.toffoli_count * factory.states_per_toffoli, factory,
                                    assumptions.gate_error)
    errors = eb.error_budget(deviation, topo, distill)

    qubits = layout.logical_qubit_total * physical_qubits_per_logical(params.d2)
    per_run = qubits / 1e6 * runtime / SECONDS_PER_DAY
    expected = per_run / (1 - errors.retry_risk) if errors.retry_risk < 1 else math.inf
    physical = PhysicalEstimate(
        physical_qubits=qubits,
        runtime_per_run=runtime,
        cycles=cycles,
        retry_risk=errors.retry_risk,
        volume_per_run=per_run,
        expected_volume=expected,
    )
    return PointEvaluation(costs, layout, timing, errors, physical)


def physical_estimate(n: int, n_e: int, params: CostParams,
                      assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS) -> PhysicalEstimate:
    return evaluate(n, n_e, params, assumptions).physical
