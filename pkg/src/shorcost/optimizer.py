"""Exhaustive grid search for the cheapest parameter point of a problem.

The grid is evaluated as numpy arrays in one pass; the winner is then
re-evaluated through the scalar model in :mod:`shorcost.physical`, which is
the reference implementation the vectorized path is tested against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import physical
from .abstract_cost import AbstractCosts, CostParams, FactoryKind
from .config import DEFAULT_ASSUMPTIONS, PhysicalAssumptions
from .error_budget import (
    POSTPROCESSING_FAILURE,
    REFERENCE_GATE_ERROR,
    ErrorBudget,
)
from .factories import load_table
from .problems import FAMILIES, TABLE_MODULI, ProblemInstance, family_instance

D1_GRID = (15, 17, 19, 21, 23)
D2_GRID = tuple(range(25, 52, 2))
DELTA_OFF_GRID = tuple(range(2, 11))
WINDOW_GRID = (4, 5, 6)
C_SEP_GRID = (512, 768, 1024, 1536, 2048)
FACTORY_GRID = (FactoryKind.CCZ, FactoryKind.T)

SPACE_SKEW = 1.2
RETRY_RISK_FLAG = 0.5


class InfeasibleProblem(RuntimeError):
    """No grid point gives a retry risk below 1."""

    def __init__(self, message, dominant_component=None):
        super().__init__(message)
        self.dominant_component = dominant_component


@dataclass(frozen=True)
class EstimateReport:
    problem: ProblemInstance
    params: CostParams
    abstract: AbstractCosts
    errors: ErrorBudget
    physical: physical.PhysicalEstimate
    layout: physical.BoardLayout
    objective: float

    @property
    def flagged(self) -> bool:
        return self.errors.retry_risk >= RETRY_RISK_FLAG


def enumerate_grid() -> list[CostParams]:
    """All parameter points, in lexicographic (d1, d2, delta_off, c_exp, c_mul, c_sep, factory) order."""
    return [
        CostParams(d1, d2, delta_off, c_exp, c_mul, c_sep, factory)
        for d1, d2, delta_off, c_exp, c_mul, c_sep, factory in itertools.product(
            D1_GRID, D2_GRID, DELTA_OFF_GRID, WINDOW_GRID, WINDOW_GRID, C_SEP_GRID, FACTORY_GRID)
    ]


def skewed_volume(s: float, t: float, epsilon: float) -> float:
    """s^1.2 * t / (1 - epsilon); infinite when a run can never succeed."""
    if epsilon >= 1:
        return math.inf
    return s**SPACE_SKEW * t / (1 - epsilon)


class _Grid:
    """Column arrays for a list of parameter points plus factory lookups."""

    def __init__(self, points: Sequence[CostParams], factory_table=None):
        self.points = list(points)
        table = load_table() if factory_table is None else factory_table
        cols = np.array([(p.d1, p.d2, p.delta_off, p.c_exp, p.c_mul, p.c_sep) for p in self.points],
                        dtype=np.int64).reshape(-1, 6)
        self.d1, self.d2, self.delta_off, self.c_exp, self.c_mul, self.c_sep = cols.T
        models = [table[p.factory, p.d1, p.d2] for p in self.points]
        self.error_per_state = np.array([m.error_per_state for m in models])
        self.footprint_w = np.array([m.footprint_w for m in models])
        self.footprint_h = np.array([m.footprint_h for m in models])
        self.cycles_per_state = np.array([m.cycles_per_state for m in models])
        self.states_per_toffoli = np.array([m.states_per_toffoli for m in models], dtype=np.int64)


def _ceil_div(a, b):
    return -(-a // b)


def evaluate_grid(n: int, n_e: int, grid: _Grid,
                  assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS) -> dict[str, np.ndarray]:
    """Vectorized mirror of :func:`shorcost.physical.evaluate`."""
    g = grid
    c_pad = g.delta_off + math.ceil(2 * math.log2(n) + math.log2(n_e))
    sep = np.minimum(g.c_sep, n)
    pieces = _ceil_div(n, g.c_sep)

    factor_bits = n + c_pad + pieces - 1
    additions = _ceil_div(n_e, g.c_exp) * 2 * _ceil_div(factor_bits, g.c_mul)
    entries = 2 ** (g.c_exp + g.c_mul)
    # exact rational Toffoli count: additions * (2n + c_pad n / sep + entries)
    numer = additions * ((2 * n + entries) * sep + c_pad * n)
    toffolis = _ceil_div(numer, sep)

    demand = g.states_per_toffoli * g.cycles_per_state * assumptions.cycle_time / assumptions.reaction_time
    count = np.maximum(1, np.ceil(demand - 1e-9)).astype(np.int64)
    columns = _ceil_div(count, 2)
    width = np.ceil(columns * g.footprint_w - 1e-9).astype(np.int64) + columns + 1
    factory_rows = np.ceil(2 * g.footprint_h - 1e-9).astype(np.int64)
    register_rows = physical.REGISTERS_PER_PIECE * _ceil_div(sep + c_pad, width)
    height = factory_rows + physical.OPERATING_ROWS + register_rows
    logical = pieces * width * height
    factory_area = count * g.footprint_w * g.footprint_h
    nondistill = 1 - pieces * factory_area / logical

    step = (assumptions.cycle_time * g.d2 / 2 * entries
            + 2 * (sep + c_pad) * assumptions.reaction_time + assumptions.misc_time)
    runtime = additions * step
    cycles = runtime / assumptions.cycle_time

    deviation = np.minimum(1.0, additions * (n / (sep * 2.0**c_pad)))
    approx = np.minimum(1.0, 2 * np.sqrt(deviation))
    p_logical = 10.0 ** -np.ceil(g.d2 / 2 + 1)
    per_state = g.error_per_state
    if assumptions.gate_error != REFERENCE_GATE_ERROR:
        scale = (assumptions.gate_error / REFERENCE_GATE_ERROR) ** ((g.d2 + 1) / 2)
        p_logical = p_logical * scale
        per_state = per_state * scale
    topo = np.minimum(1.0, p_logical * logical * nondistill * cycles)
    distill = np.minimum(1.0, toffolis * g.states_per_toffoli * per_state)
    survive = (1 - topo) * (1 - distill) * (1 - approx) * (1 - POSTPROCESSING_FAILURE)
    risk = 1 - survive

    qubits = logical * 2 * (g.d2 + 1) ** 2
    with np.errstate(divide="ignore"):
        objective = np.where(risk < 1, qubits.astype(float) ** SPACE_SKEW * runtime / survive, np.inf)
    return {
        "c_pad": np.full(len(g.points), c_pad),
        "additions": additions,
        "toffolis": toffolis,
        "qubits": qubits,
        "runtime": runtime,
        "risk": risk,
        "topological": topo,
        "distillation": distill,
        "approximation": approx,
        "objective": objective,
    }


_DEFAULT_GRID: list = []


def _full_grid(factory_table=None) -> _Grid:
    if factory_table is not None:
        return _Grid(enumerate_grid(), factory_table)
    if not _DEFAULT_GRID:
        _DEFAULT_GRID.append(_Grid(enumerate_grid()))
    return _DEFAULT_GRID[0]


def _best_index(values: dict[str, np.ndarray]) -> int:
    # np.lexsort sorts by the last key first; enumeration order supplies the
    # final lexicographic-parameter tie-break since lexsort is stable.
    order = np.lexsort((values["runtime"], values["qubits"], values["objective"]))
    return int(order[0])


def optimize(problem: ProblemInstance, assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS,
             points: Optional[Iterable[CostParams]] = None, factory_table=None) -> EstimateReport:
    """Grid point minimizing the skewed expected spacetime volume.

    Ties go to fewer physical qubits, then shorter runtime, then the
    lexicographically smallest parameters.
    """
    n, n_e = problem.n, problem.n_e
    if points is None:
        grid = _full_grid(factory_table)
    else:
        ordered = sorted(points, key=CostParams.sort_key)
        grid = _Grid(ordered, factory_table)
    if not grid.points:
        raise ValueError("no parameter points to search")
    values = evaluate_grid(n, n_e, grid, assumptions)
    if not np.isfinite(values["objective"]).any():
        parts = ("topological", "distillation", "approximation")
        best = int(np.argmin(values["risk"]))
        dominant = max(parts, key=lambda k: values[k][best])
        raise InfeasibleProblem(
            f"every parameter point fails with certainty for n={n}, n_e={n_e}", dominant)
    best = grid.points[_best_index(values)]
    return report_for(problem, best, assumptions, factory_table)


def report_for(problem: ProblemInstance, params: CostParams,
               assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS,
               factory_table=None) -> EstimateReport:
    ev = physical.evaluate(problem.n, problem.n_e, params, assumptions, factory_table)
    ph = ev.physical
    return EstimateReport(
        problem=problem,
        params=params,
        abstract=ev.abstract,
        errors=ev.errors,
        physical=ph,
        layout=ev.layout,
        objective=skewed_volume(ph.physical_qubits, ph.runtime_per_run, ph.retry_risk),
    )


def make_table(family: str, assumptions: PhysicalAssumptions = DEFAULT_ASSUMPTIONS,
               moduli: Sequence[int] = TABLE_MODULI) -> list[EstimateReport]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    return [optimize(family_instance(family, n), assumptions) for n in moduli]
