import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from shorcost.abstract_cost import CostParams, FactoryKind
from shorcost.config import DEFAULT_ASSUMPTIONS, PhysicalAssumptions, load_assumptions
from shorcost.factories import factory_model
from shorcost.physical import (
    board_geometry,
    evaluate,
    lookup_addition_time,
    physical_estimate,
    physical_qubits_per_logical,
    total_runtime,
)

P = CostParams(d1=15, d2=27, delta_off=4, c_exp=5, c_mul=5, c_sep=1024)


def test_qubits_per_logical():
    assert physical_qubits_per_logical(27) == 1568
    with pytest.raises(ValueError):
        physical_qubits_per_logical(1)


def test_layout_frozen():
    lay = evaluate(2048, 3029, P).layout
    assert (lay.pieces, lay.width_per_piece, lay.height) == (2, 102, 65)
    assert (lay.factories_per_piece, lay.register_rows, lay.logical_qubit_total) == (14, 33, 13260)


def test_default_point_layout_and_qubits():
    ev = evaluate(2048, 3072, CostParams())
    lay = ev.layout
    assert (lay.width_per_piece, lay.height, lay.register_rows) == (113, 63, 30)
    assert lay.logical_qubit_total == 14238
    assert lay.factory_area == pytest.approx(14 * 15 * 8)
    assert ev.physical.physical_qubits == 22_325_184


def test_layout_oracle():
    # two factory rows of 7 anchors (15x8) with gaps, 17 operating rows,
    # three registers of 1024 + 44 bits in rows of 113
    width = 7 * 15 + 7 + 1
    height = 16 + 17 + 3 * math.ceil((1024 + 44) / width)
    lay = board_geometry(2048, 44, CostParams())
    assert (lay.width_per_piece, lay.height) == (width, height)
    assert lay.nondistill_fraction == pytest.approx(1 - 2 * 1680 / (2 * width * height))


def test_timing_frozen():
    t = lookup_addition_time(CostParams(c_exp=4, c_mul=4, c_sep=512, d2=25), 30)
    assert (t.lookup, t.addition, t.misc) == pytest.approx((0.0032, 0.01084, 0.001))
    assert t.total == pytest.approx(0.01504)
    assert total_runtime(2048, 3072, CostParams()) / 3600 == pytest.approx(5.18, abs=0.005)


def test_evaluate_frozen():
    ev = evaluate(2048, 3029, P)
    assert (ev.timing.lookup, ev.timing.addition, ev.timing.misc) == pytest.approx((0.013824, 0.02124, 0.001))
    assert ev.errors.retry_risk == pytest.approx(0.31641, abs=1e-5)
    assert ev.errors.topological_error == pytest.approx(0.19376, abs=1e-5)
    assert ev.errors.distillation_error == pytest.approx(0.14026, abs=1e-5)
    ph = ev.physical
    assert ph.physical_qubits == 20_791_680
    assert ph.runtime_per_run == pytest.approx(18270.6, abs=0.1)
    assert ph.expected_volume == pytest.approx(6.4318, abs=1e-4)
    assert ph.volume_per_run == pytest.approx(ph.physical_qubits / 1e6 * ph.runtime_per_run / 86400)
    assert physical_estimate(2048, 3029, P) == ph


def test_slower_reaction_means_more_time_fewer_factories():
    slow = replace(DEFAULT_ASSUMPTIONS, reaction_time=20e-6)
    fast = evaluate(2048, 3029, P)
    ev = evaluate(2048, 3029, P, slow)
    assert ev.layout.factories_per_piece == 7
    assert ev.physical.runtime_per_run > fast.physical.runtime_per_run


def test_explicit_factory_matches_lookup():
    f = factory_model(FactoryKind.CCZ, 15, 27)
    assert board_geometry(2048, 38, P, f) == board_geometry(2048, 38, P)


def test_assumptions(tmp_path):
    with pytest.raises(ValueError, match="threshold"):
        PhysicalAssumptions(gate_error=0.02)
    with pytest.raises(ValueError):
        PhysicalAssumptions(cycle_time=-1)
    cfg = tmp_path / "a.json"
    cfg.write_text('{"gate_error": 1e-4, "cycle_us": 2, "reaction_us": 5, "misc_ms": 0.5}')
    a = load_assumptions(str(cfg))
    assert a.gate_error == 1e-4
    assert (a.cycle_time, a.reaction_time, a.misc_time) == pytest.approx((2e-6, 5e-6, 5e-4))
    cfg.write_text('{"gate_eror": 1e-4}')
    with pytest.raises(ValueError, match="unknown keys"):
        load_assumptions(str(cfg))


params_st = st.builds(
    CostParams,
    d1=st.sampled_from([15, 17, 19, 21, 23]),
    d2=st.sampled_from(range(25, 52, 2)),
    delta_off=st.integers(2, 10),
    c_exp=st.integers(4, 6),
    c_mul=st.integers(4, 6),
    c_sep=st.sampled_from([512, 768, 1024, 1536, 2048]),
    factory=st.sampled_from(list(FactoryKind)),
)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1024, 2048, 3072, 4096, 8192]), params_st)
def test_physical_invariants(n, params):
    ev = evaluate(n, 3 * n // 2, params)
    lay, ph = ev.layout, ev.physical
    assert 0 < lay.nondistill_fraction < 1
    assert lay.pieces == math.ceil(n / params.c_sep)
    assert ph.physical_qubits == lay.logical_qubit_total * 2 * (params.d2 + 1) ** 2
    assert 0 <= ph.retry_risk <= 1
    if ph.retry_risk < 1:
        assert ph.expected_volume >= ph.volume_per_run
    assert ph.cycles == pytest.approx(ph.runtime_per_run / DEFAULT_ASSUMPTIONS.cycle_time)
