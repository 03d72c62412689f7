import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shorcost.sim import BasisState, Circuit, Gate, GateKind, count_resources, simulate, simulate_batch


def random_circuit(draw_ops, width=5, cbits=2):
    circ = Circuit()
    circ.add_register("q", width)
    circ.add_cregister("c", cbits)
    for kind, qs, cond, measured in draw_ops:
        target, *rest = qs
        if kind == "x":
            circ.x(target)
        elif kind == "cx":
            circ.cx(rest[0], target)
        elif kind == "ccx":
            circ.ccx(rest[0], rest[1], target, measured=measured)
        else:
            circ.classical_x(target, cond)
    return circ


ops = st.lists(st.tuples(
    st.sampled_from(["x", "cx", "ccx", "cl"]),
    st.permutations(range(5)).map(lambda p: p[:3]),
    st.lists(st.integers(0, 1), min_size=1, max_size=2, unique=True),
    st.booleans(),
), max_size=40)


@settings(max_examples=60)
@given(ops, st.integers(0, 31), st.integers(0, 3))
def test_inverse_undoes(op_list, start, cvalue):
    circ = random_circuit(op_list)
    both = Circuit.from_text(circ.to_text())
    both.gates.extend(circ.inverse().gates)
    out = simulate(both, BasisState({"q": start}, {"c": cvalue}))
    assert out.registers["q"] == start


@given(ops)
def test_text_round_trip(op_list):
    circ = random_circuit(op_list)
    back = Circuit.from_text(circ.to_text())
    assert back.gates == circ.gates
    assert back.registers == circ.registers and back.cregisters == circ.cregisters
    assert back.to_text() == circ.to_text()


def test_gate_text_format():
    g = Gate(GateKind.TOFFOLI, 3, (1, 2), (0, 1), True)
    assert g.to_text() == "TOFFOLI 1 2 -> 3 if c0&c1 measured"
    assert Gate.from_text(g.to_text()) == g
    with pytest.raises(ValueError, match="unexpected token"):
        Gate.from_text("NOT -> 1 sometimes")


def test_gate_validation():
    with pytest.raises(ValueError, match="takes 2 controls"):
        Gate(GateKind.TOFFOLI, 0, (1,))
    with pytest.raises(ValueError, match="distinct"):
        Gate(GateKind.CNOT, 1, (1,))
    with pytest.raises(ValueError, match="classical condition"):
        Gate(GateKind.CLASSICAL_CTRL, 0)
    with pytest.raises(ValueError, match="only Toffoli"):
        Gate(GateKind.CNOT, 0, (1,), measured=True)
    circ = Circuit()
    circ.add_register("q", 2)
    with pytest.raises(ValueError, match="out of range"):
        circ.x(2)
    with pytest.raises(ValueError, match="duplicate"):
        circ.add_register("q", 1)


def test_simulation_input_checks():
    circ = Circuit()
    circ.add_register("q", 3)
    with pytest.raises(ValueError, match="out of range"):
        simulate_batch(circ, {"q": [8]})
    with pytest.raises(ValueError, match="unknown register"):
        simulate_batch(circ, {"r": [0]})
    wide = Circuit()
    wide.add_register("w", 63)
    with pytest.raises(ValueError, match="too wide"):
        simulate_batch(wide, {"w": [0]})


def test_classical_control_and_batch():
    circ = Circuit()
    q = circ.add_register("q", 2)
    c = circ.add_cregister("c", 2)
    circ.classical_x(q[0], c)
    circ.cx(q[0], q[1])
    out = simulate_batch(circ, {}, {"c": np.arange(4)})
    assert out["q"].tolist() == [0, 0, 0, 3]


def test_resource_counting():
    circ = Circuit()
    q = circ.add_register("q", 6)
    circ.ccx(q[0], q[1], q[2])
    circ.ccx(q[3], q[4], q[5])  # parallel to the first
    circ.cx(q[2], q[3])
    circ.ccx(q[3], q[0], q[1])  # depends on both
    circ.ccx(q[3], q[0], q[1], measured=True)
    rc = count_resources(circ)
    assert (rc.toffolis, rc.measurement_depth) == (3, 2)
