import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shorcost.abstract_cost import CostParams, toffolis_per_lookup_addition
from shorcost.sim import ADDER_MANIFEST, Circuit, build_cuccaro_adder, build_lookup_addition, count_resources, simulate_batch
from shorcost.sim.arithmetic import append_increment, append_lookup, check_table
from shorcost.sim.coset import RunwayLayout, remove_runways_batch
from shorcost.verify import CROSS_CHECK_SLACK, check_adders, cross_check_matrix, lookup_addition_gap


def test_adders_exhaustive():
    assert check_adders(6) == (True, "exhaustive for n <= 6")


@pytest.mark.parametrize("n", [1, 2, 5, 16])
def test_adder_manifest(n):
    for controlled, key in ((False, "uncontrolled"), (True, "controlled")):
        coef, const = ADDER_MANIFEST[key]
        rc = count_resources(build_cuccaro_adder(n, controlled))
        assert rc.toffolis == coef * n + const
    assert count_resources(build_cuccaro_adder(n)).measurement_depth == 2 * n


@settings(max_examples=40, deadline=None)
@given(st.integers(7, 30).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, 2**n - 1), min_size=1, max_size=8),
    st.lists(st.integers(0, 2 ** (n + 1) - 1), min_size=8, max_size=8), st.integers(0, 1))))
def test_wide_adders_random(case):
    n, a, b, ctrl = case
    a = np.array(a + [0] * (8 - len(a)))
    b = np.array(b)
    out = simulate_batch(build_cuccaro_adder(n, controlled=True), {"a": a, "b": b, "ctrl": ctrl})
    assert (out["b"] == (ctrl * a + b) % 2 ** (n + 1)).all()
    assert (out["mask"] == 0).all() and (out["anc"] == 0).all()


@pytest.mark.parametrize("k", [1, 2, 5])
def test_increment(k):
    circ = Circuit()
    c = circ.add_register("c", 1)
    reg = circ.add_register("r", k)
    work = circ.add_register("w", k - 1)
    append_increment(circ, c[0], reg, work)
    r, cv = np.meshgrid(np.arange(2**k), [0, 1], indexing="ij")
    out = simulate_batch(circ, {"r": r.ravel(), "c": cv.ravel()})
    assert (out["r"] == (r.ravel() + cv.ravel()) % 2**k).all()
    assert (out["w"] == 0).all()
    assert count_resources(circ).toffolis == k - 1


@pytest.mark.parametrize("w", [1, 2, 3, 5])
def test_lookup_exhaustive_and_counted(w):
    rng = np.random.default_rng(w)
    table = [int(v) for v in rng.integers(0, 64, size=2**w)]
    circ = Circuit()
    addr = circ.add_register("a", w)
    tgt = circ.add_register("t", 6)
    work = circ.add_register("w", w - 1)
    append_lookup(circ, table, addr, tgt, work)
    out = simulate_batch(circ, {"a": np.arange(2**w), "t": 5})
    assert (out["t"] == np.array(table) ^ 5).all()
    assert (out["w"] == 0).all()
    assert count_resources(circ).toffolis == max(0, 2**w - 2)
    unlookup = Circuit()
    unlookup.registers, unlookup.num_qubits = dict(circ.registers), circ.num_qubits
    append_lookup(unlookup, table, addr, tgt, work, measured=True)
    assert count_resources(unlookup).toffolis == 0


def test_lookup_addition_exhaustive():
    table = [3, 14, 15, 9, 2, 6, 5, 3]
    circ = build_lookup_addition(table, 3, 5)
    addr, tgt = np.meshgrid(np.arange(8), np.arange(32), indexing="ij")
    out = simulate_batch(circ, {"address": addr.ravel(), "target": tgt.ravel()})
    assert (out["target"] == (tgt.ravel() + np.array(table)[addr.ravel()]) % 32).all()
    assert all((out[r] == 0).all() for r in ("lookup", "work", "carry", "inc"))


@pytest.mark.parametrize("n, c_sep, c_pad", [(6, 3, 2), (8, 4, 3), (8, 3, 2)])
def test_lookup_addition_into_runway_register(n, c_sep, c_pad):
    rng = np.random.default_rng(n * c_sep)
    width = n + c_pad
    layout = RunwayLayout(width, c_sep, c_pad, data_bits=n)
    table = [int(v) for v in rng.integers(0, 2**n, size=16)]
    circ = build_lookup_addition(table, 4, width, value_width=n, c_sep=c_sep, c_pad=c_pad)
    lanes = 2000
    addr = rng.integers(0, 16, lanes)
    main = rng.integers(0, 2**width, lanes)
    # saturated runways may overflow; every other runway value is exact
    runways = rng.integers(0, 2**c_pad - 1, size=(layout.runway_count, lanes))
    flat = sum(runways[i] << (i * c_pad) for i in range(layout.runway_count))
    out = simulate_batch(circ, {"address": addr, "target": main, "runways": flat})
    mask = 2**c_pad - 1
    measured = np.array([(out["runways"] >> (i * c_pad)) & mask for i in range(layout.runway_count)])
    before = remove_runways_batch(main, runways, layout)
    after = remove_runways_batch(out["target"], measured, layout)
    assert (after == (before + np.array(table)[addr]) % 2**width).all()


def test_table_validation():
    with pytest.raises(ValueError, match="does not fit"):
        check_table([16], 4)
    with pytest.raises(ValueError, match="not canonical"):
        check_table([12], 4, modulus=11)
    with pytest.raises(ValueError, match="wider than the target"):
        build_lookup_addition([1, 2], 1, 3, value_width=4)
    with pytest.raises(ValueError, match="address bits"):
        build_lookup_addition([1, 2, 3], 1, 3)


def test_gate_count_manifest_per_lookup_addition():
    # (2^w - 2) + 2 n + pieces (c_pad - 1), a few cells of the cross-check matrix
    for n, w, c_pad, c_sep in ((8, 4, 4, 4), (12, 6, 6, 4), (6, 2, 2, 6)):
        circ = build_lookup_addition([1] * 2**w, w, n + c_pad, value_width=n,
                                     c_sep=c_sep if c_sep < n else None, c_pad=c_pad)
        pieces = -(-n // c_sep)
        assert count_resources(circ).toffolis == 2**w - 2 + 2 * n + pieces * (c_pad - 1)


def test_cross_check_matrix_gap():
    gaps = [lookup_addition_gap(*combo) for combo in cross_check_matrix()]
    assert len(gaps) > 300
    assert max(abs(g) for g in gaps) <= CROSS_CHECK_SLACK
    n, ce, cm, cp, cs = 12, 3, 3, 6, 4
    model = toffolis_per_lookup_addition(n, CostParams(c_exp=ce, c_mul=cm, c_sep=cs), cp)
    assert model == 2 * n + cp * n / cs + 2 ** (ce + cm)
