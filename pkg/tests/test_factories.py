from importlib import resources

import pytest
from hypothesis import given, strategies as st

from shorcost.abstract_cost import FactoryKind
from shorcost.factories import (
    ANCHOR_CCZ_ERROR,
    D1_RANGE,
    D2_RANGE,
    TABLE_FILE,
    UnsupportedDistance,
    factory_model,
    format_table,
    generate_table,
    load_table,
    parse_table,
)


def test_shipped_table_is_generated_table():
    shipped = resources.files("shorcost.data").joinpath(TABLE_FILE).read_text()
    assert shipped == format_table(generate_table())


def test_table_size_and_keys():
    table = load_table()
    assert len(table) == 2 * len(D1_RANGE) * len(D2_RANGE) == 140
    assert (FactoryKind.CCZ, 17, 27) in table


def test_anchor_entry():
    m = factory_model(FactoryKind.CCZ, 17, 27)
    assert m.error_per_state == pytest.approx(ANCHOR_CCZ_ERROR, rel=1e-6)
    assert ANCHOR_CCZ_ERROR == pytest.approx(0.064 / 3e9)
    assert (m.footprint_w, m.footprint_h, m.cycles_per_state) == (15, 8, 140)
    assert m.factories_needed(1e-6, 10e-6) == 14
    assert m.states_per_toffoli == 1


def test_t_factories_feed_four_states_per_toffoli():
    t = factory_model(FactoryKind.T, 17, 27)
    ccz = factory_model(FactoryKind.CCZ, 17, 27)
    assert t.states_per_toffoli == 4
    assert t.cycles_per_state == ccz.cycles_per_state / 2
    assert t.error_per_toffoli == pytest.approx(ccz.error_per_toffoli, rel=1e-6)


def test_unknown_distance():
    with pytest.raises(UnsupportedDistance, match="d1=16"):
        factory_model(FactoryKind.CCZ, 16, 27)


def test_round_trip_and_bad_header(tmp_path):
    text = format_table(generate_table())
    assert format_table(parse_table(text).values()) == text
    with pytest.raises(ValueError, match="header"):
        parse_table("kind,d1\nCCZ,17\n")
    path = tmp_path / "t.csv"
    path.write_text(text)
    assert load_table(str(path)) == load_table()


@given(st.sampled_from(list(FactoryKind)), st.sampled_from(list(D1_RANGE)),
       st.sampled_from(list(D2_RANGE)[:-1]))
def test_larger_distance_means_fewer_errors_and_bigger_footprint(kind, d1, d2):
    lo, hi = factory_model(kind, d1, d2), factory_model(kind, d1, d2 + 2)
    assert hi.error_per_state <= lo.error_per_state
    assert hi.cycles_per_state > lo.cycles_per_state
    if d1 + 2 in D1_RANGE:
        up = factory_model(kind, d1 + 2, d2)
        assert up.error_per_state <= lo.error_per_state
        assert up.footprint_w * up.footprint_h > lo.footprint_w * lo.footprint_h


@given(st.floats(1e-7, 1e-5), st.floats(1e-6, 1e-4))
def test_factories_keep_up_with_reaction_time(cycle, reaction):
    m = factory_model(FactoryKind.CCZ, 17, 27)
    count = m.factories_needed(cycle, reaction)
    assert count >= 1
    assert count * reaction >= m.cycles_per_state * cycle * (1 - 1e-6)
