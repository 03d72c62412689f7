import pytest
from hypothesis import given, strategies as st

from shorcost.optimizer import make_table
from shorcost.reports import ReportRow, format_csv, format_json, parse_json, render, two_sig, write_report


@pytest.mark.parametrize("x, text", [
    (0.0567, "0.057"), (5.94, "5.9"), (1846.3, "1800"), (9.96, "10"), (0.0999, "0.10"),
    (21.0, "21"), (0.0, "0"), (float("inf"), "inf"), (123456789.0, "120000000"),
])
def test_two_sig(x, text):
    assert two_sig(x) == text


@given(st.floats(1e-9, 1e12))
def test_two_sig_keeps_two_significant_figures(x):
    text = two_sig(x)
    assert "e" not in text
    assert float(text) == pytest.approx(x, rel=0.051)
    assert len(text.replace("0.", "", 1).lstrip("0").rstrip("0").replace(".", "")) <= 2


@pytest.fixture(scope="module")
def rows():
    rsa = [ReportRow.from_report(r) for r in make_table("rsa")]
    schnorr = [ReportRow.from_report(r) for r in make_table("dlp-schnorr")]
    return {"rsa": rsa, "dlp-schnorr": schnorr}


@pytest.mark.parametrize("family, golden", [("rsa", "rsa_table.csv"), ("dlp-schnorr", "dlp_schnorr_table.csv")])
def test_csv_golden(rows, golden_dir, tmp_path, family, golden):
    out = tmp_path / "t.csv"
    write_report(rows[family], "csv", out)
    assert out.read_bytes() == (golden_dir / golden).read_bytes()


def test_json_round_trip(rows):
    text = format_json(rows["rsa"])
    assert parse_json(text) == rows["rsa"]
    assert render(rows["rsa"], "json") == text


def test_csv_header_and_render(rows):
    text = format_csv(rows["rsa"][:1])
    assert text.splitlines()[0] == ("n,n_e,d1,d2,delta_off,c_mul,c_exp,c_sep,retry_risk,"
                                    "volume_per_run,expected_volume,megaqubits,hours_per_run")
    assert "\r" not in text
    with pytest.raises(ValueError, match="unknown report format"):
        render(rows["rsa"], "xml")
