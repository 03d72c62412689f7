import pytest
from hypothesis import given, strategies as st

from shorcost.problems import (
    FAMILIES,
    TABLE_MODULI,
    ProblemInstance,
    ProblemKind,
    UnsupportedModulus,
    catalog,
    exponent_length,
    family_instance,
    make_instance,
    security_level,
)


@pytest.mark.parametrize("n, expected", [(1024, 1493), (2048, 3029), (3072, 4565), (16384, 24533)])
def test_rsa_exponent_length(n, expected):
    assert exponent_length(ProblemKind.RSA_VIA_SHORT_DLOG, n) == expected


def test_family_exponent_lengths_at_2048():
    got = {f: family_instance(f, 2048).n_e for f in FAMILIES}
    assert got == {
        "rsa": 3029,
        "dlp-schnorr": 672,
        "dlp-safe-short": 672,
        "dlp-safe-full": 6141,
        "dlp-schnorr-shor": 458,
        "dlp-safe-shor": 4104,
    }


def test_group_parameterizations():
    s = make_instance(ProblemKind.SCHNORR_GROUP_DLOG, 3072)
    assert (s.z, s.n_d, s.n_r) == (128, 256, 256)
    short = make_instance(ProblemKind.SAFE_PRIME_SHORT_DLOG, 3072)
    assert (short.n_d, short.n_r) == (256, 3071)
    full = make_instance(ProblemKind.SAFE_PRIME_FULL_DLOG, 3072)
    assert (full.n_d, full.n_r) == (3071, 3071)


def test_security_levels_are_tabulated_only():
    assert [security_level(n) for n in TABLE_MODULI] == [80, 112, 128, 152, 200, 240, 272]
    with pytest.raises(UnsupportedModulus, match="unsupported modulus length 2000"):
        security_level(2000)


def test_invalid_inputs():
    with pytest.raises(ValueError, match="even n"):
        exponent_length(ProblemKind.RSA_VIA_SHORT_DLOG, 2047)
    with pytest.raises(ValueError, match="non-positive"):
        exponent_length(ProblemKind.RSA_VIA_SHORT_DLOG, 26)
    with pytest.raises(ValueError, match="at least 16"):
        exponent_length(ProblemKind.SAFE_PRIME_FULL_DLOG, 8)
    with pytest.raises(ValueError, match="security level"):
        exponent_length(ProblemKind.SCHNORR_GROUP_DLOG, 2048)
    with pytest.raises(ValueError, match="unknown problem kind"):
        exponent_length("rsa", 2048)
    with pytest.raises(ValueError, match="unknown problem family"):
        family_instance("ecc", 256)
    with pytest.raises(ValueError):
        ProblemInstance(ProblemKind.RSA_VIA_SHORT_DLOG, 2048, 0)


def test_catalog_covers_every_table_row():
    rows = catalog()
    assert len(rows) == len(FAMILIES) * len(TABLE_MODULI) == 42
    assert len({(r.kind, r.n, r.n_e, r.n_r) for r in rows}) == 42


@given(st.integers(min_value=16, max_value=20_000).map(lambda h: 2 * h))
def test_rsa_exponent_grows_like_one_and_a_half_n(n):
    n_e = exponent_length(ProblemKind.RSA_VIA_SHORT_DLOG, n)
    assert n_e == 3 * (n // 2 - 1) - 40
    assert n_e < 1.5 * n


@given(st.integers(min_value=16, max_value=50_000))
def test_shor_variant_needs_more_qubits_than_order(n):
    n_e = exponent_length(ProblemKind.KNOWN_ORDER_SHOR_DLOG, n)
    assert n_e == 2 * (n - 1) + 10
    assert n_e < exponent_length(ProblemKind.SAFE_PRIME_FULL_DLOG, n)
