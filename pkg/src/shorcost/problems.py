"""Cryptographic problem families and their exponent lengths."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class ProblemKind(enum.Enum):
    RSA_VIA_SHORT_DLOG = "RsaViaShortDlog"
    SCHNORR_GROUP_DLOG = "SchnorrGroupDlog"
    SAFE_PRIME_SHORT_DLOG = "SafePrimeShortDlog"
    SAFE_PRIME_FULL_DLOG = "SafePrimeFullDlog"
    KNOWN_ORDER_SHOR_DLOG = "KnownOrderShorDlog"


# Classical security z (bits) per modulus length, rounded to multiples of 8.
SECURITY_LEVELS = {
    1024: 80,
    2048: 112,
    3072: 128,
    4096: 152,
    8192: 200,
    12288: 240,
    16384: 272,
}

TABLE_MODULI = tuple(SECURITY_LEVELS)

# Padding bits added to each of the two exponent registers of the
# known-order Shor variant.
SHOR_EXPONENT_PADDING = 5


class UnsupportedModulus(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    kind: ProblemKind
    n: int
    n_e: int
    z: Optional[int] = None
    n_d: Optional[int] = None
    n_r: Optional[int] = None

    def __post_init__(self):
        if self.n_e <= 0:
            raise ValueError(f"exponent length must be positive, got {self.n_e}")


def security_level(n: int) -> int:
    """Tabulated classical security level for an n-bit modulus.

    Only the tabulated lengths are supported; there is no interpolation.
    """
    try:
        return SECURITY_LEVELS[n]
    except KeyError:
        raise UnsupportedModulus(
            f"unsupported modulus length {n}; known lengths are {sorted(SECURITY_LEVELS)}"
        ) from None


def exponent_length(kind: ProblemKind, n: int, z: Optional[int] = None,
                    n_r: Optional[int] = None) -> int:
    """Total number of exponent qubits n_e for a problem family.

    ``z`` is required by the short-exponent and Schnorr kinds. ``n_r`` is the
    group-order length used by the known-order Shor variant (defaults to
    ``n - 1``, i.e. a safe-prime group).
    """
    if not isinstance(kind, ProblemKind):
        raise ValueError(f"unknown problem kind: {kind!r}")
    if n < 16:
        raise ValueError(f"modulus length must be at least 16 bits, got {n}")

    if kind is ProblemKind.RSA_VIA_SHORT_DLOG:
        if n % 2:
            raise ValueError(f"RSA formula requires even n, got n={n}")
        n_e = 3 * (n // 2 - 1) - 40
    elif kind in (ProblemKind.SCHNORR_GROUP_DLOG, ProblemKind.SAFE_PRIME_SHORT_DLOG):
        if z is None or z <= 0:
            raise ValueError(f"{kind.value} needs a positive security level z")
        n_e = 6 * z
    elif kind is ProblemKind.SAFE_PRIME_FULL_DLOG:
        n_e = 3 * (n - 1)
    else:
        if n_r is None:
            n_r = n - 1
        n_e = 2 * (n_r + SHOR_EXPONENT_PADDING)

    if n_e <= 0:
        raise ValueError(f"n={n} gives a non-positive exponent length ({n_e})")
    return n_e


def make_instance(kind: ProblemKind, n: int, z: Optional[int] = None,
                  n_r: Optional[int] = None) -> ProblemInstance:
    """Build a ProblemInstance, filling n_d/n_r per the group parameterization."""
    if kind is ProblemKind.RSA_VIA_SHORT_DLOG:
        return ProblemInstance(kind, n, exponent_length(kind, n), z=z)
    if z is None:
        needs_z = kind in (ProblemKind.SCHNORR_GROUP_DLOG, ProblemKind.SAFE_PRIME_SHORT_DLOG)
        z = security_level(n) if needs_z else SECURITY_LEVELS.get(n)
    if kind is ProblemKind.SCHNORR_GROUP_DLOG:
        n_d, n_r = 2 * z, 2 * z
    elif kind is ProblemKind.SAFE_PRIME_SHORT_DLOG:
        n_d, n_r = 2 * z, n - 1
    elif kind is ProblemKind.SAFE_PRIME_FULL_DLOG:
        n_d, n_r = n - 1, n - 1
    else:
        if n_r is None:
            n_r = n - 1
        n_d = n_r
    return ProblemInstance(kind, n, exponent_length(kind, n, z, n_r), z=z, n_d=n_d, n_r=n_r)


# family name -> (kind, whether the group order is a Schnorr subgroup)
FAMILIES = {
    "rsa": (ProblemKind.RSA_VIA_SHORT_DLOG, False),
    "dlp-schnorr": (ProblemKind.SCHNORR_GROUP_DLOG, True),
    "dlp-safe-short": (ProblemKind.SAFE_PRIME_SHORT_DLOG, False),
    "dlp-safe-full": (ProblemKind.SAFE_PRIME_FULL_DLOG, False),
    "dlp-schnorr-shor": (ProblemKind.KNOWN_ORDER_SHOR_DLOG, True),
    "dlp-safe-shor": (ProblemKind.KNOWN_ORDER_SHOR_DLOG, False),
}


def family_instance(family: str, n: int) -> ProblemInstance:
    try:
        kind, schnorr = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown problem family {family!r}; choose from {sorted(FAMILIES)}") from None
    if kind is ProblemKind.RSA_VIA_SHORT_DLOG:
        return make_instance(kind, n, z=SECURITY_LEVELS.get(n))
    if kind is ProblemKind.KNOWN_ORDER_SHOR_DLOG and schnorr:
        z = security_level(n)
        return make_instance(kind, n, z=z, n_r=2 * z)
    return make_instance(kind, n)


def catalog() -> list[ProblemInstance]:
    """Every row of the RSA table and the two discrete-logarithm tables."""
    return [family_instance(family, n) for family in FAMILIES for n in TABLE_MODULI]
