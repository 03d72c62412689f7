"""Abstract circuit model costs of windowed, coset-encoded modular exponentiation.

Everything here counts logical operations only: lookup additions, Toffolis,
dependent measurements and logical qubits. Distillation, routing and error
correction live in :mod:`shorcost.physical`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction


class FactoryKind(enum.Enum):
    CCZ = "CCZ"
    T = "T"


@dataclass(frozen=True, order=True)
class CostParams:
    d1: int = 17
    d2: int = 27
    delta_off: int = 10
    c_exp: int = 5
    c_mul: int = 5
    c_sep: int = 1024
    factory: FactoryKind = FactoryKind.CCZ

    def __post_init__(self):
        for name in ("d1", "d2", "delta_off", "c_exp", "c_mul", "c_sep"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    def sort_key(self):
        return (self.d1, self.d2, self.delta_off, self.c_exp, self.c_mul, self.c_sep,
                self.factory.value)


@dataclass(frozen=True)
class AbstractCosts:
    lookup_additions: int
    toffoli_count: int
    measurement_depth: int
    abstract_qubits: int
    c_pad: int


@dataclass(frozen=True)
class LookupCosts:
    compute: int
    uncompute: int
    uncompute_ancillae: int


@dataclass(frozen=True)
class BaselineCosts:
    reference: float
    coset: float
    windowed_half_lg: float


def padding_length(n: int, n_e: int, delta_off: int) -> int:
    """Coset padding / runway length c_pad for a padding offset.

    The logarithms are summed before rounding up so the result is an integer
    qubit count.
    """
    if n < 2 or n_e < 2:
        raise ValueError("n and n_e must be at least 2")
    return delta_off + math.ceil(2 * math.log2(n) + math.log2(n_e))


def effective_separation(n: int, c_sep: int) -> int:
    """Runway spacing actually realized; a spacing beyond n means one piece."""
    return min(c_sep, n)


def _c_pad(n, n_e, params, c_pad):
    return padding_length(n, n_e, params.delta_off) if c_pad is None else c_pad


def lookup_addition_count(n: int, n_e: int, params: CostParams, c_pad: int | None = None) -> int:
    """Exact number of lookup additions in the whole exponentiation.

    Each of the ceil(n_e/c_exp) windowed multiplications does two multiply-adds,
    and each multiply-add iterates over the main register bits, the coset
    padding and the folded single-qubit runways, c_mul bits per lookup addition.
    """
    if n_e < params.c_exp:
        raise ValueError(f"n_e={n_e} is smaller than the exponent window {params.c_exp}")
    c_pad = _c_pad(n, n_e, params, c_pad)
    folded_runways = math.ceil(n / params.c_sep) - 1
    factor_bits = n + c_pad + folded_runways
    return math.ceil(n_e / params.c_exp) * 2 * math.ceil(factor_bits / params.c_mul)


def lookup_addition_leading_term(n: int, n_e: int, params: CostParams) -> float:
    """Leading term 2 n n_e / (c_exp c_mul) * (c_sep + 1) / c_sep."""
    return 2 * n * n_e / (params.c_exp * params.c_mul) * (params.c_sep + 1) / params.c_sep


def lookup_costs(c_exp: int, c_mul: int, n: int) -> LookupCosts:
    if c_exp < 1 or c_mul < 1:
        raise ValueError("window sizes must be at least 1")
    size = 2 ** (c_exp + c_mul)
    root = math.ceil(math.sqrt(size))
    return LookupCosts(
        compute=size,
        uncompute=math.ceil(2 * math.sqrt(size)),
        uncompute_ancillae=max(0, root - n),
    )


def toffolis_per_lookup_addition(n: int, params: CostParams, c_pad: int) -> Fraction:
    """2n + c_pad n / c_sep + 2^(c_exp + c_mul), kept exact."""
    lookup = lookup_costs(params.c_exp, params.c_mul, n).compute
    return 2 * n + Fraction(c_pad * n, effective_separation(n, params.c_sep)) + lookup


def depth_per_lookup_addition(n: int, params: CostParams, c_pad: int) -> int:
    lookup = lookup_costs(params.c_exp, params.c_mul, n).compute
    return 2 * effective_separation(n, params.c_sep) + 2 * c_pad + lookup


def toffoli_count(n: int, n_e: int, params: CostParams, c_pad: int | None = None) -> int:
    c_pad = _c_pad(n, n_e, params, c_pad)
    total = lookup_addition_count(n, n_e, params, c_pad) * toffolis_per_lookup_addition(n, params, c_pad)
    return math.ceil(total)


def measurement_depth(n: int, n_e: int, params: CostParams, c_pad: int | None = None) -> int:
    c_pad = _c_pad(n, n_e, params, c_pad)
    return lookup_addition_count(n, n_e, params, c_pad) * depth_per_lookup_addition(n, params, c_pad)


def abstract_qubits(n: int, n_e: int, params: CostParams, c_pad: int | None = None) -> int:
    """Logical qubits: accumulator, workspace and lookup output registers, each
    padded and carrying runways, plus the exponent and factor window qubits."""
    c_pad = _c_pad(n, n_e, params, c_pad)
    register = n + c_pad * math.ceil(n / params.c_sep) + c_pad
    return 3 * register + params.c_exp + params.c_mul


def abstract_costs(n: int, n_e: int, params: CostParams) -> AbstractCosts:
    c_pad = padding_length(n, n_e, params.delta_off)
    return AbstractCosts(
        lookup_additions=lookup_addition_count(n, n_e, params, c_pad),
        toffoli_count=toffoli_count(n, n_e, params, c_pad),
        measurement_depth=measurement_depth(n, n_e, params, c_pad),
        abstract_qubits=abstract_qubits(n, n_e, params, c_pad),
        c_pad=c_pad,
    )


def baseline_costs(n: int, n_e: int) -> BaselineCosts:
    """Leading-term Toffoli counts of the unoptimized constructions.

    reference: controlled modular multiplication built from five-adder
    controlled modular additions; coset: the same with 4n-Toffoli controlled
    non-modular adders; windowed_half_lg: windows of size lg(n)/2.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    lg = math.log2(n)
    return BaselineCosts(
        reference=20 * n_e * n**2,
        coset=8 * n_e * n**2,
        windowed_half_lg=24 * n_e * n**2 / lg**2,
    )


def headline_toffolis(n: float) -> float:
    """0.3 n^3 + 0.0005 n^3 lg n, the n_e = 1.5 n RSA approximation."""
    return 0.3 * n**3 + 0.0005 * n**3 * math.log2(n)


def headline_qubits(n: float) -> float:
    return 3 * n + 0.002 * n * math.log2(n)


def headline_measurement_depth(n: float) -> float:
    return 500 * n**2 + n**2 * math.log2(n)
