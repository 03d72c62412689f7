"""Classical recovery of p and q from d = p + q and N = p q."""

from __future__ import annotations

import math


class PostProcessingFailure(ValueError):
    """The measured sum does not correspond to an integer factorization."""


def recover_factors_from_sum(d: int, N: int) -> tuple[int, int]:
    """Roots of x^2 - d x + N = 0, smaller first."""
    if d <= 0 or N <= 0:
        raise ValueError("d and N must be positive integers")
    disc = d * d - 4 * N
    if disc < 0:
        raise PostProcessingFailure(f"d={d} is too small for N={N}: negative discriminant")
    root = math.isqrt(disc)
    if root * root != disc or (d - root) % 2:
        raise PostProcessingFailure(f"x^2 - {d}x + {N} has no integer roots")
    p, q = (d - root) // 2, (d + root) // 2
    return p, q
