"""Independent oracles used by the tests.

These deliberately avoid the library's own code paths: the Fourier norm
is a direct double loop with ``cmath``, the singular-value oracle goes
through LAPACK, and the bracket oracle is an exhaustive scan of the
action table.
"""

from __future__ import annotations

import cmath

import numpy as np


def dft_norm(coefficients: list[complex]) -> float:
    """max_k |sum_j c_j e^(-2 pi i j k / n)| by brute force."""
    n = len(coefficients)
    best = 0.0
    for k in range(n):
        total = 0.0 + 0.0j
        for j, c in enumerate(coefficients):
            total += c * cmath.exp(-2j * cmath.pi * j * k / n)
        best = max(best, abs(total))
    return best


def svd_norm(matrix) -> float:
    """Largest singular value through LAPACK."""
    m = np.asarray(matrix, dtype=complex)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def brute_left_bracket(Z, y: str, z: str) -> list[str]:
    """Every left arrow gamma with gamma * z == y, by scanning the table."""
    return sorted(
        gamma for (gamma, zz), out in Z.left_action.items() if zz == z and out == y
    )


def brute_right_bracket(Z, y: str, z: str) -> list[str]:
    """Every right arrow eta with y * eta == z, by scanning the table."""
    return sorted(
        eta for (yy, eta), out in Z.right_action.items() if yy == y and out == z
    )


def cyclic_index(arrow_id: str) -> int:
    """Exponent of a cyclic-group arrow id of the form g<k>."""
    assert arrow_id.startswith("g")
    return int(arrow_id[1:])
