"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from discphase import BlaschkeProduct


def random_blaschke(
    rng: np.random.Generator,
    degree: int,
    max_modulus: float = 0.85,
    min_separation: float = 0.05,
    unimodular_constant: bool = True,
) -> BlaschkeProduct:
    """Blaschke product with well-separated random zeros."""
    zeros: list[complex] = []
    while len(zeros) < degree:
        z = max_modulus * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - w) >= min_separation for w in zeros):
            zeros.append(complex(z))
    constant = np.exp(2j * np.pi * rng.uniform()) if unimodular_constant else 1.0
    return BlaschkeProduct(complex(constant), tuple(zeros))


def random_outer_coeffs(rng: np.random.Generator, count: int, max_modulus: float = 0.5):
    """Coefficients c_j for an outer product prod (1 + c_j z)."""
    return [
        complex(max_modulus * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        for _ in range(count)
    ]


def outer_product_fn(coeffs):
    """The function z -> prod_j (1 + c_j z) (outer: no zeros in the closed disc)."""

    def fn(z):
        zz = np.asarray(z, dtype=complex)
        out = np.ones(zz.shape, dtype=complex)
        for c in coeffs:
            out = out * (1.0 + c * zz)
        return complex(out) if zz.ndim == 0 else out

    return fn
