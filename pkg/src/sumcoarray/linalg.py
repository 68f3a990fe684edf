"""Small dense linear algebra helpers."""
from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-10


def singular_values(M) -> np.ndarray:
    M = np.asarray(M)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def numerical_rank(M, tol: float = DEFAULT_TOL) -> int:
    """Count of singular values above ``tol * sigma_max`` (0 for the zero matrix)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Circularly-symmetric standard complex normal samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
