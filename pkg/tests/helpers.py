"""Shared builders for randomized test inputs. Oracles live in the tests."""

from __future__ import annotations

import numpy as np

X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.array([[1.0, 0.0], [0.0, -1.0]])
HADAMARD_DIR = (X + Z) / np.sqrt(2.0)


def random_symmetric(rng: np.random.Generator, d: int, scale: float = 1.0) -> np.ndarray:
    a = rng.standard_normal((d, d))
    return scale * 0.5 * (a + a.T)


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def random_reflection(
    rng: np.random.Generator, d: int, positive: int | None = None
) -> np.ndarray:
    """Random symmetric involution with `positive` +1 eigenvalues (1..d-1)."""
    if positive is None:
        positive = int(rng.integers(1, d))
    u = random_orthogonal(rng, d)
    signs = np.array([1.0] * positive + [-1.0] * (d - positive))
    return (u * signs) @ u.T


def random_projective_measurement(
    rng: np.random.Generator, d: int, outputs: int
) -> list[np.ndarray]:
    """Random rank-partitioned projective measurement (real) as raw projections."""
    u = random_orthogonal(rng, d)
    sizes = [d // outputs] * outputs
    for i in range(d % outputs):
        sizes[i] += 1
    projs = []
    start = 0
    for size in sizes:
        cols = u[:, start : start + size]
        projs.append(cols @ cols.T)
        start += size
    return projs


def random_schmidt_coeffs(rng: np.random.Generator, d: int) -> np.ndarray:
    lam = rng.uniform(0.35, 1.0, size=d)
    return lam / np.linalg.norm(lam)
