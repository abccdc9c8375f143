"""Spans of symmetric matrices, Jordan products, closures, and cut points.

The Jordan product a*b = (ab + ba)/2 keeps symmetric matrices symmetric; the
closure of a family under it (together with the identity) is the algebra that
controls which binary observables the family can certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULTS, Settings
from .errors import DimMismatch, EmptyInput
from .linalg import (
    as_square_matrix,
    extend_orthonormal_rows,
    frobenius_inner,
    orthonormal_rows,
    require_symmetric,
    sym_eig,
)


@dataclass(frozen=True, eq=False)
class SpanBasis:
    """Orthonormal (Frobenius) basis for a span of real symmetric matrices.

    Attributes
    ----------
    matrix_dim:
        Ambient matrix size d (elements are d x d).
    basis:
        Tuple of orthonormal symmetric matrices spanning the space.
    tol:
        Relative residual threshold used for membership decisions.
    """

    matrix_dim: int
    basis: tuple[np.ndarray, ...]
    tol: float

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def rows(self) -> np.ndarray:
        """The basis as vectorized orthonormal rows, shape (dimension, d*d)."""
        if not self.basis:
            return np.zeros((0, self.matrix_dim * self.matrix_dim))
        return np.array([b.ravel() for b in self.basis])


def _validated_family(
    mats: Sequence[np.ndarray], sym_tol: float
) -> tuple[list[np.ndarray], int]:
    mats = list(mats)
    if not mats:
        raise EmptyInput("need at least one matrix")
    cleaned = [require_symmetric(m, sym_tol) for m in mats]
    d = cleaned[0].shape[0]
    for m in cleaned[1:]:
        if m.shape[0] != d:
            raise DimMismatch(f"mixed matrix sizes: {m.shape[0]} vs {d}")
    return cleaned, d


def _rows_to_basis(q: np.ndarray, d: int) -> tuple[np.ndarray, ...]:
    out = []
    for row in q:
        m = row.reshape(d, d)
        out.append(0.5 * (m + m.T))
    return tuple(out)


def span_basis(
    mats: Sequence[np.ndarray],
    tol: float | None = None,
    *,
    settings: Settings | None = None,
) -> SpanBasis:
    """Orthonormal basis of span{mats} for real symmetric matrices.

    The basis size equals ``numerical_rank(mats, tol)``. Raises EmptyInput for
    an empty family and DimMismatch on inconsistent sizes.
    """
    s = settings or DEFAULTS
    if tol is None:
        tol = s.membership_tol
    cleaned, d = _validated_family(mats, s.sym_tol)
    q, _ = orthonormal_rows(np.array([m.ravel() for m in cleaned]), tol)
    return SpanBasis(matrix_dim=d, basis=_rows_to_basis(q, d), tol=tol)


def contains(
    b: SpanBasis, m: np.ndarray, tol: float | None = None
) -> tuple[bool, np.ndarray, float]:
    """Test span membership of a symmetric matrix.

    Returns
    -------
    (member, coefficients, residual):
        ``coefficients`` are the Frobenius projections onto the orthonormal
        basis; ``member`` is True when the residual is at most
        ``tol * max(1, ||m||_F)`` with ``tol`` defaulting to the basis tol.
    """
    a = require_symmetric(m)
    if a.shape[0] != b.matrix_dim:
        raise DimMismatch(f"matrix is {a.shape[0]}x{a.shape[0]}, span is over {b.matrix_dim}")
    if tol is None:
        tol = b.tol
    coeffs = np.array([frobenius_inner(e, a) for e in b.basis])
    recon = np.zeros_like(a)
    for c, e in zip(coeffs, b.basis):
        recon += c * e
    residual = float(np.linalg.norm(a - recon))
    member = residual <= tol * max(1.0, float(np.linalg.norm(a)))
    return member, coeffs, residual


def jordan_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Symmetrized product (ab + ba)/2; symmetric whenever both inputs are."""
    x = as_square_matrix(a)
    y = as_square_matrix(b)
    if x.shape != y.shape:
        raise DimMismatch(f"shape mismatch: {x.shape} vs {y.shape}")
    return 0.5 * (x @ y + y @ x)


def jordan_closure(
    generators: Sequence[np.ndarray],
    extra_generators: Sequence[np.ndarray] = (),
    tol: float | None = None,
    *,
    settings: Settings | None = None,
) -> tuple[SpanBasis, int]:
    """Close span{I, generators, extra_generators} under the Jordan product.

    Parameters
    ----------
    generators:
        Symmetric matrices (binary observables in the main use case).
    extra_generators:
        Optional additional symmetric seeds merged before iterating.
    tol:
        Span tolerance; defaults to the membership tolerance.

    Returns
    -------
    (basis, iterations):
        ``basis`` spans the closure (it contains the identity and every
        generator); ``iterations`` counts the sweeps in which the dimension
        strictly grew. For binary generators this is at most ceil(2*log2 d),
        since each sweep at least doubles the reachable word length.
    """
    s = settings or DEFAULTS
    if tol is None:
        tol = s.membership_tol
    gens, d = _validated_family(generators, s.sym_tol)
    extras = [require_symmetric(m, s.sym_tol) for m in extra_generators]
    for m in extras:
        if m.shape[0] != d:
            raise DimMismatch("extra generator size differs from generators")
    seeds = [np.eye(d)] + gens + extras
    q, _ = orthonormal_rows(np.array([m.ravel() for m in seeds]), tol)
    iterations = 0
    fresh_from = 0
    while True:
        mats = [0.5 * (row.reshape(d, d) + row.reshape(d, d).T) for row in q]
        n = len(mats)
        products = []
        for i in range(n):
            for j in range(max(i, fresh_from), n):
                products.append(jordan_product(mats[i], mats[j]).ravel())
        q2, added = extend_orthonormal_rows(q, products, tol)
        if added == 0:
            break
        fresh_from = n
        q = q2
        iterations += 1
    basis = SpanBasis(matrix_dim=d, basis=_rows_to_basis(q, d), tol=tol)
    return basis, iterations


def cut_point_observables(
    h: np.ndarray, *, settings: Settings | None = None
) -> list[np.ndarray]:
    """Binary observables sgn(h - r I) for midpoints r between distinct eigenvalues.

    Consecutive eigenvalues closer than ``singular_tol`` (relative) are treated
    as one cluster. A scalar multiple of the identity therefore yields an empty
    list. Each returned matrix is an exact involution by construction (signs
    are applied in the eigenbasis).
    """
    s = settings or DEFAULTS
    vals, vecs = sym_eig(h, settings=s)
    d = vals.size
    scale = max(1.0, float(np.max(np.abs(vals))) if d else 0.0)
    gap_tol = s.singular_tol * scale
    cuts = []
    for i in range(d - 1):
        if vals[i] - vals[i + 1] > gap_tol:
            signs = np.where(np.arange(d) <= i, 1.0, -1.0)
            m = (vecs * signs) @ vecs.T
            cuts.append(0.5 * (m + m.T))
    return cuts


def has_trivial_centralizer(
    generators: Sequence[np.ndarray],
    tol: float = 1e-9,
    *,
    settings: Settings | None = None,
) -> bool:
    """Whether only multiples of the identity commute with every generator.

    The commutant is computed as the null space of the stacked operators
    S -> SG - GS over all real d x d matrices; triviality means nullity 1.
    """
    s = settings or DEFAULTS
    gens, d = _validated_family(generators, s.sym_tol)
    eye = np.eye(d)
    blocks = [np.kron(g, eye) - np.kron(eye, g) for g in gens]
    stacked = np.vstack(blocks)
    sv = np.linalg.svd(stacked, compute_uv=False)
    smax = float(sv[0]) if sv.size else 0.0
    nullity = int(np.sum(sv <= tol * max(1.0, smax)))
    return nullity == 1


def degeneracy_possible(d: int, n: int, maximally_entangled: bool = False) -> bool:
    """Dimension-counting test for indistinguishable binary observables.

    With d the local dimension and n the number of reference observables, a
    degenerate pair generically exists whenever floor(d^2/4) exceeds n+1
    (n for a maximally entangled state, whose identity marginal is fixed).
    """
    fiber = (d * d) // 4
    if maximally_entangled:
        return fiber > n
    return fiber > n + 1
