"""Dense symmetric linear algebra used everywhere else in the package.

The eigensolver is a cyclic Jacobi iteration written out explicitly so that
eigenvalue ordering, eigenvector signs and tie-breaking are fully deterministic
across platforms; numpy is used for array arithmetic and for utility
factorizations (SVD null spaces, least squares) only.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULTS, Settings
from .errors import DimMismatch, EmptyInput, NotSymmetric


class EigenDecomposition(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


class SignImage(NamedTuple):
    """Result of the matrix sign map: the image and a singularity flag."""

    matrix: np.ndarray
    singular: bool


def as_square_matrix(h: np.ndarray, *, allow_complex: bool = False) -> np.ndarray:
    """Coerce to a square 2-d ndarray, raising DimMismatch otherwise."""
    a = np.asarray(h)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
    if np.iscomplexobj(a):
        if not allow_complex:
            if np.max(np.abs(a.imag)) > 0:
                raise NotSymmetric("expected a real matrix, got complex entries")
            a = a.real
        return a.astype(complex)
    return a.astype(float)


def require_symmetric(h: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Validate symmetry of a real matrix and return its symmetrized copy.

    Asymmetry is measured entrywise, relative to max(1, max|H|).
    """
    if tol is None:
        tol = DEFAULTS.sym_tol
    a = as_square_matrix(h)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    gap = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if gap > tol * scale:
        raise NotSymmetric(f"matrix is not symmetric: max |H - H^T| = {gap:.3e}")
    return 0.5 * (a + a.T)


def require_hermitian(h: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Validate Hermiticity (complex allowed) and return the Hermitized copy."""
    if tol is None:
        tol = DEFAULTS.sym_tol
    a = as_square_matrix(h, allow_complex=True)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    gap = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if gap > tol * scale:
        raise NotSymmetric(f"matrix is not Hermitian: max |H - H^dag| = {gap:.3e}")
    return 0.5 * (a + a.conj().T)


def frobenius_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius inner product Tr[A^dag B], returned as a real scalar.

    For real matrices this is Tr[A^T B] = sum_ij A_ij B_ij. Raises DimMismatch
    when the shapes differ.
    """
    x = np.asarray(a)
    y = np.asarray(b)
    if x.shape != y.shape:
        raise DimMismatch(f"shape mismatch: {x.shape} vs {y.shape}")
    return float(np.vdot(x, y).real)


def _canonical_columns(vals: np.ndarray, vecs: np.ndarray) -> EigenDecomposition:
    """Sort eigenpairs descending with sign-canonicalized, lexicographic tie-break."""
    d = vals.size
    cols = []
    for i in range(d):
        u = vecs[:, i].copy()
        nz = np.flatnonzero(np.abs(u) > 1e-12)
        j = int(nz[0]) if nz.size else 0
        if u[j] < 0.0:
            u = -u
        cols.append(u)
    order = sorted(range(d), key=lambda i: (-vals[i], tuple(-cols[i])))
    values = np.array([vals[i] for i in order])
    vectors = np.column_stack([cols[i] for i in order]) if d else np.zeros((0, 0))
    return EigenDecomposition(values, vectors)


def sym_eig(h: np.ndarray, *, settings: Settings | None = None) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Parameters
    ----------
    h:
        Real square matrix, symmetric to within ``settings.sym_tol``
        (raises NotSymmetric otherwise). It is symmetrized before iterating.
    settings:
        Tolerance bundle; defaults to the package-wide defaults.

    Returns
    -------
    EigenDecomposition
        ``values`` descending; ``vectors[:, i]`` is the unit eigenvector of
        ``values[i]``, sign-fixed so its first component of magnitude > 1e-12
        is positive. Ties in the eigenvalues are broken lexicographically on
        the eigenvectors, making the output deterministic.
    """
    s = settings or DEFAULTS
    a = require_symmetric(h, s.sym_tol)
    d = a.shape[0]
    if d == 0:
        raise EmptyInput("cannot decompose an empty matrix")
    if d == 1:
        return EigenDecomposition(np.array([float(a[0, 0])]), np.eye(1))
    v = np.eye(d)
    target = s.jacobi_tol * float(np.linalg.norm(a))
    converged = False
    for _sweep in range(100):
        # measure the off-diagonal mass directly: the difference-of-sums form
        # sqrt(||A||^2 - ||diag||^2) has a cancellation floor near sqrt(eps)*||A||
        b = a.copy()
        np.fill_diagonal(b, 0.0)
        off = float(np.linalg.norm(b))
        if off <= target:
            converged = True
            break
        skip = target / (d * d) if target > 0.0 else 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - sn * rq
                a[q, :] = sn * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - sn * cq
                a[:, q] = sn * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - sn * vq
                v[:, q] = sn * vp + c * vq
    if not converged:
        raise RuntimeError("Jacobi eigensolver failed to converge in 100 sweeps")
    return _canonical_columns(np.diag(a).copy(), v)


def sgn_map(h: np.ndarray, *, settings: Settings | None = None) -> SignImage:
    """Matrix sign of a real symmetric matrix via functional calculus.

    Eigenvalues with magnitude below ``singular_tol`` (relative to
    max(1, max|lambda|)) map to 0 and raise the ``singular`` flag; the image is
    then a proper involution only on the nonsingular eigenspaces. The map is
    invariant under positive rescaling of nonsingular input.
    """
    s = settings or DEFAULTS
    vals, vecs = sym_eig(h, settings=s)
    scale = max(1.0, float(np.max(np.abs(vals))) if vals.size else 0.0)
    small = np.abs(vals) < s.singular_tol * scale
    signs = np.where(small, 0.0, np.sign(vals))
    m = (vecs * signs) @ vecs.T
    return SignImage(0.5 * (m + m.T), bool(np.any(small)))


def orthonormal_rows(
    rows: np.ndarray, tol: float | None = None
) -> tuple[np.ndarray, list[int]]:
    """Pivoted modified Gram-Schmidt over the rows of a real matrix.

    Pivots on the largest residual row each step and runs a second
    orthogonalization pass on the accepted vector. A row is dropped once its
    residual norm falls below ``tol * max(1, largest original row norm)``, so
    the returned count is stable under reordering of the input rows.

    Returns
    -------
    (q, kept):
        ``q`` has orthonormal rows spanning the input rows; ``kept`` lists the
        selected input indices in pivot order.
    """
    if tol is None:
        tol = DEFAULTS.mgs_tol
    work = np.array(rows, dtype=float, copy=True)
    if work.ndim != 2:
        work = work.reshape(len(work), -1)
    n, m = work.shape
    if n == 0:
        return np.zeros((0, m)), []
    thresh = tol * max(1.0, float(np.max(np.linalg.norm(work, axis=1))))
    kept: list[int] = []
    qs: list[np.ndarray] = []
    remaining = list(range(n))
    while remaining:
        res = np.linalg.norm(work[remaining], axis=1)
        k = int(np.argmax(res))
        if res[k] <= thresh:
            break
        i = remaining.pop(k)
        u = work[i] / np.linalg.norm(work[i])
        for qrow in qs:
            u = u - np.dot(qrow, u) * qrow
        nu = float(np.linalg.norm(u))
        if nu <= tol:
            continue
        u = u / nu
        qs.append(u)
        kept.append(i)
        for j in remaining:
            work[j] = work[j] - np.dot(u, work[j]) * u
    q = np.array(qs) if qs else np.zeros((0, m))
    return q, kept


def extend_orthonormal_rows(
    q: np.ndarray, rows: Sequence[np.ndarray], tol: float | None = None
) -> tuple[np.ndarray, int]:
    """Grow an orthonormal row set with whichever new rows extend its span.

    Candidates are processed in index order (deterministic merging). Each is
    orthogonalized twice against the current set; it is accepted when the
    residual exceeds ``tol * max(1, ||row||)``.

    Returns the extended orthonormal array and the number of rows accepted.
    """
    if tol is None:
        tol = DEFAULTS.mgs_tol
    qs = [np.asarray(r, dtype=float) for r in q]
    width = q.shape[1] if len(qs) == 0 else qs[0].size
    added = 0
    for row in rows:
        r = np.asarray(row, dtype=float).ravel()
        scale = max(1.0, float(np.linalg.norm(r)))
        u = r.copy()
        for _ in range(2):
            for qrow in qs:
                u = u - np.dot(qrow, u) * qrow
        nu = float(np.linalg.norm(u))
        if nu <= tol * scale:
            continue
        qs.append(u / nu)
        added += 1
    out = np.array(qs) if qs else np.zeros((0, width))
    return out, added


def numerical_rank(mats: Sequence[np.ndarray], tol: float | None = None) -> int:
    """Dimension of the span of a family of equal-shaped real matrices.

    Matrices are vectorized and run through the pivoted orthogonalizer; the
    rank is the number of surviving directions. Raises EmptyInput for an empty
    family and DimMismatch on inconsistent shapes.
    """
    if tol is None:
        tol = DEFAULTS.membership_tol
    mats = list(mats)
    if not mats:
        raise EmptyInput("numerical_rank needs at least one matrix")
    shape = np.asarray(mats[0]).shape
    rows = []
    for m in mats:
        a = np.asarray(m, dtype=float)
        if a.shape != shape:
            raise DimMismatch(f"shape mismatch in family: {a.shape} vs {shape}")
        rows.append(a.ravel())
    q, _ = orthonormal_rows(np.array(rows), tol)
    return q.shape[0]


def realify(m: np.ndarray) -> np.ndarray:
    """Real 2d x 2d embedding [[Re, -Im], [Im, Re]] of a complex d x d matrix.

    Hermitian inputs map to symmetric outputs, positive definiteness is
    preserved, and traces double.
    """
    a = as_square_matrix(m, allow_complex=True)
    re, im = a.real, a.imag
    top = np.hstack([re, -im])
    bot = np.hstack([im, re])
    return np.vstack([top, bot])


def derealify(r: np.ndarray) -> np.ndarray:
    """Inverse of :func:`realify` (averages the redundant blocks)."""
    a = as_square_matrix(r)
    n = a.shape[0]
    if n % 2 != 0:
        raise DimMismatch("realified matrix must have even dimension")
    d = n // 2
    re = 0.5 * (a[:d, :d] + a[d:, d:])
    im = 0.5 * (a[d:, :d] - a[:d, d:])
    return re + 1j * im
