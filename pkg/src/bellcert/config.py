"""Numeric tolerances and solver knobs, with a single shared default instance.

All public functions take either a ``settings=`` keyword or individual
tolerance overrides; when omitted they fall back to :data:`DEFAULTS`.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import BadParams


@dataclass(frozen=True)
class Settings:
    """Package-wide tolerances.

    Attributes
    ----------
    sym_tol:
        Max allowed entrywise asymmetry |H - H^T| relative to max(1, max|H|).
    eig_tol:
        Tolerance for eigen-identities: involutions, idempotence, completeness,
        reconstruction residuals.
    singular_tol:
        Eigenvalues with |lambda| below this (relative to max(1, max|lambda|))
        are mapped to 0 by the matrix sign map and flagged as singular.
    feas_tol:
        Feasibility threshold for the post-hoc criterion: the verdict is
        "feasible" when the certified minimum eigenvalue exceeds +feas_tol,
        "infeasible" below -feas_tol, "marginal" in between.
    sdp_tol:
        Target accuracy of the minimum-trace solver's objective.
    membership_tol:
        Span-membership residual threshold, relative to max(1, ||M||_F).
        Also the default tolerance baked into span bases.
    mgs_tol:
        Drop threshold for the pivoted modified Gram-Schmidt orthogonalizer.
    jacobi_tol:
        The Jacobi eigensolver sweeps until the off-diagonal Frobenius mass
        is below jacobi_tol * ||H||_F.
    robustness_constant:
        Additive constant c in the (2*sqrt(TrQ/lmin Q)*lmax(D) + c)*eps term
        of the robustness bound. The default 2 is the conservative value the
        derivation supports end to end; 1 gives the tighter variant of the
        same bound.
    """

    sym_tol: float = 1e-10
    eig_tol: float = 1e-9
    singular_tol: float = 1e-8
    feas_tol: float = 1e-7
    sdp_tol: float = 1e-6
    membership_tol: float = 1e-8
    mgs_tol: float = 1e-12
    jacobi_tol: float = 1e-13
    robustness_constant: float = 2.0

    def replace(self, **overrides: float) -> "Settings":
        """Return a copy with the given fields replaced."""
        return dataclasses.replace(self, **overrides)

    @classmethod
    def from_file(cls, path: str | Path, base: "Settings | None" = None) -> "Settings":
        """Load overrides from a JSON file of {field: value} on top of `base`."""
        raw = json.loads(Path(path).read_text())
        if not isinstance(raw, dict):
            raise BadParams(f"settings file {path} must hold a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise BadParams(f"unknown settings key(s): {', '.join(unknown)}")
        start = base if base is not None else DEFAULTS
        return start.replace(**{k: float(v) for k, v in raw.items()})


DEFAULTS = Settings()
