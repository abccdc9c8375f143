"""Certification pipelines: reference strategies, extension plans, reports.

The workflow certifies a new binary observable (or, outcome by outcome, a
whole real projective measurement) against a fixed reference family. One
party keeps a spanning set of reference questions; the other party's extra
question is accepted exactly when the post-hoc criterion holds against that
set. ``iterative_plan`` schedules intermediate extensions for targets that
only become certifiable after both parties' families have grown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULTS, Settings
from .errors import (
    BadDimension,
    BadParams,
    InvalidMeasurement,
    SolverStall,
    Unreachable,
)
from .jordan import (
    SpanBasis,
    contains,
    cut_point_observables,
    jordan_closure,
    span_basis,
)
from .linalg import extend_orthonormal_rows, sym_eig
from .posthoc import (
    FeasibilityResult,
    _solve_pd_in_span,
    min_trace_Q,
    posthoc_feasible_binary,
    RobustnessParams,
)
from .serialize import encode_matrix
from .simplex import maximal_independent_subset, simplex_observables
from .strategies import (
    CorrelationTable,
    ProjectiveMeasurement,
    SchmidtState,
    Strategy,
    correlation_table,
    require_binary_observable,
)


def split_measurement(m: ProjectiveMeasurement) -> list[np.ndarray]:
    """Binary coarse-grainings 2 P_a - I, one per outcome.

    Each is a symmetric involution whenever the measurement is real
    projective, so an L-outcome measurement can be certified one outcome at a
    time through the binary machinery.
    """
    eye = np.eye(m.dim)
    return [require_binary_observable(2.0 * p - eye) for p in m.projections]


def merge_binary_split(observables: Sequence[np.ndarray]) -> ProjectiveMeasurement:
    """Inverse of split_measurement: P_a = (I + O_a)/2, validated as projective."""
    obs = [require_binary_observable(o) for o in observables]
    if not obs:
        raise BadParams("need at least one observable to merge")
    eye = np.eye(obs[0].shape[0])
    return ProjectiveMeasurement(tuple(0.5 * (eye + o) for o in obs))


def binary_certification_strategy(
    target: np.ndarray, *, settings: Settings | None = None
) -> Strategy:
    """Reference strategy certifying one binary observable post hoc.

    Bob holds the spanning reference family (d(d+1)/2 questions), Alice holds
    the d+1 simplex reflections plus the target as one extra question. The
    state is maximally entangled. Raises BadDimension for d < 3 and
    Unreachable if the target falls outside Bob's span (which cannot happen
    for a well-formed spanning family).
    """
    s = settings or DEFAULTS
    o = require_binary_observable(target, s.eig_tol)
    d = o.shape[0]
    if d < 3:
        raise BadDimension("the certification pipeline needs dimension >= 3")
    bob_mats, bob_labels = maximal_independent_subset(d, settings=s)
    member, _, _ = contains(span_basis([np.eye(d)] + bob_mats, settings=s), o)
    if not member:
        raise Unreachable("target observable is outside the reference span")
    alice_obs = simplex_observables(d) + [o]
    alice_labels = tuple(f"T{j}" for j in range(d + 1)) + ("O",)
    alice = tuple(
        ProjectiveMeasurement.from_observable(m, s.eig_tol) for m in alice_obs
    )
    bob = tuple(ProjectiveMeasurement.from_observable(m, s.eig_tol) for m in bob_mats)
    return Strategy(
        state=SchmidtState.maximally_entangled(d),
        alice=alice,
        bob=bob,
        alice_labels=alice_labels,
        bob_labels=tuple(bob_labels),
        meta={"kind": "binary-certification", "base_questions": d + 1},
    )


def measurement_certification_strategy(
    m: ProjectiveMeasurement, *, settings: Settings | None = None
) -> Strategy:
    """Reference strategy certifying every outcome of a projective measurement.

    Alice gets the d+1 simplex reflections plus one binary coarse-graining per
    outcome (labels O0, O1, ...); Bob keeps the spanning reference family.
    """
    s = settings or DEFAULTS
    d = m.dim
    if d < 3:
        raise BadDimension("the certification pipeline needs dimension >= 3")
    splits = split_measurement(m)
    bob_mats, bob_labels = maximal_independent_subset(d, settings=s)
    alice_obs = simplex_observables(d) + splits
    alice_labels = tuple(f"T{j}" for j in range(d + 1)) + tuple(
        f"O{a}" for a in range(m.outputs)
    )
    alice = tuple(
        ProjectiveMeasurement.from_observable(o, s.eig_tol) for o in alice_obs
    )
    bob = tuple(ProjectiveMeasurement.from_observable(o, s.eig_tol) for o in bob_mats)
    return Strategy(
        state=SchmidtState.maximally_entangled(d),
        alice=alice,
        bob=bob,
        alice_labels=alice_labels,
        bob_labels=tuple(bob_labels),
        meta={
            "kind": "measurement-certification",
            "base_questions": d + 1,
            "target_outputs": m.outputs,
        },
    )


# --------------------------------------------------------------------------
# iterative extension planning


@dataclass(frozen=True)
class PlanRound:
    """One extension round: which party gains which new binary observables."""

    party: str
    observables: tuple[np.ndarray, ...]

    def to_json_dict(self) -> dict:
        return {
            "party": self.party,
            "observables": [encode_matrix(o) for o in self.observables],
        }


@dataclass(frozen=True)
class IterativePlan:
    """Schedule of alternating extensions ending with the target question.

    The final round always belongs to the target's party ("alice") and
    contains the target itself; earlier rounds list helper observables, each
    certifiable against the other party's family at the time it is added.
    """

    rounds: tuple[PlanRound, ...]
    closure_dimension: int
    closure_iterations: int
    dim: int

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "closure_dimension": self.closure_dimension,
            "closure_iterations": self.closure_iterations,
            "rounds": [r.to_json_dict() for r in self.rounds],
        }


def _sign_reachable(
    span: SpanBasis, target: np.ndarray, settings: Settings, seed: int
) -> bool:
    """Whether target = sgn(H) for some H in the span (target @ H > 0)."""
    gens = [target @ b for b in span.basis]
    preferred = [span.rows() @ target.ravel()]
    value, _, stalled = _solve_pd_in_span(
        gens,
        settings=settings,
        seed=seed,
        restarts=8,
        maxiter=600,
        preferred=preferred,
    )
    if stalled:
        raise SolverStall(
            f"reachability check undecided (best lambda_min {value:.3e})"
        )
    return value > settings.feas_tol


def _extension_batch(
    source: SpanBasis,
    into: SpanBasis,
    rng: np.random.Generator,
    settings: Settings,
) -> tuple[list[np.ndarray], SpanBasis]:
    """Cut-point observables of random source elements that enlarge `into`.

    Every returned observable is sgn(H - rI) for some H in the source span,
    hence certifiable against the source party's family; only those that
    extend the destination span are kept.
    """
    q = into.rows()
    added_obs: list[np.ndarray] = []
    stale = 0
    budget = 6 * source.dimension + 20
    for _ in range(budget):
        if stale >= 8:
            break
        coeff = rng.standard_normal(source.dimension)
        h = np.zeros((source.matrix_dim, source.matrix_dim))
        for c, b in zip(coeff, source.basis):
            h += c * b
        got_new = False
        for o in cut_point_observables(h, settings=settings):
            q2, added = extend_orthonormal_rows(q, [o.ravel()], into.tol)
            if added:
                q = q2
                added_obs.append(o)
                got_new = True
        stale = 0 if got_new else stale + 1
    new_basis = SpanBasis(
        matrix_dim=into.matrix_dim,
        basis=tuple(0.5 * (r.reshape(into.matrix_dim, -1) + r.reshape(into.matrix_dim, -1).T) for r in q),
        tol=into.tol,
    )
    return added_obs, new_basis


def iterative_plan(
    initial_alice: Sequence[np.ndarray],
    target: np.ndarray,
    *,
    seed: int = 0,
    settings: Settings | None = None,
) -> IterativePlan:
    """Plan alternating extensions until the target becomes certifiable.

    Both parties start with the initial family (mirrored). A party may gain
    any observable that is the sign of a combination of the other party's
    current span; rounds alternate until the target is the sign of an element
    of Bob's span, at which point it joins Alice as the final round.

    Raises Unreachable when the target lies outside the Jordan closure of the
    initial family - no sequence of extensions can ever reach it - and
    SolverStall if the randomized search exhausts its round budget first.
    """
    s = settings or DEFAULTS
    o = require_binary_observable(target, s.eig_tol)
    refs = [require_binary_observable(a, s.eig_tol) for a in initial_alice]
    closure, closure_iters = jordan_closure(refs, settings=s)
    member, _, _ = contains(closure, o)
    if not member:
        raise Unreachable(
            "target lies outside the algebra generated by the initial family"
        )
    d = o.shape[0]
    rng = np.random.default_rng(seed)
    span_a = span_basis([np.eye(d)] + refs, settings=s)
    span_b = span_basis([np.eye(d)] + refs, settings=s)
    rounds: list[PlanRound] = []
    cap = math.ceil(2.0 * math.log2(d)) + 3 if d > 1 else 3
    for _cycle in range(cap):
        if _sign_reachable(span_b, o, s, seed):
            rounds.append(PlanRound(party="alice", observables=(o,)))
            return IterativePlan(
                rounds=tuple(rounds),
                closure_dimension=closure.dimension,
                closure_iterations=closure_iters,
                dim=d,
            )
        new_b, span_b2 = _extension_batch(span_a, span_b, rng, s)
        if new_b:
            rounds.append(PlanRound(party="bob", observables=tuple(new_b)))
            span_b = span_b2
            continue
        new_a, span_a2 = _extension_batch(span_b, span_a, rng, s)
        if new_a:
            rounds.append(PlanRound(party="alice", observables=tuple(new_a)))
            span_a = span_a2
            continue
        raise SolverStall(
            "extension search saturated without reaching the target"
        )
    raise SolverStall(f"target not reachable within {cap} extension cycles")


# --------------------------------------------------------------------------
# certificate report


@dataclass(frozen=True)
class ExtensionCertificate:
    """Post-hoc certification data for one extension question."""

    label: str
    verdict: str
    lambda_min: float
    trace_q: float | None
    lambda_min_q: float | None

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "verdict": self.verdict,
            "lambda_min": self.lambda_min,
            "trace_q": self.trace_q,
            "lambda_min_q": self.lambda_min_q,
        }


@dataclass(frozen=True)
class CertificateReport:
    """Everything the robustness bound needs, plus structural diagnostics.

    ``gram_lambda_min`` is the smallest eigenvalue of the Gram matrix
    Tr[B_j B_k] over Bob's reference observables; ``closure_dimension`` and
    ``full_algebra`` describe the algebra Bob's family generates; one
    ExtensionCertificate per Alice question beyond the base family.
    """

    dim: int
    alice_questions: int
    bob_questions: int
    schmidt_kappa: float
    schmidt_max: float
    gram_lambda_min: float
    closure_dimension: int
    closure_iterations: int
    full_algebra: bool
    extensions: tuple[ExtensionCertificate, ...]
    table: CorrelationTable | None = field(default=None, compare=False)

    def all_feasible(self) -> bool:
        return all(e.verdict == "feasible" for e in self.extensions)

    def robustness_params(
        self, epsilon: float, delta: float, extension_index: int = 0
    ) -> RobustnessParams:
        if not 0 <= extension_index < len(self.extensions):
            raise BadParams(f"no extension with index {extension_index}")
        ext = self.extensions[extension_index]
        if ext.trace_q is None or ext.lambda_min_q is None:
            raise BadParams(f"extension {ext.label!r} has no trace certificate")
        return RobustnessParams(
            n=self.bob_questions,
            lambda_min_gram=self.gram_lambda_min,
            trace_q=ext.trace_q,
            lambda_min_q=ext.lambda_min_q,
            lambda_max_schmidt=self.schmidt_max,
            kappa_schmidt=self.schmidt_kappa,
            epsilon=epsilon,
            delta=delta,
        )

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "alice_questions": self.alice_questions,
            "bob_questions": self.bob_questions,
            "schmidt_kappa": self.schmidt_kappa,
            "schmidt_max": self.schmidt_max,
            "gram_lambda_min": self.gram_lambda_min,
            "closure_dimension": self.closure_dimension,
            "closure_iterations": self.closure_iterations,
            "full_algebra": self.full_algebra,
            "all_feasible": self.all_feasible(),
            "extensions": [e.to_json_dict() for e in self.extensions],
        }


def certificate_report(
    strategy: Strategy,
    *,
    settings: Settings | None = None,
    seed: int = 0,
    include_table: bool = True,
) -> CertificateReport:
    """Certify every extension question of a strategy against Bob's family.

    The strategy's meta must record ``base_questions`` (as the pipeline
    constructors do); Alice questions beyond that count are treated as
    extensions and checked post hoc, each with its minimum-trace certificate
    when feasible. Bob's measurements must all be binary.
    """
    s = settings or DEFAULTS
    if "base_questions" not in strategy.meta:
        raise BadParams("strategy meta lacks 'base_questions'")
    base = int(strategy.meta["base_questions"])
    if not 0 < base <= strategy.alice_questions:
        raise BadParams(f"base_questions = {base} is inconsistent with the strategy")
    try:
        bob_obs = [m.observable() for m in strategy.bob]
    except InvalidMeasurement as exc:
        raise BadParams("certificate reports need binary Bob measurements") from exc

    gram = np.array(
        [[float(np.sum(a * b)) for b in bob_obs] for a in bob_obs]
    )
    gram_vals, _ = sym_eig(gram, settings=s)
    closure, closure_iters = jordan_closure(bob_obs, settings=s)
    d = strategy.dim
    full = closure.dimension == d * (d + 1) // 2

    extensions = []
    for idx in range(base, strategy.alice_questions):
        label = strategy.alice_labels[idx]
        o = strategy.alice[idx].observable()
        feas = posthoc_feasible_binary(
            strategy.state, bob_obs, o, settings=s, seed=seed
        )
        trace_q = None
        lambda_min_q = None
        if feas.feasible:
            tr, q = min_trace_Q(
                strategy.state, bob_obs, o, outputs=2, power=1, settings=s, seed=seed
            )
            qvals, _ = sym_eig(q, settings=s)
            trace_q = float(tr)
            lambda_min_q = float(qvals[-1])
        extensions.append(
            ExtensionCertificate(
                label=label,
                verdict=feas.verdict,
                lambda_min=feas.lambda_min_achieved,
                trace_q=trace_q,
                lambda_min_q=lambda_min_q,
            )
        )

    table = correlation_table(strategy) if include_table else None
    return CertificateReport(
        dim=d,
        alice_questions=strategy.alice_questions,
        bob_questions=strategy.bob_questions,
        schmidt_kappa=strategy.state.kappa,
        schmidt_max=float(np.max(strategy.state.coeffs)),
        gram_lambda_min=float(gram_vals[-1]),
        closure_dimension=closure.dimension,
        closure_iterations=closure_iters,
        full_algebra=full,
        extensions=tuple(extensions),
        table=table,
    )
