"""Weight identification from decision-maker scores or rankings.

At fixed thresholds the net-flow score is linear in the weights:
``s = (mu_plus - mu_minus) @ w``.  Given target scores (stated directly
by the decision maker, or synthesized from a ranking by spreading targets
evenly over the attainable score range), the weights minimizing the
squared score error over the probability simplex are found by a convex
least-squares fit.

The solver enumerates candidate support sets exactly at desk scale and
polishes with projected gradient descent, so the returned objective value
matches the constrained optimum to solver precision and the output is
deterministic for identical input.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    CriteriaMatrix,
    CriterionFlows,
    PreferenceModel,
    ThresholdTriple,
    criterion_net_flows,
    rank,
    static_scores,
    uniform_weights,
)
from .errors import DimensionMismatchError, NotAPermutationError, ValidationError

#: Supports are enumerated exhaustively up to this many criteria.
EXHAUSTIVE_SUPPORT_LIMIT = 12

#: A candidate weight may undershoot zero by at most this before rejection.
FEASIBILITY_SLACK = 1e-9


@dataclass(eq=False)
class IdentificationProblem:
    """Flow decomposition plus the scores the fitted weights should produce."""

    flow_matrix: CriterionFlows
    target_scores: np.ndarray

    def __post_init__(self):
        targets = np.asarray(self.target_scores, dtype=float)
        if targets.ndim != 1:
            raise DimensionMismatchError("target scores must form a vector")
        m, n = self.flow_matrix.mu_plus.shape
        if targets.size != m:
            raise DimensionMismatchError(
                f"{targets.size} target scores for {m} alternatives"
            )
        if not np.all(np.isfinite(targets)):
            raise ValidationError("target scores must be finite")
        if m < n:
            warnings.warn(
                f"only {m} alternatives for {n} weights; fit may be underdetermined",
                UserWarning,
                stacklevel=2,
            )
        self.target_scores = targets


@dataclass(eq=False)
class IdentifiedWeights:
    """Fitted weights with the residual sum of squared score errors.

    ``degenerate`` flags a non-unique minimizer (flow columns linearly
    dependent on the simplex); ``ranking_reproduced`` is filled only when
    the fit originated from a ranking or reference scores.
    """

    weights: np.ndarray
    residual: float
    method_note: str
    degenerate: bool = False
    ranking_reproduced: Optional[bool] = None


def equipartition_targets(ranking: Sequence[str], m: int) -> np.ndarray:
    """Evenly spaced target scores for a ranked list of alternatives.

    The best-ranked alternative receives ``m - 1``, the worst ``-(m - 1)``
    (the attainable score bounds), with spacing 2 in between; the returned
    vector is aligned with the ranking order.
    """
    ids = [str(r) for r in ranking]
    if len(ids) != m or len(set(ids)) != len(ids):
        raise NotAPermutationError(
            f"ranking must list each of the {m} alternatives exactly once"
        )
    return np.array([float(m - 1 - 2 * k) for k in range(m)])


def _project_to_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {w >= 0, sum(w) = 1} (sort-based)."""
    u = np.sort(y)[::-1]
    cumulative = np.cumsum(u) - 1.0
    counts = np.arange(1, y.size + 1)
    rho = counts[u - cumulative / counts > 0][-1]
    theta = cumulative[rho - 1] / rho
    return np.clip(y - theta, 0.0, None)


def _objective(A: np.ndarray, y: np.ndarray, w: np.ndarray) -> float:
    r = A @ w - y
    return float(r @ r)


def _support_candidates(A: np.ndarray, y: np.ndarray):
    """Feasible stationary points of the sum-to-one least squares on every support.

    Solves the equality-constrained normal equations restricted to each
    nonempty subset of criteria and yields those whose weights are
    (numerically) nonnegative.  The optimum of the simplex-constrained
    problem is stationary on its own support, so it appears here.
    """
    m, n = A.shape
    for mask in range(1, 1 << n):
        support = [k for k in range(n) if mask >> k & 1]
        size = len(support)
        sub = A[:, support]
        kkt = np.zeros((size + 1, size + 1))
        kkt[:size, :size] = 2.0 * sub.T @ sub
        kkt[:size, size] = 1.0
        kkt[size, :size] = 1.0
        rhs = np.concatenate([2.0 * sub.T @ y, [1.0]])
        solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
        w_sub = solution[:size]
        if not np.all(np.isfinite(w_sub)) or float(w_sub.min()) < -FEASIBILITY_SLACK:
            continue
        w = np.zeros(n)
        w[support] = np.clip(w_sub, 0.0, None)
        total = float(w.sum())
        if abs(total - 1.0) > 1e-6:
            continue
        yield w / total


def _projected_gradient(A: np.ndarray, y: np.ndarray, start: np.ndarray,
                        iterations: int = 2000) -> np.ndarray:
    lipschitz = 2.0 * np.linalg.norm(A, 2) ** 2
    if lipschitz == 0.0:
        return start
    step = 1.0 / lipschitz
    w = start
    for _ in range(iterations):
        gradient = 2.0 * (A.T @ (A @ w - y))
        nxt = _project_to_simplex(w - step * gradient)
        if float(np.max(np.abs(nxt - w))) < 1e-16:
            return nxt
        w = nxt
    return w


def fit_weights(problem: IdentificationProblem) -> IdentifiedWeights:
    """Weights on the probability simplex minimizing the squared score error.

    Deterministic for identical input.  When the minimizer is non-unique
    the result carries ``degenerate=True`` and, among equally good
    solutions, uniform weights are preferred.
    """
    A = np.asarray(problem.flow_matrix.net, dtype=float)
    y = problem.target_scores
    n = A.shape[1]

    uniform = uniform_weights(n)
    best = uniform
    best_value = _objective(A, y, best)
    note = "projected gradient"
    if n <= EXHAUSTIVE_SUPPORT_LIMIT:
        note = "support enumeration + projected-gradient polish"
        for candidate in _support_candidates(A, y):
            value = _objective(A, y, candidate)
            if value < best_value:
                best, best_value = candidate, value

    polished = _projected_gradient(A, y, best)
    polished_value = _objective(A, y, polished)
    if polished_value < best_value:
        best, best_value = polished, polished_value

    degenerate = bool(
        np.linalg.matrix_rank(np.vstack([A, np.ones((1, n))])) < n
    )
    if degenerate and _objective(A, y, uniform) <= best_value + 1e-12:
        best = uniform
        note += "; non-unique minimizer, uniform weights preferred"

    weights = np.clip(best, 0.0, None)
    weights = weights / weights.sum()
    return IdentifiedWeights(
        weights=weights,
        residual=_objective(A, y, weights),
        method_note=note,
        degenerate=degenerate,
    )


def _coerce_thresholds(thresholds, n: int) -> tuple[ThresholdTriple, ...]:
    """Accept one triple (broadcast to all criteria) or a sequence of n triples."""
    if isinstance(thresholds, ThresholdTriple):
        return (thresholds,) * n
    items = list(thresholds)
    if items and isinstance(items[0], (int, float)):
        return (ThresholdTriple(*items),) * n
    triples = tuple(
        t if isinstance(t, ThresholdTriple) else ThresholdTriple(*t) for t in items
    )
    if len(triples) == 1:
        return triples * n
    if len(triples) != n:
        raise DimensionMismatchError(f"{len(triples)} threshold triples for {n} criteria")
    return triples


def fit_weights_from_ranking(
    criteria: CriteriaMatrix,
    thresholds,
    ranking: Sequence[str],
    discordance_exponent: int = 3,
) -> IdentifiedWeights:
    """Identify weights from a decision-maker ranking of the alternatives.

    Targets come from :func:`equipartition_targets`; the result reports
    whether re-ranking the alternatives under the fitted weights
    reproduces the input ranking exactly.
    """
    ids = criteria.alternative_ids
    wanted = [str(r) for r in ranking]
    if sorted(wanted) != sorted(ids):
        raise NotAPermutationError(
            "ranking must be a permutation of the criteria matrix alternatives"
        )
    placeholder = PreferenceModel(
        uniform_weights(criteria.n),
        _coerce_thresholds(thresholds, criteria.n),
        discordance_exponent,
    )
    flow = criterion_net_flows(criteria, placeholder)
    ranked_targets = equipartition_targets(wanted, criteria.m)
    position = {alt: pos for pos, alt in enumerate(wanted)}
    targets = np.array([ranked_targets[position[alt]] for alt in ids])

    fitted = fit_weights(IdentificationProblem(flow_matrix=flow, target_scores=targets))
    induced = rank(static_scores(criteria, placeholder.with_weights(fitted.weights)), ids)
    fitted.ranking_reproduced = [entry.alternative_id for entry in induced] == wanted
    return fitted
