"""Static net-flow outranking model.

Alternatives are compared pairwise on each criterion through an
indifference / preference / veto threshold triple, yielding a concordance
degree (support for "i at least as good as j") and a discordance degree
(opposition, up to outright veto).  The weighted concordance, damped by
the product of ``(1 - D**e)`` terms, gives an outranking degree for every
ordered pair.  Row and column sums of that matrix are the superiority and
inferiority flows, and their difference is the net-flow score used to
rank the alternatives.

At fixed thresholds the scores are linear in the weights; the
per-criterion flow decomposition (:func:`criterion_net_flows`) makes that
linearity explicit and is the basis for weight identification.

Every function here is pure.  Arrays are copied and frozen at
construction, so all objects may be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    ConsistencyError,
    DuplicateIdError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NegativeWeightError,
    ThresholdOrderError,
    ValidationError,
    WeightSumError,
)

#: Tolerance on |sum(weights) - 1|.
WEIGHT_SUM_TOL = 1e-9

#: Tolerance for the internal cross-check between the outranking-matrix
#: path and the weight-linear decomposition path.
CROSS_CHECK_TOL = 1e-10


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ThresholdTriple:
    """Indifference (q), preference (p) and veto (v) thresholds.

    Expressed in the units of the criterion values.  Differences within
    ``q`` are indistinguishable, differences of at least ``p`` mark a
    strict preference, and a shortfall beyond ``v`` penalizes the worse
    alternative regardless of the other criteria.  Must satisfy
    ``0 <= q <= p <= v``.
    """

    q: float
    p: float
    v: float

    def __post_init__(self):
        q, p, v = float(self.q), float(self.p), float(self.v)
        if not (np.isfinite(q) and np.isfinite(p) and np.isfinite(v)):
            raise ThresholdOrderError(
                f"thresholds must be finite, got q={q}, p={p}, v={v}"
            )
        if not 0.0 <= q <= p <= v:
            raise ThresholdOrderError(
                f"thresholds must satisfy 0 <= q <= p <= v, got q={q}, p={p}, v={v}"
            )
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "v", v)


def _coerce_threshold(t) -> ThresholdTriple:
    if isinstance(t, ThresholdTriple):
        return t
    return ThresholdTriple(*t)


@dataclass(frozen=True, eq=False)
class CriteriaMatrix:
    """Alternatives-by-criteria value table.

    ``values[i, k]`` is the score of alternative ``i`` on criterion ``k``.
    Every criterion is maximized; minimization criteria must be negated
    before ingestion, never inside the model.
    """

    alternative_ids: tuple[str, ...]
    criterion_labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        ids = tuple(str(a) for a in self.alternative_ids)
        labels = tuple(str(c) for c in self.criterion_labels)
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise ValidationError(
                f"criteria values must form a 2-d matrix, got {values.ndim} dimension(s)"
            )
        m, n = values.shape
        if m < 1 or n < 1:
            raise ValidationError(
                f"criteria matrix needs at least one alternative and one criterion, got {m}x{n}"
            )
        if len(ids) != m:
            raise LengthMismatchError(
                f"{len(ids)} alternative ids for {m} value rows"
            )
        if len(labels) != n:
            raise LengthMismatchError(
                f"{len(labels)} criterion labels for {n} value columns"
            )
        if not np.all(np.isfinite(values)):
            raise ValidationError("criteria values must all be finite")
        seen = set()
        for a in ids:
            if a in seen:
                raise DuplicateIdError(f"duplicate alternative id {a!r}")
            seen.add(a)
        values.flags.writeable = False
        object.__setattr__(self, "alternative_ids", ids)
        object.__setattr__(self, "criterion_labels", labels)
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        """Number of alternatives."""
        return self.values.shape[0]

    @property
    def n(self) -> int:
        """Number of criteria."""
        return self.values.shape[1]

    def index_of(self, alternative_id: str) -> int:
        try:
            return self.alternative_ids.index(alternative_id)
        except ValueError:
            raise IndexOutOfRangeError(
                f"unknown alternative id {alternative_id!r}"
            ) from None


@dataclass(frozen=True, eq=False)
class PreferenceModel:
    """Decision-maker preferences: weights and one threshold triple per criterion.

    Weights are nonnegative and sum to one (within :data:`WEIGHT_SUM_TOL`).
    ``discordance_exponent`` is the power applied to each discordance
    degree inside the damping product; it defaults to 3.
    """

    weights: np.ndarray
    thresholds: tuple[ThresholdTriple, ...]
    discordance_exponent: int = 3

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size < 1:
            raise ValidationError("weights must form a non-empty vector")
        if not np.all(np.isfinite(weights)):
            raise ValidationError("weights must all be finite")
        if np.any(weights < 0):
            k = int(np.argmin(weights))
            raise NegativeWeightError(
                f"weights[{k}] = {weights[k]} is negative"
            )
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumError(f"weights must sum to 1, got {total!r}")
        thresholds = tuple(_coerce_threshold(t) for t in self.thresholds)
        if len(thresholds) != weights.size:
            raise LengthMismatchError(
                f"{len(thresholds)} threshold triples for {weights.size} weights"
            )
        e = self.discordance_exponent
        if isinstance(e, bool) or not isinstance(e, int) or e < 1:
            raise ValidationError(
                f"discordance exponent must be a positive integer, got {e!r}"
            )
        weights.flags.writeable = False
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "thresholds", thresholds)

    @property
    def n(self) -> int:
        return self.weights.size

    def with_weights(self, weights) -> "PreferenceModel":
        """Same thresholds and exponent, different weights."""
        return PreferenceModel(weights, self.thresholds, self.discordance_exponent)


def uniform_weights(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def validate_model(model: PreferenceModel, n: int) -> PreferenceModel:
    """Return ``model`` unchanged if it is valid for ``n`` criteria.

    Construction already enforces the weight and threshold invariants;
    this re-checks them and the length against the criteria matrix.
    """
    if model.n != n:
        raise LengthMismatchError(
            f"model covers {model.n} criteria, criteria matrix has {n}"
        )
    return model


class RankEntry(NamedTuple):
    alternative_id: str
    score: float
    rank: int


@dataclass(frozen=True, eq=False)
class CriterionFlows:
    """Per-criterion superiority and inferiority flows (both m-by-n)."""

    mu_plus: np.ndarray
    mu_minus: np.ndarray

    @property
    def net(self) -> np.ndarray:
        """mu_plus - mu_minus; scores are this matrix times the weights."""
        return self.mu_plus - self.mu_minus


@dataclass(frozen=True, eq=False)
class FlowResult:
    """Superiority flow, inferiority flow, and net score per alternative."""

    phi_plus: np.ndarray
    phi_minus: np.ndarray
    scores: np.ndarray


# ---------------------------------------------------------------------------
# Pairwise degrees


def pairwise_difference(criteria: CriteriaMatrix, i: int, j: int, k: int) -> float:
    """Difference ``values[i, k] - values[j, k]`` between two alternatives."""
    m, n = criteria.m, criteria.n
    if not (0 <= i < m and 0 <= j < m):
        raise IndexOutOfRangeError(f"alternative index out of range: i={i}, j={j}, m={m}")
    if not 0 <= k < n:
        raise IndexOutOfRangeError(f"criterion index out of range: k={k}, n={n}")
    return float(criteria.values[i, k] - criteria.values[j, k])


def concordance(delta: float, thresholds: ThresholdTriple, self_pair: bool = False) -> float:
    """Degree in [0, 1] to which a criterion supports "i at least as good as j".

    ``delta`` is the criterion difference in favour of ``i``.  Full support
    at or above ``-q``, none at or below ``-p``, linear ramp in between.
    The branch order (self pair, upper plateau, lower plateau, ramp)
    resolves the degenerate ``q == p`` triple as a step.
    """
    if self_pair:
        return 0.0
    if delta >= -thresholds.q:
        return 1.0
    if delta <= -thresholds.p:
        return 0.0
    return (delta + thresholds.p) / (thresholds.p - thresholds.q)


def discordance(delta: float, thresholds: ThresholdTriple) -> float:
    """Degree in [0, 1] to which a criterion opposes "i at least as good as j".

    Total opposition (veto) at or below ``-v``, none at or above ``-p``,
    linear ramp in between.  Branch order resolves ``p == v`` as a step.
    """
    if delta <= -thresholds.v:
        return 1.0
    if delta >= -thresholds.p:
        return 0.0
    return (-delta - thresholds.p) / (thresholds.v - thresholds.p)


# ---------------------------------------------------------------------------
# Vectorized pair tables


def _threshold_arrays(model: PreferenceModel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    q = np.array([t.q for t in model.thresholds])
    p = np.array([t.p for t in model.thresholds])
    v = np.array([t.v for t in model.thresholds])
    return q, p, v


def _pair_tables(criteria: CriteriaMatrix, model: PreferenceModel) -> tuple[np.ndarray, np.ndarray]:
    """Concordance cube c[i, j, k] (diagonal zeroed) and damping matrix.

    The damping matrix is ``prod_k (1 - D[i, j, k]**e)``.
    """
    values = criteria.values
    m = values.shape[0]
    delta = values[:, None, :] - values[None, :, :]
    q, p, v = _threshold_arrays(model)

    # Guarded denominators keep the unused ramp branch finite when q == p
    # or p == v; np.where applies the plateau branches first.
    c_den = np.where(p > q, p - q, 1.0)
    c = np.where(delta >= -q, 1.0, np.where(delta <= -p, 0.0, (delta + p) / c_den))
    diag = np.arange(m)
    c[diag, diag, :] = 0.0

    d_den = np.where(v > p, v - p, 1.0)
    d = np.where(delta <= -v, 1.0, np.where(delta >= -p, 0.0, (-delta - p) / d_den))
    damping = np.prod(1.0 - d ** model.discordance_exponent, axis=2)
    return c, damping


# ---------------------------------------------------------------------------
# Outranking degrees and flows


def outranking_degree(criteria: CriteriaMatrix, model: PreferenceModel, i: int, j: int) -> float:
    """Weighted concordance damped by the veto product, for one ordered pair."""
    validate_model(model, criteria.n)
    m = criteria.m
    if not (0 <= i < m and 0 <= j < m):
        raise IndexOutOfRangeError(f"alternative index out of range: i={i}, j={j}, m={m}")
    if i == j:
        return 0.0
    agree = 0.0
    damp = 1.0
    for k, t in enumerate(model.thresholds):
        delta = float(criteria.values[i, k] - criteria.values[j, k])
        agree += model.weights[k] * concordance(delta, t)
        damp *= 1.0 - discordance(delta, t) ** model.discordance_exponent
    return float(agree * damp)


def outranking_matrix(criteria: CriteriaMatrix, model: PreferenceModel) -> np.ndarray:
    """All m*m outranking degrees; zero diagonal, entries in [0, 1]."""
    validate_model(model, criteria.n)
    c, damping = _pair_tables(criteria, model)
    return np.einsum("ijk,k->ij", c, model.weights) * damping


def criterion_net_flows(criteria: CriteriaMatrix, model: PreferenceModel) -> CriterionFlows:
    """Per-criterion flow decomposition.

    ``mu_plus[i, k]`` sums, over opponents j, the criterion-k concordance
    of i against j damped by the full veto product of the pair;
    ``mu_minus`` is the transpose direction.  Weights play no role here,
    which is what makes scores weight-linear at fixed thresholds.
    """
    validate_model(model, criteria.n)
    c, damping = _pair_tables(criteria, model)
    omega = c * damping[:, :, None]
    return CriterionFlows(mu_plus=omega.sum(axis=1), mu_minus=omega.sum(axis=0))


def flows(sigma: np.ndarray) -> FlowResult:
    """Superiority/inferiority flows and net scores of an outranking matrix."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ValidationError(f"outranking matrix must be square, got shape {sigma.shape}")
    phi_plus = sigma.sum(axis=1)
    phi_minus = sigma.sum(axis=0)
    return FlowResult(phi_plus=phi_plus, phi_minus=phi_minus, scores=phi_plus - phi_minus)


def static_scores(criteria: CriteriaMatrix, model: PreferenceModel) -> FlowResult:
    """Net-flow scores of every alternative under a fixed preference model.

    Computed from the outranking matrix and cross-checked against the
    weight-linear decomposition; the two paths must agree to
    :data:`CROSS_CHECK_TOL` or a :class:`ConsistencyError` is raised.
    """
    validate_model(model, criteria.n)
    c, damping = _pair_tables(criteria, model)
    sigma = np.einsum("ijk,k->ij", c, model.weights) * damping
    result = flows(sigma)

    omega = c * damping[:, :, None]
    linear = (omega.sum(axis=1) - omega.sum(axis=0)) @ model.weights
    drift = float(np.max(np.abs(linear - result.scores)))
    if drift > CROSS_CHECK_TOL:
        raise ConsistencyError(
            f"outranking-matrix and decomposition scores disagree by {drift:.3e}"
        )
    return result


def rank(result: Union[FlowResult, Sequence[float], np.ndarray], ids: Sequence[str]) -> list[RankEntry]:
    """Order alternatives by descending score; ties keep input order."""
    scores = result.scores if isinstance(result, FlowResult) else np.asarray(result, dtype=float)
    if scores.ndim != 1:
        raise ValidationError("scores must form a vector")
    if len(ids) != scores.size:
        raise LengthMismatchError(f"{len(ids)} ids for {scores.size} scores")
    order = np.argsort(-scores, kind="stable")
    return [
        RankEntry(alternative_id=str(ids[i]), score=float(scores[i]), rank=r + 1)
        for r, i in enumerate(order)
    ]
