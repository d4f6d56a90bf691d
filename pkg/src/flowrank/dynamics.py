"""Filtered dynamic scores over evolving preferences.

Instead of jumping to new net-flow scores the moment criteria or
preferences change, scores track the moving target through a first-order
low-pass filter: ``s(t+1) = (1 - alpha) * s(t) + alpha * target(t)``,
where the target is the static net flow under the parameters active at
step ``t``.  The smoothing factor can be given directly or derived from a
damping time ``tau`` and step length ``dt`` as ``1 / (1 + tau / dt)``.

A :class:`Scenario` bundles base parameters with a piecewise-constant
schedule of overrides; :func:`simulate` produces the full score
trajectory, per-step rankings, and the rank-crossing events where two
alternatives swap order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    CriteriaMatrix,
    FlowResult,
    PreferenceModel,
    RankEntry,
    rank,
    static_scores,
    validate_model,
)
from .errors import (
    AlphaOutOfRangeError,
    ConsistencyError,
    LengthMismatchError,
    NonpositiveDtError,
    StepOutOfRangeError,
    ValidationError,
)

#: Tolerance on |alpha - 1 / (1 + tau / dt)| when both forms are given.
ALPHA_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class FilterConfig:
    """First-order filter parameters.

    ``alpha`` in (0, 1]; optionally accompanied by the damping time and
    step length it was derived from.
    """

    alpha: float
    tau: Optional[float] = None
    dt: Optional[float] = None

    def __post_init__(self):
        alpha = float(self.alpha)
        if not np.isfinite(alpha) or not 0.0 < alpha <= 1.0:
            raise AlphaOutOfRangeError(f"alpha must lie in (0, 1], got {alpha!r}")
        object.__setattr__(self, "alpha", alpha)
        if (self.tau is None) != (self.dt is None):
            raise ValidationError("tau and dt must be given together")
        if self.tau is not None:
            tau, dt = float(self.tau), float(self.dt)
            if dt <= 0 or not np.isfinite(dt):
                raise NonpositiveDtError(f"dt must be > 0, got {dt!r}")
            if tau < 0 or not np.isfinite(tau):
                raise ValidationError(f"tau must be >= 0, got {tau!r}")
            derived = 1.0 / (1.0 + tau / dt)
            if abs(alpha - derived) > ALPHA_CONSISTENCY_TOL:
                raise ValidationError(
                    f"alpha={alpha!r} inconsistent with tau/dt (expected {derived!r})"
                )
            object.__setattr__(self, "tau", tau)
            object.__setattr__(self, "dt", dt)


def make_filter(alpha: Optional[float] = None, *, tau: Optional[float] = None,
                dt: Optional[float] = None) -> FilterConfig:
    """Build a filter config from ``alpha`` directly or from ``tau`` and ``dt``."""
    if tau is None and dt is None:
        if alpha is None:
            raise ValidationError("give either alpha or both tau and dt")
        return FilterConfig(alpha=alpha)
    if tau is None or dt is None:
        raise ValidationError("tau and dt must be given together")
    if dt <= 0 or not math.isfinite(dt):
        raise NonpositiveDtError(f"dt must be > 0, got {dt!r}")
    if tau < 0 or not math.isfinite(tau):
        raise ValidationError(f"tau must be >= 0, got {tau!r}")
    derived = 1.0 / (1.0 + tau / dt)
    if alpha is not None and abs(alpha - derived) > ALPHA_CONSISTENCY_TOL:
        raise ValidationError(
            f"alpha={alpha!r} inconsistent with tau/dt (expected {derived!r})"
        )
    return FilterConfig(alpha=derived, tau=float(tau), dt=float(dt))


def filter_step(current: Sequence[float], target: Sequence[float], alpha: float) -> np.ndarray:
    """One filter update: ``(1 - alpha) * current + alpha * target``."""
    cur = np.asarray(current, dtype=float)
    tgt = np.asarray(target, dtype=float)
    if cur.shape != tgt.shape:
        raise LengthMismatchError(
            f"current has shape {cur.shape}, target has shape {tgt.shape}"
        )
    if not 0.0 < alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha must lie in (0, 1], got {alpha!r}")
    return (1.0 - alpha) * cur + alpha * tgt


def closed_form_constant_schedule(s0: float, target: float, alpha: float, t: int) -> float:
    """Filtered score after ``t`` steps toward a constant target.

    Algebraic solution ``target + (s0 - target) * (1 - alpha)**t`` of the
    filter recurrence; serves as an independent oracle for
    :func:`simulate` on constant-parameter segments.
    """
    if not 0.0 < alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha must lie in (0, 1], got {alpha!r}")
    return target + (s0 - target) * (1.0 - alpha) ** t


@dataclass(frozen=True, eq=False)
class ScheduleEntry:
    """Override taking effect at ``step``: a new model, new criteria, or both."""

    step: int
    model: Optional[PreferenceModel] = None
    criteria: Optional[CriteriaMatrix] = None

    def __post_init__(self):
        if not isinstance(self.step, int) or isinstance(self.step, bool) or self.step < 0:
            raise ValidationError(f"schedule step must be a nonnegative integer, got {self.step!r}")
        if self.model is None and self.criteria is None:
            raise ValidationError(f"schedule entry at step {self.step} overrides nothing")


@dataclass(frozen=True, eq=False)
class Scenario:
    """Base criteria and model plus a schedule of preference/criteria changes."""

    criteria: CriteriaMatrix
    initial_model: PreferenceModel
    filter: FilterConfig
    horizon: int
    schedule: tuple[ScheduleEntry, ...] = ()

    def __post_init__(self):
        if not isinstance(self.horizon, int) or isinstance(self.horizon, bool) or self.horizon < 1:
            raise ValidationError(f"horizon must be a positive integer, got {self.horizon!r}")
        validate_model(self.initial_model, self.criteria.n)
        schedule = tuple(self.schedule)
        last = -1
        for pos, entry in enumerate(schedule):
            if entry.step <= last:
                raise ValidationError(
                    f"schedule[{pos}]: steps must be strictly increasing"
                )
            last = entry.step
            if entry.step > self.horizon:
                raise ValidationError(
                    f"schedule[{pos}]: step {entry.step} exceeds horizon {self.horizon}"
                )
            if entry.criteria is not None:
                if entry.criteria.alternative_ids != self.criteria.alternative_ids:
                    raise ValidationError(
                        f"schedule[{pos}]: criteria override must keep the same alternatives"
                    )
                if entry.criteria.n != self.criteria.n:
                    raise ValidationError(
                        f"schedule[{pos}]: criteria override must keep {self.criteria.n} criteria"
                    )
            if entry.model is not None:
                validate_model(entry.model, self.criteria.n)
        object.__setattr__(self, "schedule", schedule)

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return self.criteria.alternative_ids


@dataclass(frozen=True)
class RankEvent:
    """Two alternatives swapped score order between consecutive steps.

    ``upper_id`` ends above ``lower_id`` after the swap; ``crossing_time``
    is the linear interpolation of the score-difference zero between
    ``step_before`` and ``step_after``.
    """

    upper_id: str
    lower_id: str
    step_before: int
    step_after: int
    crossing_time: float


@dataclass(frozen=True, eq=False)
class TrajectoryStep:
    step: int
    scores: np.ndarray
    ranking: list[RankEntry]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Scores and rankings over steps 0..horizon, plus rank-crossing events."""

    alternative_ids: tuple[str, ...]
    steps: list[TrajectoryStep]
    events: list[RankEvent]

    def scores_array(self) -> np.ndarray:
        """Scores stacked as a (steps, alternatives) matrix."""
        return np.vstack([s.scores for s in self.steps])


def _resolve_parameters(
    criteria: CriteriaMatrix,
    model: PreferenceModel,
    entries: Iterable[ScheduleEntry],
    t: int,
) -> tuple[CriteriaMatrix, PreferenceModel]:
    for entry in entries:
        if entry.step <= t:
            if entry.criteria is not None:
                criteria = entry.criteria
            if entry.model is not None:
                model = entry.model
    return criteria, model


def active_parameters(scenario: Scenario, t: int) -> tuple[CriteriaMatrix, PreferenceModel]:
    """Criteria and model in force at step ``t``: base values overridden by
    every schedule entry with ``step <= t``, later entries winning."""
    if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t <= scenario.horizon:
        raise StepOutOfRangeError(
            f"step {t!r} outside 0..{scenario.horizon}"
        )
    return _resolve_parameters(scenario.criteria, scenario.initial_model, scenario.schedule, t)


def simulate(scenario: Scenario) -> Trajectory:
    """Run the filter over the whole horizon.

    Step 0 holds the static scores of the base criteria and initial model
    (a schedule entry at step 0 changes the target, not the starting
    point).  Each later step filters toward the static scores under the
    parameters active at the previous step index.
    """
    ids = scenario.alternative_ids
    alpha = scenario.filter.alpha
    scores = static_scores(scenario.criteria, scenario.initial_model).scores
    steps = [TrajectoryStep(step=0, scores=scores, ranking=rank(scores, ids))]

    active: Optional[tuple[CriteriaMatrix, PreferenceModel]] = None
    target: Optional[np.ndarray] = None
    for t in range(scenario.horizon):
        pair = active_parameters(scenario, t)
        if active is None or pair[0] is not active[0] or pair[1] is not active[1]:
            active = pair
            target = static_scores(*pair).scores
        scores = filter_step(scores, target, alpha)
        steps.append(TrajectoryStep(step=t + 1, scores=scores, ranking=rank(scores, ids)))

    stacked = np.vstack([s.scores for s in steps])
    return Trajectory(alternative_ids=ids, steps=steps, events=detect_events_from_scores(stacked, ids))


def detect_events_from_scores(step_scores: np.ndarray, ids: Sequence[str]) -> list[RankEvent]:
    """Rank-crossing events in a (steps, alternatives) score matrix.

    A pair generates one event per interval in which its strict score
    order swaps; an exact tie at a step attaches to the following
    interval, so touch-and-return produces no event.
    """
    step_scores = np.asarray(step_scores, dtype=float)
    if step_scores.ndim != 2:
        raise ValidationError("step scores must form a (steps, alternatives) matrix")
    n_steps, m = step_scores.shape
    if len(ids) != m:
        raise LengthMismatchError(f"{len(ids)} ids for {m} score columns")
    events: list[RankEvent] = []
    for a in range(m):
        for b in range(a + 1, m):
            diff = step_scores[:, a] - step_scores[:, b]
            last_sign = float(np.sign(diff[0]))
            for t in range(1, n_steps):
                sign = float(np.sign(diff[t]))
                if sign == 0.0:
                    continue
                if last_sign != 0.0 and sign != last_sign:
                    d0, d1 = float(diff[t - 1]), float(diff[t])
                    crossing = (t - 1) + d0 / (d0 - d1)
                    upper, lower = (a, b) if sign > 0 else (b, a)
                    events.append(RankEvent(
                        upper_id=str(ids[upper]),
                        lower_id=str(ids[lower]),
                        step_before=t - 1,
                        step_after=t,
                        crossing_time=float(crossing),
                    ))
                last_sign = sign
    events.sort(key=lambda e: (e.step_after, e.crossing_time, e.upper_id, e.lower_id))
    return events


def detect_rank_events(trajectory: Trajectory) -> list[RankEvent]:
    """Rank-crossing events of a simulated trajectory."""
    if len(trajectory.steps) < 2:
        return []
    return detect_events_from_scores(trajectory.scores_array(), trajectory.alternative_ids)


def steady_state(scenario: Scenario) -> FlowResult:
    """Filter limit: static flows under the parameters active at the horizon."""
    criteria, model = active_parameters(scenario, scenario.horizon)
    return static_scores(criteria, model)


def iterate_to_steady(scenario: Scenario, tol: float = 1e-8, max_steps: int = 100_000) -> np.ndarray:
    """Step the filter under final parameters until scores move less than ``tol``.

    Numerical companion to :func:`steady_state`; the horizon's schedule is
    held fixed while iterating.
    """
    criteria, model = active_parameters(scenario, scenario.horizon)
    target = static_scores(criteria, model).scores
    scores = static_scores(scenario.criteria, scenario.initial_model).scores
    alpha = scenario.filter.alpha
    for _ in range(max_steps):
        nxt = filter_step(scores, target, alpha)
        if float(np.max(np.abs(nxt - scores))) < tol:
            return nxt
        scores = nxt
    raise ConsistencyError(
        f"filter did not settle below {tol} within {max_steps} steps"
    )
