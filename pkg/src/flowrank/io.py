"""Loading and saving criteria tables, models, scenarios, and trajectories.

Formats (all UTF-8 text, decimal-point numbers):

* criteria CSV: header ``id,<label1>,...,<labelN>``, one row per alternative
* model JSON: ``{"weights": [...], "thresholds": [{"q","p","v"},...], "exponent"}``
* scenario JSON: criteria (inline or ``{"file": ...}`` reference), initial
  model, ``filter`` (``{"alpha"}`` or ``{"tau","dt"}``), horizon, schedule
* trajectory CSV: header ``step,alternative_id,score,rank``, rows sorted by
  (step, rank), scores printed with 8 decimal places; rank events live in a
  ``<path>.events.json`` sidecar

Writers are deterministic: identical input produces identical bytes.
The sample dataset used throughout the documentation is bundled as
``e1.csv`` / ``e1_switch.json`` (five production batches scored on four
sensory criteria, with a scheduled switch between two weight profiles).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .core import CriteriaMatrix, PreferenceModel, RankEntry, ThresholdTriple
from .dynamics import (
    FilterConfig,
    RankEvent,
    Scenario,
    ScheduleEntry,
    Trajectory,
    TrajectoryStep,
    make_filter,
)
from .errors import (
    DuplicateIdError,
    EmptyFileError,
    ParseError,
    SchemaError,
)

PathLike = Union[str, Path]

FORMATS = ("criteria-csv", "model-json", "scenario-json", "trajectory-csv", "events-json")

_TRAJECTORY_HEADER = "step,alternative_id,score,rank"


# ---------------------------------------------------------------------------
# format detection


@dataclass(frozen=True)
class DatasetFile:
    """A data file paired with its detected format (one of :data:`FORMATS`)."""

    path: Path
    format: str

    def load(self):
        loader = {
            "criteria-csv": load_criteria,
            "model-json": load_model,
            "scenario-json": load_scenario,
            "trajectory-csv": load_trajectory,
            "events-json": load_events,
        }[self.format]
        return loader(self.path)


def detect_format(path: PathLike) -> str:
    """Infer a file's format from its extension and validate it against content."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".csv":
        with path.open(encoding="utf-8") as handle:
            first = handle.readline().strip()
        if not first:
            raise EmptyFileError(f"{path}: no content")
        if first == _TRAJECTORY_HEADER:
            return "trajectory-csv"
        if first.split(",")[0].strip() == "id":
            return "criteria-csv"
        raise ParseError(f"{path}: unrecognized CSV header {first!r}")
    if suffix == ".json":
        text = path.read_text(encoding="utf-8")
        if not text.strip():
            raise EmptyFileError(f"{path}: no content")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
        if isinstance(data, list):
            return "events-json"
        if isinstance(data, dict):
            if "horizon" in data:
                return "scenario-json"
            if "weights" in data:
                return "model-json"
        raise SchemaError(f"{path}: JSON matches no known format")
    raise SchemaError(f"{path}: unrecognized extension {suffix!r}")


def classify(path: PathLike) -> DatasetFile:
    path = Path(path)
    return DatasetFile(path=path, format=detect_format(path))


def load_events(path: PathLike) -> list[RankEvent]:
    path = Path(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(payload, list):
        raise SchemaError(f"{path}: expected a list of events")
    return [event_from_dict(item, f"events[{pos}]") for pos, item in enumerate(payload)]


# ---------------------------------------------------------------------------
# criteria CSV


def load_criteria(path: PathLike) -> CriteriaMatrix:
    """Read a criteria matrix from ``id,<labels...>`` CSV."""
    path = Path(path)
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise EmptyFileError(f"{path}: no content")
    header = [cell.strip() for cell in lines[0].split(",")]
    if len(header) < 2:
        raise ParseError(f"{path}: header needs an id column and at least one criterion")
    labels = header[1:]
    n = len(labels)
    ids: list[str] = []
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != n + 1:
            raise ParseError(
                f"{path}: row {lineno}: expected {n + 1} fields, got {len(cells)}"
            )
        alt = cells[0]
        if alt in ids:
            raise DuplicateIdError(f"{path}: row {lineno}: duplicate alternative id {alt!r}")
        values = []
        for label, cell in zip(labels, cells[1:]):
            try:
                values.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{path}: row {lineno}: non-numeric value {cell!r} for {label}"
                ) from None
        ids.append(alt)
        rows.append(values)
    if not rows:
        raise EmptyFileError(f"{path}: header but no alternatives")
    return CriteriaMatrix(tuple(ids), tuple(labels), np.array(rows))


def write_criteria(criteria: CriteriaMatrix, path: PathLike) -> None:
    lines = ["id," + ",".join(criteria.criterion_labels)]
    for i, alt in enumerate(criteria.alternative_ids):
        cells = [alt] + [repr(float(v)) for v in criteria.values[i]]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# model JSON


def model_to_dict(model: PreferenceModel) -> dict:
    return {
        "weights": [float(w) for w in model.weights],
        "thresholds": [{"q": t.q, "p": t.p, "v": t.v} for t in model.thresholds],
        "exponent": model.discordance_exponent,
    }


def _require(mapping: dict, key: str, kind, path: str):
    if not isinstance(mapping, dict):
        raise SchemaError(f"{path}: expected an object")
    if key not in mapping:
        raise SchemaError(f"{path}.{key}: missing")
    value = mapping[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{path}.{key}: expected a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(f"{path}.{key}: expected an integer")
        return value
    if not isinstance(value, kind):
        raise SchemaError(f"{path}.{key}: expected {kind.__name__}")
    return value


def model_from_dict(data: dict, path: str = "model") -> PreferenceModel:
    weights = _require(data, "weights", list, path)
    raw_thresholds = _require(data, "thresholds", list, path)
    thresholds = []
    for pos, item in enumerate(raw_thresholds):
        where = f"{path}.thresholds[{pos}]"
        thresholds.append(ThresholdTriple(
            _require(item, "q", float, where),
            _require(item, "p", float, where),
            _require(item, "v", float, where),
        ))
    exponent = data.get("exponent", 3)
    if isinstance(exponent, bool) or not isinstance(exponent, int):
        raise SchemaError(f"{path}.exponent: expected an integer")
    return PreferenceModel(weights, tuple(thresholds), exponent)


def load_model(path: PathLike) -> PreferenceModel:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise EmptyFileError(f"{path}: no content")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    return model_from_dict(data, "model")


def write_model(model: PreferenceModel, path: PathLike) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# scenario JSON


def criteria_to_dict(criteria: CriteriaMatrix) -> dict:
    return {
        "alternative_ids": list(criteria.alternative_ids),
        "criterion_labels": list(criteria.criterion_labels),
        "values": [[float(v) for v in row] for row in criteria.values],
    }


def criteria_from_dict(data: dict, path: str = "criteria",
                       base_dir: Optional[Path] = None) -> CriteriaMatrix:
    """Inline criteria object, or ``{"file": name}`` resolved against ``base_dir``."""
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected an object")
    if "file" in data:
        if base_dir is None:
            raise SchemaError(f"{path}.file: file references are not allowed here")
        return load_criteria(base_dir / str(data["file"]))
    ids = _require(data, "alternative_ids", list, path)
    labels = _require(data, "criterion_labels", list, path)
    values = _require(data, "values", list, path)
    return CriteriaMatrix(tuple(str(a) for a in ids), tuple(str(c) for c in labels),
                          np.array(values, dtype=float))


def _filter_from_dict(data: dict, path: str) -> FilterConfig:
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected an object")
    alpha = data.get("alpha")
    tau = data.get("tau")
    dt = data.get("dt")
    if alpha is None and tau is None and dt is None:
        raise SchemaError(f"{path}: give alpha, or tau and dt")
    return make_filter(alpha, tau=tau, dt=dt)


def scenario_from_dict(data: dict, base_dir: Optional[Path] = None) -> Scenario:
    criteria = criteria_from_dict(_require(data, "criteria", dict, "scenario"),
                                  "scenario.criteria", base_dir)
    model = model_from_dict(_require(data, "initial_model", dict, "scenario"),
                            "scenario.initial_model")
    filter_config = _filter_from_dict(_require(data, "filter", dict, "scenario"),
                                      "scenario.filter")
    horizon = _require(data, "horizon", int, "scenario")
    raw_schedule = data.get("schedule", [])
    if not isinstance(raw_schedule, list):
        raise SchemaError("scenario.schedule: expected a list")
    entries = []
    last_step = -1
    for pos, item in enumerate(raw_schedule):
        where = f"scenario.schedule[{pos}]"
        step = _require(item, "step", int, where)
        if step <= last_step:
            raise SchemaError(f"{where}.step: steps must be strictly increasing")
        last_step = step
        entry_model = item.get("model")
        entry_criteria = item.get("criteria")
        if entry_model is None and entry_criteria is None:
            raise SchemaError(f"{where}: needs a model or criteria override")
        entries.append(ScheduleEntry(
            step=step,
            model=None if entry_model is None else model_from_dict(entry_model, f"{where}.model"),
            criteria=None if entry_criteria is None else criteria_from_dict(
                entry_criteria, f"{where}.criteria", base_dir),
        ))
    return Scenario(criteria=criteria, initial_model=model, filter=filter_config,
                    horizon=horizon, schedule=tuple(entries))


def scenario_to_dict(scenario: Scenario) -> dict:
    filter_part: dict = {"alpha": scenario.filter.alpha}
    if scenario.filter.tau is not None:
        filter_part = {"tau": scenario.filter.tau, "dt": scenario.filter.dt,
                       "alpha": scenario.filter.alpha}
    entries = []
    for entry in scenario.schedule:
        item: dict = {"step": entry.step}
        if entry.model is not None:
            item["model"] = model_to_dict(entry.model)
        if entry.criteria is not None:
            item["criteria"] = criteria_to_dict(entry.criteria)
        entries.append(item)
    return {
        "criteria": criteria_to_dict(scenario.criteria),
        "initial_model": model_to_dict(scenario.initial_model),
        "filter": filter_part,
        "horizon": scenario.horizon,
        "schedule": entries,
    }


def load_scenario(path: PathLike) -> Scenario:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise EmptyFileError(f"{path}: no content")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    return scenario_from_dict(data, base_dir=path.parent)


def write_scenario(scenario: Scenario, path: PathLike) -> None:
    Path(path).write_text(
        json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# trajectory CSV + events sidecar


def events_path(path: PathLike) -> Path:
    return Path(str(path) + ".events.json")


def event_to_dict(event: RankEvent) -> dict:
    return {
        "upper_id": event.upper_id,
        "lower_id": event.lower_id,
        "step_before": event.step_before,
        "step_after": event.step_after,
        "crossing_time": event.crossing_time,
    }


def event_from_dict(data: dict, path: str = "event") -> RankEvent:
    return RankEvent(
        upper_id=str(_require(data, "upper_id", str, path)),
        lower_id=str(_require(data, "lower_id", str, path)),
        step_before=_require(data, "step_before", int, path),
        step_after=_require(data, "step_after", int, path),
        crossing_time=_require(data, "crossing_time", float, path),
    )


def write_trajectory(trajectory: Trajectory, path: PathLike) -> None:
    """Write the trajectory CSV and its ``.events.json`` sidecar."""
    lines = ["step,alternative_id,score,rank"]
    for step in trajectory.steps:
        for entry in step.ranking:
            lines.append(
                f"{step.step},{entry.alternative_id},{entry.score:.8f},{entry.rank}"
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    events_payload = [event_to_dict(e) for e in trajectory.events]
    events_path(path).write_text(
        json.dumps(events_payload, indent=2) + "\n", encoding="utf-8"
    )


def load_trajectory(path: PathLike) -> Trajectory:
    """Read a trajectory CSV (and sidecar events when present).

    Alternative order follows the step-0 rank order, so round-tripped
    trajectories should be compared per alternative id.
    """
    path = Path(path)
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise EmptyFileError(f"{path}: no content")
    if lines[0] != "step,alternative_id,score,rank":
        raise ParseError(f"{path}: unexpected header {lines[0]!r}")
    per_step: dict[int, list[tuple[int, str, float]]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 4:
            raise ParseError(f"{path}: row {lineno}: expected 4 fields, got {len(cells)}")
        try:
            step = int(cells[0])
            score = float(cells[2])
            rank_value = int(cells[3])
        except ValueError:
            raise ParseError(f"{path}: row {lineno}: malformed numeric field") from None
        per_step.setdefault(step, []).append((rank_value, cells[1], score))
    steps_sorted = sorted(per_step)
    if steps_sorted != list(range(len(steps_sorted))):
        raise ParseError(f"{path}: step indices must run 0..{len(steps_sorted) - 1}")
    first = sorted(per_step[0])
    ids = tuple(alt for _, alt, _ in first)
    column = {alt: pos for pos, alt in enumerate(ids)}
    steps: list[TrajectoryStep] = []
    for t in steps_sorted:
        rows = sorted(per_step[t])
        if len(rows) != len(ids):
            raise ParseError(f"{path}: step {t}: expected {len(ids)} rows, got {len(rows)}")
        scores = np.empty(len(ids))
        ranking = []
        for rank_value, alt, score in rows:
            if alt not in column:
                raise ParseError(f"{path}: step {t}: unknown alternative {alt!r}")
            scores[column[alt]] = score
            ranking.append(RankEntry(alternative_id=alt, score=score, rank=rank_value))
        steps.append(TrajectoryStep(step=t, scores=scores, ranking=ranking))
    sidecar = events_path(path)
    events = []
    if sidecar.exists():
        payload = json.loads(sidecar.read_text(encoding="utf-8"))
        if not isinstance(payload, list):
            raise SchemaError(f"{sidecar}: expected a list of events")
        events = [event_from_dict(item, f"events[{pos}]") for pos, item in enumerate(payload)]
    return Trajectory(alternative_ids=ids, steps=steps, events=events)


# ---------------------------------------------------------------------------
# bundled sample data


def _data_root():
    return resources.files("flowrank").joinpath("data")


def bundled_criteria() -> CriteriaMatrix:
    """The five-batch, four-criterion sample table (``e1.csv``)."""
    with resources.as_file(_data_root().joinpath("e1.csv")) as p:
        return load_criteria(p)


def bundled_switch_scenario() -> Scenario:
    """Sample scenario: weight profile switched at step 0, alpha 0.3, horizon 40."""
    with resources.as_file(_data_root()) as root:
        return load_scenario(Path(root) / "e1_switch.json")
