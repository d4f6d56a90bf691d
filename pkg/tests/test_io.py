import json

import numpy as np
import pytest

import flowrank as fr
from flowrank.errors import (
    AlphaOutOfRangeError,
    DuplicateIdError,
    EmptyFileError,
    ParseError,
    SchemaError,
)
from flowrank.io import (
    classify,
    detect_format,
    events_path,
    load_events,
    scenario_to_dict,
)

from conftest import SCORES_INITIAL, WEIGHTS_INITIAL, WEIGHTS_REVISED, switch_scenario


SAMPLE_VALUES = (
    ("613", (0.62093, 0.70547, 0.734, 0.99189)),
    ("2573", (0.8907, 0.85185, 0.666, 0.54054)),
    ("292", (0.81395, 0.97002, 0.4, 0.33784)),
    ("162", (0.77442, 0.82363, 0.734, 0.0)),
    ("3062", (0.5814, 0.17637, 0.7, 0.67568)),
)


class TestLoadCriteria:
    def test_bundled_sample_matches_source_table(self, sample):
        assert sample.alternative_ids == tuple(alt for alt, _ in SAMPLE_VALUES)
        assert sample.criterion_labels == ("C1", "C2", "C3", "C4")
        assert np.array_equal(sample.values, np.array([row for _, row in SAMPLE_VALUES]))

    def test_bundled_file_bytes_hold_plain_decimal_values(self):
        from importlib import resources

        text = resources.files("flowrank").joinpath("data", "e1.csv").read_text()
        for alt, row in SAMPLE_VALUES:
            line = next(ln for ln in text.splitlines() if ln.startswith(alt + ","))
            cells = line.split(",")[1:]
            # value fields carry the exact source notation, e.g. "0.734" and "0"
            assert cells == [f"{v:g}" for v in row]

    def test_duplicate_id(self, tmp_path):
        f = tmp_path / "dup.csv"
        f.write_text("id,c1\n613,0.5\n613,0.7\n")
        with pytest.raises(DuplicateIdError):
            fr.load_criteria(f)

    def test_short_row_names_the_row(self, tmp_path):
        f = tmp_path / "bad.csv"
        f.write_text("id,c1,c2,c3,c4\nx,0.1,0.2,0.3,0.4\ny,0.1,0.2\n")
        with pytest.raises(ParseError, match="row 3"):
            fr.load_criteria(f)

    def test_non_numeric_field(self, tmp_path):
        f = tmp_path / "bad.csv"
        f.write_text("id,c1\nx,abc\n")
        with pytest.raises(ParseError, match="abc"):
            fr.load_criteria(f)

    def test_empty_file(self, tmp_path):
        f = tmp_path / "empty.csv"
        f.write_text("")
        with pytest.raises(EmptyFileError):
            fr.load_criteria(f)

    def test_round_trip(self, sample, tmp_path):
        f = tmp_path / "copy.csv"
        fr.write_criteria(sample, f)
        again = fr.load_criteria(f)
        assert again.alternative_ids == sample.alternative_ids
        assert again.criterion_labels == sample.criterion_labels
        assert np.allclose(again.values, sample.values, atol=1e-9)

    def test_write_is_deterministic(self, sample, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        fr.write_criteria(sample, a)
        fr.write_criteria(sample, b)
        assert a.read_bytes() == b.read_bytes()


class TestModelJson:
    def test_round_trip(self, model_initial, tmp_path):
        f = tmp_path / "model.json"
        fr.write_model(model_initial, f)
        again = fr.load_model(f)
        assert np.allclose(again.weights, model_initial.weights, atol=1e-12)
        assert again.thresholds == model_initial.thresholds
        assert again.discordance_exponent == model_initial.discordance_exponent

    def test_schema_error_names_field(self, tmp_path):
        f = tmp_path / "model.json"
        f.write_text(json.dumps({"weights": [1.0]}))
        with pytest.raises(SchemaError, match="thresholds"):
            fr.load_model(f)


class TestLoadScenario:
    def test_bundled_switch_scenario(self):
        scenario = fr.bundled_switch_scenario()
        assert scenario.horizon == 40
        assert scenario.filter.alpha == pytest.approx(0.3)
        assert np.allclose(scenario.initial_model.weights, WEIGHTS_INITIAL)
        assert len(scenario.schedule) == 1
        assert scenario.schedule[0].step == 0
        assert np.allclose(scenario.schedule[0].model.weights, WEIGHTS_REVISED)

    def test_unsorted_schedule(self, tmp_path):
        data = scenario_to_dict(switch_scenario(0.5))
        data["schedule"] = [
            {"step": 4, "model": data["initial_model"]},
            {"step": 1, "model": data["initial_model"]},
        ]
        f = tmp_path / "scenario.json"
        f.write_text(json.dumps(data))
        with pytest.raises(SchemaError, match="schedule"):
            fr.load_scenario(f)

    def test_alpha_out_of_range(self, tmp_path):
        data = scenario_to_dict(switch_scenario(0.5))
        data["filter"] = {"alpha": 1.5}
        f = tmp_path / "scenario.json"
        f.write_text(json.dumps(data))
        with pytest.raises(AlphaOutOfRangeError):
            fr.load_scenario(f)

    def test_filter_from_tau_dt(self, tmp_path):
        data = scenario_to_dict(switch_scenario(0.5))
        data["filter"] = {"tau": 1.0, "dt": 1.0}
        f = tmp_path / "scenario.json"
        f.write_text(json.dumps(data))
        assert fr.load_scenario(f).filter.alpha == pytest.approx(0.5)

    def test_round_trip(self, tmp_path):
        scenario = switch_scenario(0.3)
        f = tmp_path / "scenario.json"
        fr.write_scenario(scenario, f)
        again = fr.load_scenario(f)
        assert again.horizon == scenario.horizon
        assert again.filter.alpha == scenario.filter.alpha
        assert np.allclose(again.criteria.values, scenario.criteria.values, atol=1e-9)
        assert np.allclose(again.initial_model.weights, scenario.initial_model.weights)
        assert len(again.schedule) == len(scenario.schedule)

    def test_criteria_file_reference_resolved_relative(self, tmp_path, sample):
        fr.write_criteria(sample, tmp_path / "local.csv")
        data = scenario_to_dict(switch_scenario(0.5))
        data["criteria"] = {"file": "local.csv"}
        f = tmp_path / "scenario.json"
        f.write_text(json.dumps(data))
        assert fr.load_scenario(f).criteria.alternative_ids == sample.alternative_ids


class TestTrajectoryCsv:
    def test_first_row_contents(self, tmp_path):
        trajectory = fr.simulate(switch_scenario(0.5))
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        lines = f.read_text().splitlines()
        assert lines[0] == "step,alternative_id,score,rank"
        assert lines[1] == "0,613,1.88107276,1"

    def test_rows_sorted_by_step_then_rank(self, tmp_path):
        trajectory = fr.simulate(switch_scenario(0.5, horizon=3))
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        rows = [ln.split(",") for ln in f.read_text().splitlines()[1:]]
        keys = [(int(r[0]), int(r[3])) for r in rows]
        assert keys == sorted(keys)

    def test_horizon_one_write(self, sample, model_initial, tmp_path):
        scenario = fr.Scenario(sample, model_initial, fr.make_filter(0.5), 1)
        trajectory = fr.simulate(scenario)
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        assert len(f.read_text().splitlines()) == 1 + 2 * sample.m

    def test_single_step_trajectory_write(self, sample, model_initial, tmp_path):
        result = fr.static_scores(sample, model_initial)
        step = fr.TrajectoryStep(
            step=0, scores=result.scores,
            ranking=fr.rank(result, sample.alternative_ids),
        )
        trajectory = fr.Trajectory(sample.alternative_ids, [step], [])
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        lines = f.read_text().splitlines()
        assert len(lines) == 1 + sample.m
        assert all(line.startswith("0,") for line in lines[1:])

    def test_round_trip_scores_within_write_precision(self, tmp_path):
        trajectory = fr.simulate(switch_scenario(0.3, horizon=12))
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        again = fr.load_trajectory(f)
        original = {
            (s.step, e.alternative_id): e.score
            for s in trajectory.steps for e in s.ranking
        }
        reread = {
            (s.step, e.alternative_id): e.score
            for s in again.steps for e in s.ranking
        }
        assert original.keys() == reread.keys()
        # 8-decimal serialization quantizes at 5e-9
        for key, value in original.items():
            assert reread[key] == pytest.approx(value, abs=5e-9)

    def test_events_sidecar_round_trip(self, tmp_path):
        trajectory = fr.simulate(switch_scenario(0.5))
        f = tmp_path / "traj.csv"
        fr.write_trajectory(trajectory, f)
        sidecar = events_path(f)
        assert sidecar.exists()
        events = load_events(sidecar)
        assert events == trajectory.events
        assert fr.load_trajectory(f).events == trajectory.events

    def test_write_is_deterministic(self, tmp_path):
        trajectory = fr.simulate(switch_scenario(0.5))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        fr.write_trajectory(trajectory, a)
        fr.write_trajectory(trajectory, b)
        assert a.read_bytes() == b.read_bytes()
        assert events_path(a).read_bytes() == events_path(b).read_bytes()


class TestFormatDetection:
    def test_all_formats(self, sample, model_initial, tmp_path):
        fr.write_criteria(sample, tmp_path / "c.csv")
        fr.write_model(model_initial, tmp_path / "m.json")
        fr.write_scenario(switch_scenario(0.5), tmp_path / "s.json")
        fr.write_trajectory(fr.simulate(switch_scenario(0.5)), tmp_path / "t.csv")
        assert detect_format(tmp_path / "c.csv") == "criteria-csv"
        assert detect_format(tmp_path / "m.json") == "model-json"
        assert detect_format(tmp_path / "s.json") == "scenario-json"
        assert detect_format(tmp_path / "t.csv") == "trajectory-csv"
        assert detect_format(events_path(tmp_path / "t.csv")) == "events-json"

    def test_classify_loads(self, sample, tmp_path):
        fr.write_criteria(sample, tmp_path / "c.csv")
        handle = classify(tmp_path / "c.csv")
        assert handle.format == "criteria-csv"
        assert handle.load().alternative_ids == sample.alternative_ids

    def test_unknown_extension(self, tmp_path):
        f = tmp_path / "x.txt"
        f.write_text("hello")
        with pytest.raises(SchemaError):
            detect_format(f)


def test_static_scores_of_loaded_sample(sample, model_initial):
    assert fr.static_scores(sample, model_initial).scores == pytest.approx(
        SCORES_INITIAL, abs=1e-8
    )
