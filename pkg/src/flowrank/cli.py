"""Command-line front door: rank, simulate, identify, serve.

Exit codes: 0 success, 1 environment or I/O failure, 2 validation failure.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import io as dataset_io
from .core import (
    PreferenceModel,
    ThresholdTriple,
    criterion_net_flows,
    rank,
    static_scores,
    uniform_weights,
)
from .dynamics import make_filter, simulate
from .errors import EmptyFileError, FlowrankError, ParseError, ValidationError
from .identify import (
    IdentificationProblem,
    fit_weights,
    fit_weights_from_ranking,
)


def _parse_weights(text: str) -> list[float]:
    try:
        return [float(cell) for cell in text.split(",")]
    except ValueError:
        raise ValidationError(f"weights: non-numeric entry in {text!r}") from None


def _parse_thresholds(text: str, n: int) -> tuple[ThresholdTriple, ...]:
    """``q:p:v`` triples separated by commas; a single triple broadcasts."""
    triples = []
    for chunk in text.split(","):
        parts = chunk.split(":")
        if len(parts) != 3:
            raise ValidationError(f"thresholds: expected q:p:v, got {chunk!r}")
        try:
            q, p, v = (float(x) for x in parts)
        except ValueError:
            raise ValidationError(f"thresholds: non-numeric entry in {chunk!r}") from None
        triples.append(ThresholdTriple(q, p, v))
    if len(triples) == 1:
        return tuple(triples) * n
    if len(triples) != n:
        raise ValidationError(
            f"thresholds: got {len(triples)} triples for {n} criteria"
        )
    return tuple(triples)


def _load_model_flags(args, n: int) -> PreferenceModel:
    weights = _parse_weights(args.weights)
    thresholds = _parse_thresholds(args.thresholds, n)
    return PreferenceModel(weights, thresholds, args.exponent)


def cmd_rank(args) -> int:
    criteria = dataset_io.load_criteria(args.data)
    model = _load_model_flags(args, criteria.n)
    result = static_scores(criteria, model)
    ranking = rank(result, criteria.alternative_ids)
    print("id,score,rank")
    for entry in ranking:
        print(f"{entry.alternative_id},{entry.score:.8f},{entry.rank}")
    if args.out:
        payload = {
            "ranking": [
                {"id": e.alternative_id, "score": e.score, "rank": e.rank}
                for e in ranking
            ],
            "scores": {
                alt: float(s)
                for alt, s in zip(criteria.alternative_ids, result.scores)
            },
        }
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_simulate(args) -> int:
    scenario = dataset_io.load_scenario(args.scenario)
    if args.alpha is not None:
        scenario = dataclasses.replace(scenario, filter=make_filter(args.alpha))
    trajectory = simulate(scenario)
    dataset_io.write_trajectory(trajectory, args.out)
    for event in trajectory.events:
        print(f"CROSSING {event.upper_id} over {event.lower_id} at t≈{event.crossing_time:.2f}")
    return 0


def _load_target_scores(path, criteria) -> np.ndarray:
    """CSV with header ``id,score``; every alternative exactly once."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise EmptyFileError(f"{path}: no content")
    by_id = {}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise ParseError(f"{path}: row {lineno}: expected id,score")
        try:
            by_id[cells[0]] = float(cells[1])
        except ValueError:
            raise ParseError(
                f"{path}: row {lineno}: non-numeric score {cells[1]!r}"
            ) from None
    missing = [alt for alt in criteria.alternative_ids if alt not in by_id]
    if missing:
        raise ValidationError(f"scores: missing alternatives {missing}")
    return np.array([by_id[alt] for alt in criteria.alternative_ids])


def cmd_identify(args) -> int:
    if (args.scores is None) == (args.ranking is None):
        raise ValidationError("give exactly one of --scores or --ranking")
    criteria = dataset_io.load_criteria(args.data)
    thresholds = _parse_thresholds(args.thresholds, criteria.n)
    if args.ranking is not None:
        wanted = [r.strip() for r in args.ranking.split(">")]
        fitted = fit_weights_from_ranking(criteria, thresholds, wanted, args.exponent)
        reproduced = fitted.ranking_reproduced
    else:
        targets = _load_target_scores(args.scores, criteria)
        placeholder = PreferenceModel(uniform_weights(criteria.n), thresholds, args.exponent)
        flow = criterion_net_flows(criteria, placeholder)
        fitted = fit_weights(IdentificationProblem(flow_matrix=flow, target_scores=targets))
        induced = rank(static_scores(criteria, placeholder.with_weights(fitted.weights)),
                       criteria.alternative_ids)
        target_order = rank(targets, criteria.alternative_ids)
        reproduced = [e.alternative_id for e in induced] == [e.alternative_id for e in target_order]
    print("weights: " + ",".join(f"{w:.4f}" for w in fitted.weights))
    print(f"residual: {fitted.residual:.6e}")
    print(f"ranking_reproduced: {'true' if reproduced else 'false'}")
    return 0


def cmd_serve(args) -> int:
    import socket

    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    finally:
        probe.close()

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowrank",
        description="Net-flow outranking: rank alternatives, simulate preference "
                    "transitions, identify weights, or serve the steering API.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank alternatives in a criteria CSV")
    p_rank.add_argument("--data", required=True, help="criteria CSV file")
    p_rank.add_argument("--weights", required=True, help="comma-separated weights, sum 1")
    p_rank.add_argument("--thresholds", required=True,
                        help="q:p:v triples, comma-separated (single triple broadcasts)")
    p_rank.add_argument("--exponent", type=int, default=3, help="discordance exponent")
    p_rank.add_argument("--out", help="optional JSON output file")
    p_rank.set_defaults(func=cmd_rank)

    p_sim = sub.add_parser("simulate", help="run a scenario and write the trajectory")
    p_sim.add_argument("--scenario", required=True, help="scenario JSON file")
    p_sim.add_argument("--out", required=True, help="trajectory CSV output path")
    p_sim.add_argument("--alpha", type=float, help="override the scenario's smoothing factor")
    p_sim.set_defaults(func=cmd_simulate)

    p_id = sub.add_parser("identify", help="fit weights to scores or a ranking")
    p_id.add_argument("--data", required=True, help="criteria CSV file")
    p_id.add_argument("--thresholds", required=True,
                      help="q:p:v triples, comma-separated (single triple broadcasts)")
    p_id.add_argument("--exponent", type=int, default=3, help="discordance exponent")
    p_id.add_argument("--scores", help="CSV of id,score targets")
    p_id.add_argument("--ranking", help='ranking string "id>id>..."')
    p_id.set_defaults(func=cmd_identify)

    p_serve = sub.add_parser("serve", help="start the decision service")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", help="directory of UI assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FlowrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
