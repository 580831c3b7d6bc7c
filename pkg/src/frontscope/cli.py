"""Command-line entry point wrapping the preprocessing pipeline and server."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import ingest, model, pipeline, server


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontscope",
        description="Preprocess multi-objective solution sets and serve them for exploration.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    pre = commands.add_parser(
        "preprocess", help="turn raw decision/objective matrices into an annotated artifact"
    )
    pre.add_argument("--dec", required=True, type=Path, help="decision-variable matrix file")
    pre.add_argument("--obj", required=True, type=Path, help="objective matrix file")
    pre.add_argument("--ref", type=Path, help="optional reference set matrix file")
    pre.add_argument("--out", required=True, type=Path, help="artifact JSON destination")
    pre.add_argument(
        "--projection", choices=["tsne", "umap"], help="projection method (default tsne)"
    )
    pre.add_argument("--seed", type=int, help="master seed for all stochastic stages")
    pre.add_argument("--problem", default="unknown", help="problem name stored in the artifact")
    pre.add_argument(
        "--algorithm", default="unknown", help="algorithm name stored in the artifact"
    )
    pre.add_argument("--config", type=Path, help="JSON file with config overrides")
    pre.add_argument(
        "--timing", action="store_true", help="print the per-stage timing report as JSON"
    )

    srv = commands.add_parser("serve", help="serve preprocessed artifacts over HTTP")
    srv.add_argument(
        "--data", required=True, type=Path, help="directory of *.json artifacts (id = file stem)"
    )
    srv.add_argument(
        "--port",
        type=int,
        default=8080,
        help="TCP port; 0 picks a free port and prints the chosen one",
    )
    srv.add_argument("--static", type=Path, help="directory of frontend assets to serve at /")
    srv.add_argument("--host", default="127.0.0.1", help="bind address")
    return parser


def _load_config(args) -> pipeline.PipelineConfig:
    """Merges --config file overrides, then the explicit flags on top."""
    overrides = {}
    if args.config is not None:
        text = args.config.read_text(encoding="utf-8")
        raw = json.loads(text)
        overrides = raw
    config = pipeline.PipelineConfig.from_dict(overrides)
    if args.projection is not None:
        method = model.ProjectionMethod(args.projection)
        config = replace(config, projection=replace(config.projection, method=method))
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    return config


def cmd_preprocess(args) -> int:
    try:
        config = _load_config(args)
        bundle = ingest.RawInputBundle(
            decision_path=args.dec,
            objective_path=args.obj,
            reference_path=args.ref,
            problem_name=args.problem,
            algorithm_name=args.algorithm,
        )
        artifact, timing = pipeline.run_pipeline(bundle, config)
        args.out.write_bytes(model.serialize_artifact(artifact))
    except (
        ingest.IngestError,
        pipeline.PipelineError,
        model.ArtifactError,
        OSError,
        json.JSONDecodeError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        print(json.dumps(timing.to_dict(), indent=2))
    return 0


def cmd_serve(args) -> int:
    if not args.data.is_dir():
        print(f"error: {args.data} is not a directory", file=sys.stderr)
        return 1
    try:
        registry = server.DatasetRegistry.from_dir(args.data)
        server.serve(registry, port=args.port, static_dir=args.static, host=args.host)
    except (server.ServerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "preprocess":
        return cmd_preprocess(args)
    return cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
