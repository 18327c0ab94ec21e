"""Pipeline entry point: preprocess, fit-tsne, train-projector, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..data import ACTIVITY_CLASSES, Dataset, load_dataset
from ..dr import (
    ProjectorConfig,
    TsneConfig,
    compute_trust_scores,
    fit_tsne,
    train_projector,
)
from .artifacts import (
    available_tags,
    dataset_dir,
    load_projection,
    save_projection,
    save_projector,
    save_trust,
)
from .state import ServiceState, load_bundle

# 2D layouts of fingerprint spaces rank neighbors by cosine; dense
# numeric spaces keep euclidean
DEFAULT_TRUST_METRIC = {"ecfp": "cosine", "path": "cosine"}
_FALLBACK_TRUST_METRIC = "euclidean"


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise SystemExit(f"config {path} must hold a JSON object")
    return config


def _select_tags(dataset: Dataset, requested: list[str]) -> list[str]:
    if not requested:
        return sorted(dataset.representations)
    unknown = sorted(set(requested) - set(dataset.representations))
    if unknown:
        raise SystemExit(
            "unknown representation(s): "
            + ", ".join(unknown)
            + "; dataset has "
            + ", ".join(sorted(dataset.representations))
        )
    return requested


def _auto_perplexity(n: int) -> float:
    """Stay clearly inside the perplexity < (n - 1) / 3 bound."""
    return min(30.0, 0.75 * (n - 1) / 3.0)


def _tsne_config(config: dict, tag: str, n: int, seed: int) -> TsneConfig:
    merged: dict = dict(config.get("tsne", {}))
    merged.update(config.get("tsne_overrides", {}).get(tag, {}))
    merged.setdefault("seed", seed)
    merged.setdefault("perplexity", _auto_perplexity(n))
    tsne_config = TsneConfig(**merged)
    tsne_config.validate_for(n)
    return tsne_config


def _projector_config(config: dict, tag: str, seed: int) -> ProjectorConfig:
    merged: dict = dict(config.get("projector", {}))
    merged.update(config.get("projector_overrides", {}).get(tag, {}))
    merged.setdefault("seed", seed)
    if "hidden" in merged:
        merged["hidden"] = tuple(merged["hidden"])
    if "dropout" in merged:
        merged["dropout"] = tuple(merged["dropout"])
    if isinstance(merged.get("activation"), list):
        merged["activation"] = tuple(merged["activation"])
    return ProjectorConfig(**merged)


def _trust_metric(config: dict, tag: str) -> str:
    configured = config.get("trust_metric", {})
    if tag in configured:
        return configured[tag]
    return DEFAULT_TRUST_METRIC.get(tag, _FALLBACK_TRUST_METRIC)


def cmd_preprocess(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.manifest)
    targets = sorted({t for c in dataset.compounds for t in c.activities})
    summary = {
        "name": dataset.name,
        "compounds": dataset.n,
        "representations": {
            tag: list(matrix.X.shape)
            for tag, matrix in sorted(dataset.representations.items())
        },
        "activity_counts": {
            target: {
                label: dataset.class_counts(target).get(label, 0)
                for label in ACTIVITY_CLASSES
            }
            for target in targets
        },
        "conformers": len(dataset.conformers),
    }
    out_dir = dataset_dir(args.artifacts_dir, dataset.name)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / "summary.json"
    out_path.write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote {out_path}")
    return 0


def cmd_fit_tsne(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.manifest)
    config = _load_config(args.config)
    for tag in _select_tags(dataset, args.representation):
        matrix = dataset.representations[tag]
        tsne_config = _tsne_config(config, tag, dataset.n, args.seed)
        projection = fit_tsne(matrix, tsne_config)
        trust = compute_trust_scores(
            matrix, projection, high_metric=_trust_metric(config, tag)
        )
        projection_path = save_projection(
            projection, args.artifacts_dir, dataset.name, seed=tsne_config.seed
        )
        trust_path = save_trust(trust, args.artifacts_dir, dataset.name)
        print(f"wrote {projection_path}")
        print(f"wrote {trust_path}")
    return 0


def cmd_train_projector(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.manifest)
    config = _load_config(args.config)
    fitted = available_tags(args.artifacts_dir, dataset.name, "projection")
    if not fitted:
        raise SystemExit(
            f"no projections found under {args.artifacts_dir} for "
            f"{dataset.name!r}; run 'chemmap fit-tsne' first"
        )
    for tag in _select_tags(dataset, args.representation):
        if tag not in fitted:
            raise SystemExit(
                f"no projection artifact for {tag!r}; run 'chemmap fit-tsne' first"
            )
        target = load_projection(args.artifacts_dir, dataset.name, tag)
        projector_config = _projector_config(config, tag, args.seed)
        projector = train_projector(dataset.representations[tag], target, projector_config)
        path = save_projector(
            projector, args.artifacts_dir, dataset.name, tag, seed=projector_config.seed
        )
        report = projector.training_report
        print(
            f"wrote {path} (epochs {report.epochs_run}, "
            f"pearson {report.pearson_per_axis[0]:.3f}/{report.pearson_per_axis[1]:.3f})"
        )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .app import create_app

    dataset = load_dataset(args.manifest)
    bundle = load_bundle(dataset, args.artifacts_dir)
    if not bundle.dataset.projections:
        raise SystemExit(
            f"no projection artifacts for {dataset.name!r} under "
            f"{args.artifacts_dir}; run 'chemmap fit-tsne' first"
        )
    missing = sorted(set(dataset.representations) - set(bundle.projectors))
    if missing:
        print(
            "no projector for: "
            + ", ".join(missing)
            + "; add-compound will mark these unavailable",
            file=sys.stderr,
        )
    app = create_app(ServiceState([bundle]))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chemmap", description="chemical-space mapping pipeline"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--manifest", required=True, help="dataset manifest JSON")
        p.add_argument(
            "--artifacts-dir", default="artifacts", help="artifact directory"
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", default=None, help="pipeline config JSON")
        p.add_argument(
            "--representation",
            action="append",
            default=[],
            help="limit to one representation (repeatable)",
        )

    p_pre = sub.add_parser("preprocess", help="load, validate and summarize a dataset")
    common(p_pre)
    p_pre.set_defaults(func=cmd_preprocess)

    p_fit = sub.add_parser("fit-tsne", help="fit 2D maps and trust scores")
    common(p_fit)
    p_fit.set_defaults(func=cmd_fit_tsne)

    p_train = sub.add_parser(
        "train-projector", help="train parametric projectors against fitted maps"
    )
    common(p_train)
    p_train.set_defaults(func=cmd_train_projector)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    common(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
