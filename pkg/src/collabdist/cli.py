"""Command-line pipeline: ingest, features, analyze, regress, synth, all.

Every stage reads only declared inputs or intermediates written by earlier
stages, and writes deterministic outputs (no timestamps), so two runs with
identical inputs produce byte-identical output trees.

Exit codes: 0 success, 1 usage error, 2 input error, 3 stage failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import figures, report
from .distances import DISTANCE_COLUMNS, FEATURE_COLUMNS
from .network import betweenness, closeness, rdc, top_k_subnetwork
from .pipeline import build_pairs, fit_models, fit_panel, run_ingest
from .regression import DEFAULT_PERIODS, build_design, vif
from .synth import SIGN_PATTERN_MEAN, generate_pair_table
from .trends import annual_mean_distances, copub_distance_density, year_correlations


class InputError(Exception):
    pass


@dataclass
class PipelineConfig:
    papers: str | None = None
    affiliations: str | None = None
    conferences: str | None = None
    metadata: str | None = None
    boundaries: str | None = None
    industrial_ids: str | None = None
    log_base: str = "10"
    top_k: int = 30
    bins: int = 30
    periods: bool = False
    exclude: list[str] = field(default_factory=list)
    covariates: list[str] = field(default_factory=lambda: list(FEATURE_COLUMNS))
    out: str = "out"
    seed: int = 0
    n_synth: int = 5000
    figures: bool = False

    @property
    def log_base_value(self) -> float:
        if self.log_base == "e":
            return math.e
        return float(self.log_base)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def load_config(path: str | None) -> PipelineConfig:
    config = PipelineConfig()
    if path:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        known = {f.name for f in fields(PipelineConfig)}
        unknown = set(doc) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        for key, value in doc.items():
            setattr(config, key, value)
    return config


def _require(path: Path, hint: str) -> Path:
    if not path.exists():
        raise InputError(f"missing {path}: {hint}")
    return path


def _update_run_log(out_dir: Path, stage: str, entry: dict) -> None:
    log_path = out_dir / "run_log.json"
    doc = {}
    if log_path.exists():
        doc = json.loads(log_path.read_text(encoding="utf-8"))
    doc[stage] = entry
    out_dir.mkdir(parents=True, exist_ok=True)
    log_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _ingest_inputs(config: PipelineConfig, papers: str, affiliations: str):
    return run_ingest(
        papers_file=str(_require(Path(papers), "papers input")),
        affiliations_file=str(_require(Path(affiliations), "affiliations input")),
        metadata_file=str(_require(Path(config.metadata), "country metadata input")),
        conferences_file=config.conferences,
        boundaries_file=config.boundaries,
        industrial_ids_file=config.industrial_ids,
    )


def cmd_ingest(config: PipelineConfig) -> None:
    if not config.papers or not config.affiliations or not config.metadata:
        raise InputError("ingest needs --papers, --affiliations, and --metadata")
    ingest = _ingest_inputs(config, config.papers, config.affiliations)
    out = config.out_dir
    report.write_corpus(out / "corpus.csv", ingest.records)
    report.write_affiliations(out / "affiliations_resolved.csv", ingest.affiliations)
    report.write_drop_report(out / "drop_report.csv", ingest.paper_drops, ingest.affiliation_drops)
    stage = build_pairs(
        ingest.records,
        ingest.affiliations,
        ingest.metadata,
        ingest.conference_counts,
        log_base=config.log_base_value,
    )
    report.write_profiles(out / "profiles.csv", stage.profiles)
    _update_run_log(
        out,
        "ingest",
        {
            "n_records": len(ingest.records),
            "paper_drops": dict(sorted(ingest.paper_drops.items())),
            "affiliation_drops": dict(sorted(ingest.affiliation_drops.items())),
            "unresolved_affiliations": ingest.unresolved_affiliations,
            "unknown_industrial_ids": ingest.unknown_industrial_ids,
            "unresolved_conferences": ingest.unresolved_conferences,
            "n_profiles": len(stage.profiles),
        },
    )


def _load_intermediates(config: PipelineConfig):
    out = config.out_dir
    corpus = _require(out / "corpus.csv", "run the ingest stage first")
    affiliations = _require(out / "affiliations_resolved.csv", "run the ingest stage first")
    return _ingest_inputs(config, str(corpus), str(affiliations))


def cmd_features(config: PipelineConfig) -> None:
    ingest = _load_intermediates(config)
    stage = build_pairs(
        ingest.records,
        ingest.affiliations,
        ingest.metadata,
        ingest.conference_counts,
        log_base=config.log_base_value,
    )
    out = config.out_dir
    report.write_pair_features(out / "pair_features.csv", stage.pair_features)
    masked = {}
    for pf in stage.pair_features:
        for name in pf.missing:
            masked[name] = masked.get(name, 0) + 1
    _update_run_log(
        out,
        "features",
        {"n_pairs": len(stage.pair_features), "masked_counts": dict(sorted(masked.items()))},
    )


def cmd_analyze(config: PipelineConfig) -> None:
    ingest = _load_intermediates(config)
    out = config.out_dir
    pair_features = report.read_pair_features(
        _require(out / "pair_features.csv", "run the features stage first")
    )
    stage = build_pairs(
        ingest.records,
        ingest.affiliations,
        ingest.metadata,
        ingest.conference_counts,
        log_base=config.log_base_value,
    )
    by_id = ingest.affiliations_by_id

    series = annual_mean_distances(ingest.records, by_id, pair_features)
    report.write_trends(out / "trends.csv", series, DISTANCE_COLUMNS)
    correlations = year_correlations(series)
    report.write_correlations(out / "correlations.csv", correlations)

    notes: list[str] = []
    density_curves: dict[str, dict] = {}
    for indicator in DISTANCE_COLUMNS:
        curves = {}
        try:
            edges, masses = copub_distance_density(pair_features, indicator, bins=config.bins)
            report.write_density(out / f"density_{indicator}.csv", edges, masses)
            curves["all"] = (edges, masses)
        except ValueError as exc:
            notes.append(f"density_{indicator}: {exc}")
            continue
        for iso in config.exclude:
            try:
                edges, masses = copub_distance_density(
                    pair_features, indicator, bins=config.bins, exclude=iso
                )
                report.write_density(out / f"density_{indicator}_excl_{iso}.csv", edges, masses)
                curves[f"without {iso}"] = (edges, masses)
            except ValueError as exc:
                notes.append(f"density_{indicator}_excl_{iso}: {exc}")
        density_curves[indicator] = curves

    network = stage.network
    k = min(config.top_k, len(network.nodes))
    sub = top_k_subnetwork(network, stage.profiles, k)
    report.write_network(out / "network.csv", sub)
    scores = {
        "rdc": {c: rdc(sub, c) for c in sub.nodes} if len(sub.nodes) >= 2 else {},
        "betweenness": betweenness(sub),
        "closeness": closeness(sub),
    }
    if scores["rdc"]:
        report.write_centrality(out / "centrality.csv", scores)

    if config.figures:
        fig_dir = out / "figures"
        fig_dir.mkdir(parents=True, exist_ok=True)
        figures.render_share_trends(series, fig_dir / "trend_shares.png")
        figures.render_distance_trends(series, DISTANCE_COLUMNS, fig_dir / "trend_distances.png")
        for indicator, curves in density_curves.items():
            if curves:
                figures.render_density(curves, indicator, fig_dir / f"density_{indicator}.png")
        if scores["rdc"]:
            figures.render_network(sub, scores["rdc"], fig_dir / "network.png")

    _update_run_log(
        out,
        "analyze",
        {
            "n_years": len(series),
            "n_correlations": len(correlations),
            "network_nodes": len(sub.nodes),
            "network_edges": len(sub.edges),
            "notes": notes,
        },
    )


def cmd_regress(config: PipelineConfig) -> None:
    out = config.out_dir
    pair_features = report.read_pair_features(
        _require(out / "pair_features.csv", "run the features stage first")
    )
    columns = tuple(config.covariates)
    ols_fit, zibeta_fit, skipped = fit_models(pair_features, columns=columns)
    design = build_design(pair_features, columns=columns)
    vif_table = vif(design) if len(design.columns) >= 2 else {}

    panel = None
    if config.periods:
        ingest = _load_intermediates(config)
        panel = fit_panel(
            ingest,
            partition=DEFAULT_PERIODS,
            columns=columns,
            log_base=config.log_base_value,
        )
    report.write_regression_report(
        out / "regression_report.json",
        ols_fit,
        zibeta_fit,
        vif_table,
        design.dropped_columns,
        design.n_masked_rows,
        panel=panel,
        skipped=skipped,
    )
    _update_run_log(
        out,
        "regress",
        {
            "n_rows": int(design.x.shape[0]),
            "dropped_columns": list(design.dropped_columns),
            "n_masked_rows": design.n_masked_rows,
            "skipped": skipped,
        },
    )


def cmd_synth(config: PipelineConfig) -> None:
    out = config.out_dir
    table = generate_pair_table(
        n=config.n_synth,
        gamma={"CoUS": -0.5, "CoCN": -0.5},
        beta=SIGN_PATTERN_MEAN,
        phi=20.0,
        seed=config.seed,
    )
    report.write_pair_features(out / "pair_features.csv", table.pair_features)
    params = {
        "columns": list(table.columns),
        "gamma": [float(v) for v in table.gamma],
        "beta": [float(v) for v in table.beta],
        "phi": table.phi,
        "n": config.n_synth,
        "seed": config.seed,
    }
    out.mkdir(parents=True, exist_ok=True)
    (out / "true_params.json").write_text(
        json.dumps(params, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    _update_run_log(out, "synth", {"n": config.n_synth, "seed": config.seed})


STAGES = {
    "ingest": cmd_ingest,
    "features": cmd_features,
    "analyze": cmd_analyze,
    "regress": cmd_regress,
    "synth": cmd_synth,
}


def cmd_all(config: PipelineConfig) -> None:
    for stage in ("ingest", "features", "analyze", "regress"):
        STAGES[stage](config)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="collabdist", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("ingest", "features", "analyze", "regress", "synth", "all"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--papers")
        p.add_argument("--affiliations")
        p.add_argument("--conferences")
        p.add_argument("--metadata")
        p.add_argument("--boundaries")
        p.add_argument("--industrial-ids", dest="industrial_ids")
        p.add_argument("--log-base", dest="log_base", choices=("10", "e"))
        p.add_argument("--top-k", dest="top_k", type=int)
        p.add_argument("--bins", type=int)
        p.add_argument("--exclude", action="append")
        p.add_argument("--covariates", help="comma-separated covariate subset")
        p.add_argument("--periods", action="store_true", default=None)
        p.add_argument("--seed", type=int)
        p.add_argument("--n-synth", dest="n_synth", type=int)
        p.add_argument("--figures", action="store_true", default=None)
        p.add_argument("--out")
    return parser


def _apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> None:
    for name in (
        "papers",
        "affiliations",
        "conferences",
        "metadata",
        "boundaries",
        "industrial_ids",
        "log_base",
        "top_k",
        "bins",
        "exclude",
        "periods",
        "seed",
        "n_synth",
        "figures",
        "out",
    ):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(args, "covariates", None):
        config.covariates = [c.strip() for c in args.covariates.split(",") if c.strip()]
        unknown = set(config.covariates) - set(FEATURE_COLUMNS)
        if unknown:
            raise InputError(f"unknown covariates: {sorted(unknown)}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        _apply_overrides(config, args)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"collabdist: input error: {exc}", file=sys.stderr)
        return 2
    command = cmd_all if args.command == "all" else STAGES[args.command]
    try:
        command(config)
    except (InputError, FileNotFoundError) as exc:
        print(f"collabdist {args.command}: input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - stage failures map to exit 3
        print(f"collabdist {args.command}: stage failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
