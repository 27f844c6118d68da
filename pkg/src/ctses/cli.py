"""Command-line interface: pair scoring, batch evaluation, CI gating.

Exit codes are a stable contract:
  0  success / gate passed
  1  gate failed
  2  usage or processing error
  3  batch completed with some failed pairs

Subcommands: ``score``, ``batch``, ``gate``, ``profiles``. Every flag has
a config-file equivalent (JSON, see ``--config``); flags override the
file. The ``CTSES_CONFIG`` environment variable supplies a default config
path.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .codebleu import compute_components
from .composite import (
    PROFILE_ALIASES,
    ThresholdConfig,
    WeightProfile,
    builtin_profiles,
    evaluate,
    resolve_profile,
)
from .corpus import (
    RunConfig,
    default_aggregates,
    load_embeddings,
    load_manifest,
    run_batch,
    write_reports,
)
from .errors import CtsesError
from .lexer import LexConfig
from .textmetrics import MetricConfig

CONFIG_ENV_VAR = "CTSES_CONFIG"

EXIT_OK = 0
EXIT_GATE_FAILED = 1
EXIT_ERROR = 2
EXIT_PARTIAL_FAILURE = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_ERROR
    try:
        config, extras = _resolve_config(args)
    except (CtsesError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        if args.command == "score":
            return _cmd_score(args, config)
        if args.command == "batch":
            return _cmd_batch(args, config, extras)
        if args.command == "gate":
            return _cmd_gate(args, config)
        if args.command == "profiles":
            return _cmd_profiles(args)
    except CtsesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctses",
        description="Composite test-similarity scoring for Java test pairs.",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", default=None, help="JSON config file (default: $CTSES_CONFIG)")
        p.add_argument("--profile", default=None,
                       help="restrict scoring to one profile (name or alias)")
        p.add_argument("--weights", default=None, metavar="A,B,G",
                       help="ad-hoc profile weights for CodeBLEU,METEOR,ROUGE-L")
        p.add_argument("--no-comments", action="store_true",
                       help="exclude comment words from token streams")
        p.add_argument("--lenient-parse", action="store_true",
                       help="fall back to n-gram-only CodeBLEU on parse errors")
        p.add_argument("--workers", type=int, default=None, help="parallel scoring workers")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table",
                       help="output format for printed results")

    p_score = sub.add_parser("score", help="score one original/refactored pair")
    p_score.add_argument("original", help="path to the original test source")
    p_score.add_argument("refactored", help="path to the refactored test source")
    add_common(p_score)

    p_batch = sub.add_parser("batch", help="score a manifest of pairs and write reports")
    p_batch.add_argument("manifest", help="JSON-lines manifest of pair records")
    p_batch.add_argument("out_dir", help="directory for report files")
    p_batch.add_argument("--embeddings", default=None,
                         help="embedding sidecar file for cosine similarity")
    add_common(p_batch)

    p_gate = sub.add_parser("gate", help="pass/fail gate on the first configured profile")
    p_gate.add_argument("original")
    p_gate.add_argument("refactored")
    p_gate.add_argument("--strict", action="store_true",
                        help="fail the gate when any warning is raised")
    add_common(p_gate)

    p_profiles = sub.add_parser("profiles", help="list built-in weight profiles")
    p_profiles.add_argument("--format", choices=("table", "json", "csv"), default="table")
    return parser


# ---------------------------------------------------------------------------
# Configuration assembly
# ---------------------------------------------------------------------------

def _resolve_config(args) -> tuple[RunConfig, dict]:
    """Merge the config file (if any) with command-line overrides."""
    raw: dict = {}
    config_path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV_VAR)
    if config_path:
        raw = json.loads(Path(config_path).read_text(encoding="utf-8"))
    lex = LexConfig(**raw.get("lex", {}))
    metric_fields = dict(raw.get("metric", {}))
    for tuple_field in ("bleu_component_weights", "codebleu_weights"):
        if tuple_field in metric_fields:
            metric_fields[tuple_field] = tuple(metric_fields[tuple_field])
    metric = MetricConfig(**metric_fields)
    thresholds = ThresholdConfig(**raw.get("thresholds", {}))
    if "profiles" in raw:
        profiles = tuple(
            WeightProfile(p["name"], p["alpha"], p["beta"], p["gamma"])
            for p in raw["profiles"]
        )
    else:
        profiles = RunConfig().profiles
    config = RunConfig(
        lex=lex,
        metric=metric,
        thresholds=thresholds,
        profiles=profiles,
        lenient_parse=bool(raw.get("lenient_parse", False)),
        workers=int(raw.get("workers", 1)),
    )

    if getattr(args, "no_comments", False):
        config = replace(config, lex=replace(config.lex, include_comments=False))
    if getattr(args, "lenient_parse", False):
        config = replace(config, lenient_parse=True)
    if getattr(args, "workers", None):
        config = replace(config, workers=args.workers)
    if getattr(args, "weights", None):
        parts = [float(x) for x in args.weights.split(",")]
        if len(parts) != 3:
            raise ValueError("--weights expects three comma-separated numbers")
        config = replace(config, profiles=(WeightProfile("custom", *parts),))
    elif getattr(args, "profile", None):
        name = args.profile
        canonical = PROFILE_ALIASES.get(name.lower(), name.lower())
        match = next((p for p in config.profiles if p.name == canonical), None)
        config = replace(config, profiles=(match or resolve_profile(name),))

    extras = {"embeddings": raw.get("embeddings")}
    return config, extras


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _read_pair(args) -> tuple[str, str]:
    original = Path(args.original)
    refactored = Path(args.refactored)
    for p in (original, refactored):
        if not p.is_file():
            raise CtsesError(f"file not found: {p}")
    return original.read_text(encoding="utf-8"), refactored.read_text(encoding="utf-8")


def _cmd_score(args, config: RunConfig) -> int:
    original_src, refactored_src = _read_pair(args)
    components = compute_components(
        refactored_src, original_src, config.metric, config.lex,
        lenient=config.lenient_parse,
    )
    verdicts = {p.name: evaluate(components, p, config.thresholds) for p in config.profiles}

    if args.format == "json":
        payload = {
            "components": {
                "ngram": components.ngram,
                "weighted_ngram": components.weighted_ngram,
                "syntax": components.syntax,
                "dataflow": components.dataflow,
                "codebleu": components.codebleu,
                "meteor": components.meteor,
                "rouge_l": components.rouge_l,
                "cosine": components.cosine,
            },
            "flags": sorted(f.value for f in components.flags),
            "verdicts": {
                name: {
                    "ctses": v.ctses,
                    "accepted": v.accepted,
                    "warnings": sorted(w.value for w in v.warnings),
                }
                for name, v in verdicts.items()
            },
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv":
        print("metric,value")
        for name in ("ngram", "weighted_ngram", "syntax", "dataflow",
                     "codebleu", "meteor", "rouge_l"):
            print(f"{name},{getattr(components, name)!r}")
        if components.cosine is not None:
            print(f"cosine,{components.cosine!r}")
        for name, verdict in verdicts.items():
            print(f"ctses:{name},{verdict.ctses!r}")
    else:
        print("component scores")
        for name in ("ngram", "weighted_ngram", "syntax", "dataflow",
                     "codebleu", "meteor", "rouge_l"):
            print(f"  {name:<16} {getattr(components, name):.4f}")
        if components.cosine is not None:
            print(f"  {'cosine':<16} {components.cosine:.4f}")
        if components.flags:
            print("  flags: " + ";".join(sorted(f.value for f in components.flags)))
        print("verdicts")
        for name, verdict in verdicts.items():
            status = "accept" if verdict.accepted else "reject"
            warnings = ";".join(sorted(w.value for w in verdict.warnings)) or "-"
            print(f"  {name:<22} ctses={verdict.ctses:.4f} {status} warnings={warnings}")
    return EXIT_OK


def _cmd_batch(args, config: RunConfig, extras: dict) -> int:
    records = load_manifest(args.manifest)
    embeddings = None
    sidecar = args.embeddings or extras.get("embeddings")
    if sidecar:
        embeddings = load_embeddings(sidecar)
    results, failures = run_batch(records, config, embeddings)
    aggregates = default_aggregates(results, config)
    write_reports(
        results, aggregates, args.out_dir,
        config=config, failures=failures, manifest_path=args.manifest,
    )
    if args.format == "json":
        print(json.dumps(
            [row.__dict__ for row in aggregates], indent=2, sort_keys=True, default=str,
        ))
    else:
        header = f"{'dataset':<12} {'model':<10} {'metric':<22} " \
                 f"{'min':>7} {'q1':>7} {'median':>7} {'q3':>7} {'max':>7} {'mean':>7} {'>=thr%':>7}"
        print(header)
        for row in aggregates:
            print(f"{row.dataset:<12} {row.model:<10} {row.metric_name:<22} "
                  f"{row.min:>7.4f} {row.q1:>7.4f} {row.median:>7.4f} "
                  f"{row.q3:>7.4f} {row.max:>7.4f} {row.mean:>7.4f} "
                  f"{row.pct_at_or_above:>7.2f}")
    if failures:
        print(f"{len(failures)} pair(s) failed; see failures.csv", file=sys.stderr)
        return EXIT_PARTIAL_FAILURE
    return EXIT_OK


def _cmd_gate(args, config: RunConfig) -> int:
    original_src, refactored_src = _read_pair(args)
    components = compute_components(
        refactored_src, original_src, config.metric, config.lex,
        lenient=config.lenient_parse,
    )
    profile = config.profiles[0]
    verdict = evaluate(components, profile, config.thresholds)
    passed = verdict.accepted and not (args.strict and verdict.warnings)
    status = "PASS" if passed else "FAIL"
    warnings = ";".join(sorted(w.value for w in verdict.warnings)) or "-"
    print(f"{status} ctses={verdict.ctses:.4f} profile={profile.name} "
          f"threshold={config.thresholds.accept_min} warnings={warnings}")
    return EXIT_OK if passed else EXIT_GATE_FAILED


def _cmd_profiles(args) -> int:
    profiles = builtin_profiles()
    if args.format == "json":
        print(json.dumps(
            [{"name": p.name, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma}
             for p in profiles],
            indent=2,
        ))
    else:
        aliases = {v: k for k, v in PROFILE_ALIASES.items()}
        print(f"{'name':<22} {'alpha':>7} {'beta':>7} {'gamma':>7}  alias")
        for p in profiles:
            print(f"{p.name:<22} {p.alpha:>7.4f} {p.beta:>7.4f} {p.gamma:>7.4f}  "
                  f"{aliases.get(p.name, '-')}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
