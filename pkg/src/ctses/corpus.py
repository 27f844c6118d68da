"""Corpus ingestion, batch scoring, aggregation and report writing.

The manifest is a JSON-lines file, one pair record per line::

    {"pair_id": "p1", "dataset": "d4j", "model": "gpt",
     "original_path": "orig/p1.java", "refactored_path": "refac/p1.java",
     "embedding_key": "p1"}

Relative paths resolve against the manifest's directory. The optional
embedding sidecar is a text file of ``key v1 v2 ...`` lines; a record's
``embedding_key`` resolves when both ``<key>.original`` and
``<key>.refactored`` vectors are present, in which case their cosine
similarity is reported.

Reports are byte-stable: results are sorted by pair id before writing and
floats are serialized with full round-trip precision, so recomputing a
statistic from the per-pair CSV reproduces the aggregate CSV exactly.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .codebleu import ComponentScores, compute_components
from .composite import (
    ThresholdConfig,
    Verdict,
    WeightProfile,
    builtin_profiles,
    evaluate,
)
from .errors import (
    CtsesError,
    DimensionMismatchError,
    DuplicatePairIdError,
    ManifestParseError,
    MissingFileError,
    PairScoringError,
    SidecarParseError,
)
from .fingerprints import fingerprint
from .lexer import LexConfig
from .textmetrics import MetricConfig, cosine

PER_PAIR_COLUMNS = [
    "pair_id", "dataset", "model", "profile", "ngram", "weighted_ngram",
    "syntax", "dataflow", "codebleu", "meteor", "rouge_l", "cosine",
    "ctses", "accepted", "warnings", "flags",
]

AGGREGATE_COLUMNS = [
    "dataset", "model", "metric", "min", "q1", "median", "q3", "max",
    "mean", "pct_below", "pct_at_or_above",
]

_COMPONENT_METRICS = ("ngram", "weighted_ngram", "syntax", "dataflow",
                      "codebleu", "meteor", "rouge_l", "cosine")


def _default_profiles() -> tuple[WeightProfile, ...]:
    by_name = {p.name: p for p in builtin_profiles()}
    return (
        by_name["semantic-prioritized"],
        by_name["readability-aware"],
        by_name["uniform"],
    )


@dataclass(frozen=True)
class RunConfig:
    """Everything a scoring run needs besides the inputs themselves."""

    lex: LexConfig = LexConfig()
    metric: MetricConfig = MetricConfig()
    thresholds: ThresholdConfig = ThresholdConfig()
    profiles: tuple[WeightProfile, ...] = field(default_factory=_default_profiles)
    lenient_parse: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("at least one weight profile is required")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class PairRecord:
    """One (original, refactored) pair listed in a manifest."""

    pair_id: str
    dataset: str
    model: str
    original_path: Path
    refactored_path: Path
    embedding_key: str | None = None


@dataclass(frozen=True)
class PairResult:
    """Scores and per-profile verdicts for one pair."""

    pair_id: str
    dataset: str
    model: str
    components: ComponentScores
    verdicts: dict[str, Verdict]


@dataclass(frozen=True)
class PairFailure:
    """A pair that could not be scored, kept out of the aggregates."""

    pair_id: str
    dataset: str
    model: str
    error: str


@dataclass(frozen=True)
class AggregateRow:
    """Distribution summary of one metric over one dataset x model group."""

    dataset: str
    model: str
    metric_name: str
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    pct_below: float
    pct_at_or_above: float


# ---------------------------------------------------------------------------
# Manifest and sidecar loading
# ---------------------------------------------------------------------------

_REQUIRED_FIELDS = ("pair_id", "dataset", "model", "original_path", "refactored_path")


def load_manifest(path: str | Path, *, require_files: bool = False) -> list[PairRecord]:
    """Load pair records from a JSON-lines manifest.

    Relative file paths resolve against the manifest's directory. Duplicate
    pair ids are rejected. With ``require_files=True`` a missing original or
    refactored file raises immediately instead of at scoring time.
    """
    manifest_path = Path(path)
    if not manifest_path.is_file():
        raise ManifestParseError(f"manifest not found: {manifest_path}")
    base = manifest_path.parent
    records: list[PairRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(manifest_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestParseError(f"{manifest_path}:{lineno}: invalid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ManifestParseError(f"{manifest_path}:{lineno}: record must be an object")
        missing = [name for name in _REQUIRED_FIELDS if not raw.get(name)]
        if missing:
            raise ManifestParseError(
                f"{manifest_path}:{lineno}: missing field(s) {', '.join(missing)}"
            )
        pair_id = str(raw["pair_id"])
        if pair_id in seen:
            raise DuplicatePairIdError(f"{manifest_path}:{lineno}: duplicate pair_id {pair_id!r}")
        seen.add(pair_id)
        record = PairRecord(
            pair_id=pair_id,
            dataset=str(raw["dataset"]),
            model=str(raw["model"]),
            original_path=_resolve(base, str(raw["original_path"])),
            refactored_path=_resolve(base, str(raw["refactored_path"])),
            embedding_key=str(raw["embedding_key"]) if raw.get("embedding_key") else None,
        )
        if require_files:
            for file_path in (record.original_path, record.refactored_path):
                if not file_path.is_file():
                    raise MissingFileError(f"pair {pair_id}: file not found: {file_path}")
        records.append(record)
    return records


def _resolve(base: Path, raw: str) -> Path:
    p = Path(raw)
    return p if p.is_absolute() else base / p


def load_embeddings(path: str | Path) -> dict[str, tuple[float, ...]]:
    """Load a ``key v1 v2 ...`` embedding sidecar.

    All vectors must share one dimensionality.

    Raises:
        SidecarParseError: malformed line or unreadable file.
        DimensionMismatchError: vectors of differing lengths.
    """
    sidecar_path = Path(path)
    if not sidecar_path.is_file():
        raise SidecarParseError(f"embedding sidecar not found: {sidecar_path}")
    vectors: dict[str, tuple[float, ...]] = {}
    dimension: int | None = None
    for lineno, line in enumerate(sidecar_path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise SidecarParseError(f"{sidecar_path}:{lineno}: expected 'key v1 v2 ...'")
        key = parts[0]
        try:
            vector = tuple(float(v) for v in parts[1:])
        except ValueError as exc:
            raise SidecarParseError(f"{sidecar_path}:{lineno}: bad vector component: {exc}") from exc
        if dimension is None:
            dimension = len(vector)
        elif len(vector) != dimension:
            raise DimensionMismatchError(
                f"{sidecar_path}:{lineno}: vector for {key!r} has dimension "
                f"{len(vector)}, expected {dimension}"
            )
        vectors[key] = vector
    return vectors


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------

def score_pair(
    record: PairRecord,
    config: RunConfig,
    embeddings: dict[str, tuple[float, ...]] | None = None,
) -> PairResult:
    """Score one pair: all sub-metrics plus one verdict per profile.

    The refactored file is the candidate and the original the reference.
    Cosine is populated only when the record's embedding key resolves to
    both an ``.original`` and a ``.refactored`` vector in the sidecar.

    Raises:
        MissingFileError: either file does not exist.
        PairScoringError: lexing/parsing/reading failed; wraps the cause
            and names the pair.
    """
    for file_path in (record.original_path, record.refactored_path):
        if not Path(file_path).is_file():
            raise MissingFileError(f"pair {record.pair_id}: file not found: {file_path}")
    try:
        original_src = Path(record.original_path).read_text(encoding="utf-8")
        refactored_src = Path(record.refactored_path).read_text(encoding="utf-8")
        components = compute_components(
            refactored_src,
            original_src,
            config.metric,
            config.lex,
            lenient=config.lenient_parse,
        )
    except (CtsesError, OSError, UnicodeDecodeError) as exc:
        raise PairScoringError(record.pair_id, exc) from exc
    if embeddings is not None and record.embedding_key:
        original_vec = embeddings.get(f"{record.embedding_key}.original")
        refactored_vec = embeddings.get(f"{record.embedding_key}.refactored")
        if original_vec is not None and refactored_vec is not None:
            components = replace(components, cosine=cosine(refactored_vec, original_vec))
    verdicts = {
        profile.name: evaluate(components, profile, config.thresholds)
        for profile in config.profiles
    }
    return PairResult(
        pair_id=record.pair_id,
        dataset=record.dataset,
        model=record.model,
        components=components,
        verdicts=verdicts,
    )


def run_batch(
    records: list[PairRecord],
    config: RunConfig,
    embeddings: dict[str, tuple[float, ...]] | None = None,
) -> tuple[list[PairResult], list[PairFailure]]:
    """Score every record, collecting failures instead of aborting.

    Scoring is a pure function of the inputs, so results are identical for
    any worker count; they are sorted by pair id before being returned.
    """
    outcomes: dict[str, PairResult | PairFailure] = {}
    if config.workers == 1 or len(records) <= 1:
        for record in records:
            outcomes[record.pair_id] = _score_or_failure(record, config, embeddings)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {
                pool.submit(_score_or_failure, record, config, embeddings): record.pair_id
                for record in records
            }
            for future in concurrent.futures.as_completed(futures):
                outcome = future.result()
                outcomes[outcome.pair_id] = outcome
    results = sorted(
        (o for o in outcomes.values() if isinstance(o, PairResult)), key=lambda r: r.pair_id
    )
    failures = sorted(
        (o for o in outcomes.values() if isinstance(o, PairFailure)), key=lambda f: f.pair_id
    )
    return results, failures


def _score_or_failure(
    record: PairRecord,
    config: RunConfig,
    embeddings: dict[str, tuple[float, ...]] | None,
) -> PairResult | PairFailure:
    try:
        return score_pair(record, config, embeddings)
    except CtsesError as exc:
        return PairFailure(record.pair_id, record.dataset, record.model, str(exc))


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------

def metric_value(result: PairResult, metric_name: str) -> float | None:
    """Extract a metric from a result: a component name or a profile name."""
    if metric_name in _COMPONENT_METRICS:
        return getattr(result.components, metric_name)
    if metric_name in result.verdicts:
        return result.verdicts[metric_name].ctses
    raise KeyError(f"unknown metric {metric_name!r}")


def aggregate(
    results: list[PairResult],
    metric_name: str,
    threshold: float = 0.5,
) -> list[AggregateRow]:
    """Distribution summary per dataset x model group.

    Quartiles use linear interpolation on the sorted sample (quantile q sits
    at index (n - 1) * q). ``pct_at_or_above`` is the percentage of values
    at or above ``threshold``. Groups with no usable values are skipped.
    """
    groups: dict[tuple[str, str], list[float]] = {}
    for result in results:
        value = metric_value(result, metric_name)
        if value is None:
            continue
        groups.setdefault((result.dataset, result.model), []).append(value)
    rows: list[AggregateRow] = []
    for (dataset, model) in sorted(groups):
        values = np.asarray(sorted(groups[(dataset, model)]), dtype=float)
        n = len(values)
        at_or_above = int(np.count_nonzero(values >= threshold))
        rows.append(AggregateRow(
            dataset=dataset,
            model=model,
            metric_name=metric_name,
            min=float(values[0]),
            q1=float(np.quantile(values, 0.25)),
            median=float(np.quantile(values, 0.5)),
            q3=float(np.quantile(values, 0.75)),
            max=float(values[-1]),
            mean=float(values.mean()),
            pct_below=100.0 * (n - at_or_above) / n,
            pct_at_or_above=100.0 * at_or_above / n,
        ))
    return rows


def default_aggregates(
    results: list[PairResult],
    config: RunConfig,
    threshold: float | None = None,
) -> list[AggregateRow]:
    """Aggregate every component metric and every configured profile."""
    if threshold is None:
        threshold = config.thresholds.accept_min
    rows: list[AggregateRow] = []
    metrics = [m for m in _COMPONENT_METRICS if m != "cosine"]
    if any(r.components.cosine is not None for r in results):
        metrics.append("cosine")
    metrics.extend(profile.name for profile in config.profiles)
    for name in metrics:
        usable = [r for r in results if metric_value(r, name) is not None]
        rows.extend(aggregate(usable, name, threshold))
    return rows


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def write_reports(
    results: list[PairResult],
    aggregates: list[AggregateRow],
    out_dir: str | Path,
    *,
    config: RunConfig,
    failures: tuple[PairFailure, ...] | list[PairFailure] = (),
    manifest_path: str | Path | None = None,
) -> dict[str, Path]:
    """Write the per-pair CSV, aggregate CSV, failures CSV and run summary.

    Output is byte-stable for identical inputs and configuration: rows are
    sorted, floats carry full precision, and nothing execution-specific
    (timestamps, worker counts) is recorded.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "pairs": out / "pairs.csv",
        "aggregates": out / "aggregates.csv",
        "failures": out / "failures.csv",
        "summary": out / "summary.json",
    }
    _write_csv(paths["pairs"], PER_PAIR_COLUMNS, _pair_rows(results))
    _write_csv(paths["aggregates"], AGGREGATE_COLUMNS, _aggregate_rows(aggregates))
    _write_csv(
        paths["failures"],
        ["pair_id", "dataset", "model", "error"],
        [[f.pair_id, f.dataset, f.model, f.error] for f in sorted(failures, key=lambda f: f.pair_id)],
    )
    summary = {
        "manifest": str(manifest_path) if manifest_path is not None else None,
        "pairs_scored": len(results),
        "pairs_failed": len(failures),
        "profiles": [
            {"name": p.name, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma}
            for p in config.profiles
        ],
        "thresholds": {
            "accept_min": config.thresholds.accept_min,
            "codebleu_drift_min": config.thresholds.codebleu_drift_min,
            "meteor_min": config.thresholds.meteor_min,
            "rouge_min": config.thresholds.rouge_min,
        },
        "lex_config": {
            "include_comments": config.lex.include_comments,
            "split_identifiers": config.lex.split_identifiers,
            "lowercase_comment_words": config.lex.lowercase_comment_words,
            "fingerprint": config.lex.fingerprint(),
        },
        "metric_config_fingerprint": config.metric.fingerprint(),
        "lenient_parse": config.lenient_parse,
        "quantile_convention": "linear interpolation at index (n - 1) * q",
    }
    paths["summary"].write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return paths


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _pair_rows(results: list[PairResult]) -> list[list[str]]:
    rows = []
    for result in sorted(results, key=lambda r: r.pair_id):
        c = result.components
        flags = ";".join(sorted(f.value for f in c.flags))
        for profile_name, verdict in result.verdicts.items():
            warnings = ";".join(sorted(w.value for w in verdict.warnings))
            rows.append([
                result.pair_id, result.dataset, result.model, profile_name,
                _fmt(c.ngram), _fmt(c.weighted_ngram), _fmt(c.syntax),
                _fmt(c.dataflow), _fmt(c.codebleu), _fmt(c.meteor),
                _fmt(c.rouge_l), _fmt(c.cosine), _fmt(verdict.ctses),
                str(verdict.accepted).lower(), warnings, flags,
            ])
    return rows


def _aggregate_rows(aggregates: list[AggregateRow]) -> list[list[str]]:
    return [
        [
            row.dataset, row.model, row.metric_name, _fmt(row.min), _fmt(row.q1),
            _fmt(row.median), _fmt(row.q3), _fmt(row.max), _fmt(row.mean),
            _fmt(row.pct_below), _fmt(row.pct_at_or_above),
        ]
        for row in aggregates
    ]


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")
