"""Composite test-similarity scoring for Java unit tests.

Scores a refactored test against its original with CodeBLEU (n-gram,
keyword-weighted n-gram, AST subtree and def-use dataflow match), METEOR
and ROUGE-L, combines them into the CTSES composite under configurable
weight profiles, and applies a threshold/warning verdict scheme. A corpus
runner batch-scores manifests of pairs into distribution reports.
"""

from .codebleu import (
    ComponentScores,
    ScoreFlag,
    codebleu_score,
    compute_components,
    syntax_match,
    weighted_ngram_match,
)
from .composite import (
    ThresholdConfig,
    Verdict,
    WarningFlag,
    WeightProfile,
    builtin_profiles,
    ctses_score,
    evaluate,
    resolve_profile,
)
from .corpus import (
    AggregateRow,
    PairFailure,
    PairRecord,
    PairResult,
    RunConfig,
    aggregate,
    default_aggregates,
    load_embeddings,
    load_manifest,
    metric_value,
    run_batch,
    score_pair,
    write_reports,
)
from .dataflow import DataflowGraph, Relation, dataflow_match, extract_dataflow
from .errors import (
    CtsesError,
    DimensionMismatchError,
    DuplicatePairIdError,
    EmptyCandidateError,
    LexError,
    ManifestParseError,
    MissingFileError,
    PairScoringError,
    ParseError,
    SidecarParseError,
    UnnormalizedProfileError,
    UnterminatedCommentError,
    UnterminatedStringError,
    ZeroVectorError,
)
from .lexer import (
    JAVA_KEYWORDS,
    LexConfig,
    Token,
    TokenKind,
    TokenStream,
    lex,
    split_subtokens,
)
from .syntax import SyntaxTree, TreeNode, parse, subtree_multiset, to_sexpr
from .textmetrics import (
    Alignment,
    MetricConfig,
    bleu,
    cosine,
    lcs_length,
    meteor,
    meteor_alignment,
    ngram_precision,
    rouge_l,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateRow", "Alignment", "ComponentScores", "CtsesError",
    "DataflowGraph", "DimensionMismatchError", "DuplicatePairIdError",
    "EmptyCandidateError", "JAVA_KEYWORDS", "LexConfig", "LexError",
    "ManifestParseError", "MetricConfig", "MissingFileError",
    "PairFailure", "PairRecord", "PairResult", "PairScoringError",
    "ParseError", "Relation", "RunConfig", "ScoreFlag", "SidecarParseError",
    "SyntaxTree", "ThresholdConfig", "Token", "TokenKind", "TokenStream",
    "TreeNode", "UnnormalizedProfileError", "UnterminatedCommentError",
    "UnterminatedStringError", "Verdict", "WarningFlag", "WeightProfile",
    "ZeroVectorError", "aggregate", "bleu", "builtin_profiles",
    "codebleu_score", "compute_components", "cosine", "ctses_score",
    "dataflow_match", "default_aggregates", "evaluate", "extract_dataflow",
    "lcs_length", "lex", "load_embeddings", "load_manifest", "meteor",
    "meteor_alignment", "metric_value", "ngram_precision", "parse",
    "resolve_profile", "rouge_l", "run_batch", "score_pair",
    "split_subtokens", "subtree_multiset", "syntax_match", "to_sexpr",
    "weighted_ngram_match", "write_reports",
]
