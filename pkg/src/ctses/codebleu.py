"""CodeBLEU: n-gram, keyword-weighted n-gram, syntax and dataflow match.

The four components are mixed with configurable weights (equal quarters by
default). ``compute_components`` additionally runs METEOR and ROUGE-L over
the same token streams so one call yields every sub-metric the composite
score needs.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, replace

from .dataflow import dataflow_match, extract_dataflow
from .errors import EmptyCandidateError, ParseError
from .lexer import JAVA_KEYWORDS, LexConfig, TokenStream, lex
from .syntax import SyntaxTree, parse, subtree_multiset
from .textmetrics import MetricConfig, _brevity_penalty, _ngram_counter, bleu, meteor, rouge_l


class ScoreFlag(enum.Enum):
    """Conditions worth surfacing next to a score."""

    EMPTY_DATAFLOW_FALLBACK = "EmptyDataflowFallback"
    PARSE_FALLBACK = "ParseFallback"


@dataclass(frozen=True)
class ComponentScores:
    """Every sub-metric computed for one (candidate, reference) pair."""

    ngram: float
    weighted_ngram: float
    syntax: float
    dataflow: float
    codebleu: float
    meteor: float = 0.0
    rouge_l: float = 0.0
    cosine: float | None = None
    flags: frozenset[ScoreFlag] = frozenset()


def weighted_ngram_match(
    candidate: TokenStream,
    reference: TokenStream,
    cfg: MetricConfig = MetricConfig(),
) -> float:
    """BLEU variant where each n-gram weighs the sum of its token weights.

    Java keywords weigh ``cfg.keyword_weight`` (1.0 by default), all other
    tokens ``cfg.default_token_weight`` (0.2). Clipping, smoothing and the
    brevity penalty follow :func:`ctses.textmetrics.bleu`.

    Raises:
        EmptyCandidateError: the candidate stream has no tokens.
    """
    if len(candidate) == 0:
        raise EmptyCandidateError("cannot score an empty candidate stream")

    def gram_weight(gram: tuple[str, ...]) -> float:
        return sum(
            cfg.keyword_weight if text in JAVA_KEYWORDS else cfg.default_token_weight
            for text in gram
        )

    log_sum = 0.0
    weight_sum = 0.0
    for order in range(1, cfg.max_n + 1):
        order_weight = cfg.bleu_component_weights[order - 1]
        cand_texts = candidate.texts
        if len(cand_texts) - order + 1 <= 0:
            continue
        cand_grams = _ngram_counter(cand_texts, order)
        ref_grams = _ngram_counter(reference.texts, order)
        matched = sum(
            min(count, ref_grams[gram]) * gram_weight(gram)
            for gram, count in cand_grams.items()
        )
        total = sum(count * gram_weight(gram) for gram, count in cand_grams.items())
        if matched == 0.0:
            if order == 1:
                return 0.0
            precision = 1.0 / (total + 1.0)
        else:
            precision = matched / total
        log_sum += order_weight * math.log(precision)
        weight_sum += order_weight
    if weight_sum == 0.0:
        return 0.0
    return _brevity_penalty(len(candidate), len(reference)) * math.exp(log_sum / weight_sum)


def syntax_match(candidate: SyntaxTree, reference: SyntaxTree) -> float:
    """Fraction of candidate internal subtrees present in the reference."""
    cand = subtree_multiset(candidate)
    ref = subtree_multiset(reference)
    if not cand:
        return 1.0 if not ref else 0.0
    matched = sum((cand & ref).values())
    return matched / sum(cand.values())


def effective_codebleu_weights(
    cfg: MetricConfig, flags: frozenset[ScoreFlag]
) -> tuple[float, float, float, float]:
    """Component weights after any parse-fallback redistribution.

    Under ``PARSE_FALLBACK`` the syntax and dataflow weights are folded
    into the two n-gram components in proportion to their own weights.
    """
    w1, w2, w3, w4 = cfg.codebleu_weights
    if ScoreFlag.PARSE_FALLBACK not in flags:
        return w1, w2, w3, w4
    spare = w3 + w4
    ngram_total = w1 + w2
    if ngram_total == 0.0:
        return 0.5, 0.5, 0.0, 0.0
    return w1 + spare * w1 / ngram_total, w2 + spare * w2 / ngram_total, 0.0, 0.0


def codebleu_score(
    candidate_src: str,
    reference_src: str,
    cfg: MetricConfig = MetricConfig(),
    lex_cfg: LexConfig = LexConfig(),
    *,
    lenient: bool = False,
) -> ComponentScores:
    """Compute the four CodeBLEU components and their weighted mix.

    In strict mode (default) a source outside the parser's subset raises
    :class:`ParseError`. With ``lenient=True`` the syntax and dataflow
    components are dropped, their weights redistributed to the n-gram
    components, and ``PARSE_FALLBACK`` flagged.
    """
    candidate = lex(candidate_src, lex_cfg, source_id="<candidate>")
    reference = lex(reference_src, lex_cfg, source_id="<reference>")
    # Parsing needs whole identifiers even when token metrics split them.
    if lex_cfg.split_identifiers:
        parse_lex = replace(lex_cfg, split_identifiers=False)
        parse_candidate = lex(candidate_src, parse_lex, source_id="<candidate>")
        parse_reference = lex(reference_src, parse_lex, source_id="<reference>")
    else:
        parse_candidate, parse_reference = candidate, reference

    ngram = bleu(candidate, reference, cfg)
    weighted = weighted_ngram_match(candidate, reference, cfg)

    flags: set[ScoreFlag] = set()
    syntax_score = 0.0
    dataflow_score = 0.0
    try:
        candidate_tree = parse(parse_candidate)
        reference_tree = parse(parse_reference)
    except ParseError:
        if not lenient:
            raise
        flags.add(ScoreFlag.PARSE_FALLBACK)
    else:
        syntax_score = syntax_match(candidate_tree, reference_tree)
        candidate_flow = extract_dataflow(candidate_tree)
        reference_flow = extract_dataflow(reference_tree)
        if not candidate_flow.edges and reference_flow.edges:
            flags.add(ScoreFlag.EMPTY_DATAFLOW_FALLBACK)
        dataflow_score = dataflow_match(
            candidate_flow,
            reference_flow,
            empty_fallback=cfg.dataflow_empty_fallback,
            collapse_relations=cfg.dataflow_collapse_relations,
        )

    frozen_flags = frozenset(flags)
    w1, w2, w3, w4 = effective_codebleu_weights(cfg, frozen_flags)
    combined = w1 * ngram + w2 * weighted + w3 * syntax_score + w4 * dataflow_score
    return ComponentScores(
        ngram=ngram,
        weighted_ngram=weighted,
        syntax=syntax_score,
        dataflow=dataflow_score,
        codebleu=combined,
        flags=frozen_flags,
    )


def compute_components(
    candidate_src: str,
    reference_src: str,
    cfg: MetricConfig = MetricConfig(),
    lex_cfg: LexConfig = LexConfig(),
    *,
    lenient: bool = False,
) -> ComponentScores:
    """All seven sub-metrics for a pair of sources (cosine left unset)."""
    scores = codebleu_score(candidate_src, reference_src, cfg, lex_cfg, lenient=lenient)
    candidate = lex(candidate_src, lex_cfg, source_id="<candidate>")
    reference = lex(reference_src, lex_cfg, source_id="<reference>")
    return replace(
        scores,
        meteor=meteor(candidate, reference, cfg),
        rouge_l=rouge_l(candidate, reference, cfg),
    )


def combine_components(components: ComponentScores, cfg: MetricConfig) -> float:
    """Recompute the CodeBLEU mix from stored component values."""
    w1, w2, w3, w4 = effective_codebleu_weights(cfg, components.flags)
    return (w1 * components.ngram + w2 * components.weighted_ngram
            + w3 * components.syntax + w4 * components.dataflow)
