"""Token-sequence similarity metrics.

Implements the BLEU-style modified n-gram precision core, METEOR with a
two-stage unigram aligner (exact text, then identifier-subtoken equality),
ROUGE-L as a whole-sequence LCS F-measure, and cosine similarity over
externally supplied vectors.

All metrics are direction-sensitive: the first stream is the candidate
(refactored test) and the second the reference (original test).
"""

from __future__ import annotations

import enum
import math
from collections import Counter, defaultdict, deque
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyCandidateError, ZeroVectorError
from .fingerprints import fingerprint
from .lexer import Token, TokenKind, TokenStream, split_subtokens

# Inputs at or below this many tokens per side get the exact minimum-chunk
# alignment search; larger inputs use the deterministic greedy aligner.
_EXACT_ALIGN_LIMIT = 12
_EXACT_ALIGN_BUDGET = 300_000


class Smoothing(enum.Enum):
    """Supported BLEU smoothing schemes."""

    ADD_ONE_NUMERATOR_DENOMINATOR = "AddOneNumeratorDenominator"


@dataclass(frozen=True)
class MetricConfig:
    """Parameters for every token-sequence metric.

    ``bleu_component_weights`` are the per-order weights inside the BLEU
    geometric mean (length ``max_n``); ``codebleu_weights`` mix the four
    CodeBLEU components. Keyword weighting for the weighted n-gram match
    uses ``keyword_weight`` vs ``default_token_weight``.
    """

    max_n: int = 4
    bleu_component_weights: tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)
    meteor_alpha: float = 0.9
    meteor_beta: float = 3.0
    meteor_gamma: float = 0.5
    meteor_subtoken_matching: bool = True
    rouge_beta: float = 1.0
    smoothing: Smoothing = Smoothing.ADD_ONE_NUMERATOR_DENOMINATOR
    codebleu_weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    keyword_weight: float = 1.0
    default_token_weight: float = 0.2
    dataflow_empty_fallback: float = 1.0
    dataflow_collapse_relations: bool = False

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if len(self.bleu_component_weights) != self.max_n:
            raise ValueError("bleu_component_weights must have length max_n")
        for name in ("bleu_component_weights", "codebleu_weights"):
            weights = getattr(self, name)
            if any(w < 0 for w in weights):
                raise ValueError(f"{name} must be nonnegative")
            if abs(sum(weights) - 1.0) > 1e-9:
                raise ValueError(f"{name} must sum to 1")
        if not 0.0 < self.meteor_alpha < 1.0:
            raise ValueError("meteor_alpha must lie in (0, 1)")
        if self.meteor_beta <= 0 or self.rouge_beta <= 0:
            raise ValueError("meteor_beta and rouge_beta must be positive")
        if not 0.0 <= self.meteor_gamma <= 1.0:
            raise ValueError("meteor_gamma must lie in [0, 1]")

    def fingerprint(self) -> str:
        return fingerprint(self)


@dataclass(frozen=True)
class Alignment:
    """A unigram alignment: matches as (candidate_index, reference_index).

    Candidate indices are strictly increasing, reference indices distinct.
    ``chunk_count`` is the number of maximal runs contiguous in both
    sequences (0 only for an empty alignment).
    """

    matches: tuple[tuple[int, int], ...]
    chunk_count: int


# ---------------------------------------------------------------------------
# n-gram precision / BLEU
# ---------------------------------------------------------------------------

def _ngram_counter(texts: tuple[str, ...], n: int) -> Counter:
    return Counter(texts[i:i + n] for i in range(len(texts) - n + 1))


def ngram_precision(candidate: TokenStream, reference: TokenStream, n: int) -> tuple[int, int]:
    """Clipped n-gram matches and candidate n-gram total, texts compared exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cand = candidate.texts
    total = max(0, len(cand) - n + 1)
    if total == 0:
        return 0, 0
    cand_grams = _ngram_counter(cand, n)
    ref_grams = _ngram_counter(reference.texts, n)
    clipped = sum(min(count, ref_grams[gram]) for gram, count in cand_grams.items())
    return clipped, total


def bleu(candidate: TokenStream, reference: TokenStream, cfg: MetricConfig = MetricConfig()) -> float:
    """Sentence-level BLEU with brevity penalty.

    Orders whose candidate n-gram total is zero are excluded and the
    remaining order weights renormalized. Zero-count precisions at n >= 2
    are smoothed add-one; a zero unigram precision forces a zero score.

    Raises:
        EmptyCandidateError: the candidate stream has no tokens.
    """
    if len(candidate) == 0:
        raise EmptyCandidateError("cannot score an empty candidate stream")
    log_sum = 0.0
    weight_sum = 0.0
    for order in range(1, cfg.max_n + 1):
        weight = cfg.bleu_component_weights[order - 1]
        matches, total = ngram_precision(candidate, reference, order)
        if total == 0:
            continue
        if matches == 0:
            if order == 1:
                return 0.0
            precision = 1.0 / (total + 1)
        else:
            precision = matches / total
        log_sum += weight * math.log(precision)
        weight_sum += weight
    if weight_sum == 0.0:
        return 0.0
    return _brevity_penalty(len(candidate), len(reference)) * math.exp(log_sum / weight_sum)


def _brevity_penalty(candidate_len: int, reference_len: int) -> float:
    return min(1.0, math.exp(1.0 - reference_len / candidate_len))


# ---------------------------------------------------------------------------
# METEOR
# ---------------------------------------------------------------------------

def _subtoken_key(token: Token) -> frozenset[str] | None:
    if token.kind is not TokenKind.IDENTIFIER:
        return None
    return frozenset(part.lower() for part in split_subtokens(token.text))


def _stage_quotas(cand: tuple[Token, ...], ref: tuple[Token, ...], use_subtokens: bool):
    """Per-text exact quotas and per-key subtoken quotas over the leftovers.

    Exact matches preferentially consume non-identifier occurrences so that
    the leftovers keep as many subtoken-matchable identifiers as possible.
    """
    cand_texts = Counter(t.text for t in cand)
    ref_texts = Counter(t.text for t in ref)
    exact = {text: min(count, ref_texts[text]) for text, count in cand_texts.items()
             if min(count, ref_texts[text]) > 0}
    sub: dict[frozenset[str], int] = {}
    if use_subtokens:
        def leftover_ident_counts(tokens, totals):
            ident = Counter(t.text for t in tokens if t.kind is TokenKind.IDENTIFIER)
            out: Counter = Counter()
            for text, ident_count in ident.items():
                matched = exact.get(text, 0)
                non_ident = totals[text] - ident_count
                out[text] = ident_count - max(0, matched - non_ident)
            return out

        cand_left = leftover_ident_counts(cand, cand_texts)
        ref_left = leftover_ident_counts(ref, ref_texts)
        cand_keys: Counter = Counter()
        ref_keys: Counter = Counter()
        for text, count in cand_left.items():
            if count > 0:
                cand_keys[frozenset(p.lower() for p in split_subtokens(text))] += count
        for text, count in ref_left.items():
            if count > 0:
                ref_keys[frozenset(p.lower() for p in split_subtokens(text))] += count
        for key, count in cand_keys.items():
            quota = min(count, ref_keys[key])
            if quota > 0:
                sub[key] = quota
    return exact, sub


def _chunk_count(pairs: list[tuple[int, int]]) -> int:
    chunks = 0
    prev = None
    for ci, ri in pairs:
        if prev is None or ci != prev[0] + 1 or ri != prev[1] + 1:
            chunks += 1
        prev = (ci, ri)
    return chunks


class _BudgetExceeded(Exception):
    pass


def _exact_alignment(cand, ref, exact_quota, sub_quota) -> list[tuple[int, int]]:
    """Branch-and-bound search for the minimum-chunk maximal alignment.

    Among alignments realizing the stage quotas, minimizes chunk count and
    breaks remaining ties toward the lexicographically smallest reference
    index sequence.
    """
    total_target = sum(exact_quota.values()) + sum(sub_quota.values())
    if total_target == 0:
        return []
    n = len(cand)
    sub_keys = [_subtoken_key(t) for t in cand]
    ref_sub_keys = [_subtoken_key(t) for t in ref]
    best_chunks = math.inf
    best_refs: tuple[int, ...] = ()
    best_pairs: list[tuple[int, int]] = []
    nodes = 0

    def dfs(i, used_ref, pairs, breaks, rem_exact, rem_sub, matched):
        nonlocal nodes, best_chunks, best_refs, best_pairs
        nodes += 1
        if nodes > _EXACT_ALIGN_BUDGET:
            raise _BudgetExceeded
        if matched + (n - i) < total_target:
            return
        remaining = total_target - matched
        floor = breaks + (1 if (pairs or remaining) else 0)
        if floor > best_chunks:
            return
        if i == n:
            if matched == total_target:
                chunks = breaks + (1 if pairs else 0)
                refs = tuple(r for _, r in pairs)
                if chunks < best_chunks or (chunks == best_chunks and refs < best_refs):
                    best_chunks, best_refs, best_pairs = chunks, refs, list(pairs)
            return
        token = cand[i]
        for j in range(len(ref)):
            if used_ref & (1 << j):
                continue
            if token.text == ref[j].text:
                quota_key, quotas = token.text, rem_exact
            else:
                key = sub_keys[i]
                if key is None or key != ref_sub_keys[j] or key not in rem_sub:
                    continue
                quota_key, quotas = key, rem_sub
            if quotas.get(quota_key, 0) <= 0:
                continue
            quotas[quota_key] -= 1
            new_breaks = breaks
            if pairs and not (pairs[-1][0] == i - 1 and pairs[-1][1] == j - 1):
                new_breaks += 1
            pairs.append((i, j))
            dfs(i + 1, used_ref | (1 << j), pairs, new_breaks, rem_exact, rem_sub, matched + 1)
            pairs.pop()
            quotas[quota_key] += 1
        dfs(i + 1, used_ref, pairs, breaks, rem_exact, rem_sub, matched)

    dfs(0, 0, [], 0, dict(exact_quota), dict(sub_quota), 0)
    return best_pairs


def _greedy_alignment(cand, ref, use_subtokens) -> list[tuple[int, int]]:
    """Linear-time aligner preferring run continuation, for large streams."""
    used = [False] * len(ref)
    matched_for: dict[int, int] = {}

    def run_stage(eligible_cand, key_of_cand, key_of_ref):
        queues: defaultdict = defaultdict(deque)
        for j, token in enumerate(ref):
            if not used[j]:
                key = key_of_ref(token)
                if key is not None:
                    queues[key].append(j)
        last = -2
        for i in eligible_cand:
            key = key_of_cand(cand[i])
            if key is None:
                continue
            queue = queues.get(key)
            j = last + 1
            if 0 <= j < len(ref) and not used[j] and key_of_ref(ref[j]) == key:
                chosen = j
            else:
                chosen = None
                if queue:
                    while queue and used[queue[0]]:
                        queue.popleft()
                    if queue:
                        chosen = queue.popleft()
            if chosen is None:
                continue
            used[chosen] = True
            matched_for[i] = chosen
            last = chosen

    run_stage(range(len(cand)), lambda t: t.text, lambda t: t.text)
    if use_subtokens:
        leftovers = [i for i in range(len(cand)) if i not in matched_for]
        run_stage(leftovers, _subtoken_key, _subtoken_key)
    return sorted(matched_for.items())


def meteor_alignment(
    candidate: TokenStream,
    reference: TokenStream,
    cfg: MetricConfig = MetricConfig(),
) -> Alignment:
    """Compute the METEOR unigram alignment between two streams.

    Stage one matches exact token texts; stage two (when enabled) matches
    identifiers whose lowercased subtoken sets are equal. The alignment is
    maximal for that staged construction; ties are broken toward fewer
    chunks, then the leftmost reference indices (exactly for small inputs,
    heuristically beyond ``_EXACT_ALIGN_LIMIT`` tokens per side).
    """
    cand, ref = candidate.tokens, reference.tokens
    use_sub = cfg.meteor_subtoken_matching
    if len(cand) <= _EXACT_ALIGN_LIMIT and len(ref) <= _EXACT_ALIGN_LIMIT:
        exact_quota, sub_quota = _stage_quotas(cand, ref, use_sub)
        try:
            pairs = _exact_alignment(cand, ref, exact_quota, sub_quota)
        except _BudgetExceeded:
            pairs = _greedy_alignment(cand, ref, use_sub)
    else:
        pairs = _greedy_alignment(cand, ref, use_sub)
    return Alignment(matches=tuple(pairs), chunk_count=_chunk_count(pairs))


def meteor(candidate: TokenStream, reference: TokenStream, cfg: MetricConfig = MetricConfig()) -> float:
    """METEOR score: harmonic-mean F over the alignment, minus a
    fragmentation penalty of gamma * (chunks / matches) ** beta."""
    if len(candidate) == 0 or len(reference) == 0:
        return 0.0
    alignment = meteor_alignment(candidate, reference, cfg)
    m = len(alignment.matches)
    if m == 0:
        return 0.0
    precision = m / len(candidate)
    recall = m / len(reference)
    f_mean = (precision * recall) / (cfg.meteor_alpha * precision + (1.0 - cfg.meteor_alpha) * recall)
    penalty = cfg.meteor_gamma * (alignment.chunk_count / m) ** cfg.meteor_beta
    return f_mean * (1.0 - penalty)


# ---------------------------------------------------------------------------
# ROUGE-L
# ---------------------------------------------------------------------------

def lcs_length(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Longest common subsequence length via two-row dynamic programming."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for item in a:
        current = [0]
        for j, other in enumerate(b, start=1):
            if item == other:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: TokenStream, reference: TokenStream, cfg: MetricConfig = MetricConfig()) -> float:
    """LCS-based F-measure over whole token streams (beta = rouge_beta)."""
    if len(candidate) == 0 or len(reference) == 0:
        return 0.0
    lcs = lcs_length(candidate.texts, reference.texts)
    if lcs == 0:
        return 0.0
    recall = lcs / len(reference)
    precision = lcs / len(candidate)
    beta_sq = cfg.rouge_beta ** 2
    return (1.0 + beta_sq) * recall * precision / (recall + beta_sq * precision)


# ---------------------------------------------------------------------------
# Cosine
# ---------------------------------------------------------------------------

def cosine(u, v) -> float:
    """Cosine similarity of two equal-dimension non-zero vectors.

    Raises:
        DimensionMismatchError: vectors differ in dimension.
        ZeroVectorError: either vector has zero magnitude.
    """
    u_arr = np.asarray(u, dtype=float)
    v_arr = np.asarray(v, dtype=float)
    if u_arr.shape != v_arr.shape or u_arr.ndim != 1:
        raise DimensionMismatchError(f"incompatible shapes {u_arr.shape} and {v_arr.shape}")
    norm_u = float(np.linalg.norm(u_arr))
    norm_v = float(np.linalg.norm(v_arr))
    if norm_u == 0.0 or norm_v == 0.0:
        raise ZeroVectorError("cosine similarity is undefined for zero vectors")
    value = float(np.dot(u_arr, v_arr) / (norm_u * norm_v))
    return max(-1.0, min(1.0, value))
