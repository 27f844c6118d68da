"""Tests for the token-sequence metrics, checked against independent oracles."""

import itertools
import math
import random
from collections import Counter

import pytest

from ctses.errors import DimensionMismatchError, EmptyCandidateError, ZeroVectorError
from ctses.lexer import TokenKind, TokenStream, lex, split_subtokens
from ctses.textmetrics import (
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


def stream(*texts: str) -> TokenStream:
    return TokenStream.from_texts(texts)


def word_stream(text: str) -> TokenStream:
    return TokenStream.from_texts(text.split())


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def lcs_oracle(a, b) -> int:
    """Full-table quadratic LCS, kept independent of the two-row version."""
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[len(a)][len(b)]


def _chunks_of(pairs) -> int:
    count = 0
    prev = None
    for ci, ri in sorted(pairs):
        if prev is None or ci != prev[0] + 1 or ri != prev[1] + 1:
            count += 1
        prev = (ci, ri)
    return count


def _subkey(token):
    if token.kind is not TokenKind.IDENTIFIER:
        return None
    return frozenset(p.lower() for p in split_subtokens(token.text))


def alignment_oracle(cand, ref, use_subtokens=True):
    """Enumerate every maximal two-stage alignment positionally.

    Stage one realizes, per text, min(count) exact matches; stage two
    extends with identifier subtoken-set matches over the leftovers.
    Returns (max_matches, min_chunk_count) over the full enumeration.
    """
    cand_positions: dict = {}
    ref_positions: dict = {}
    for i, token in enumerate(cand):
        cand_positions.setdefault(token.text, []).append(i)
    for j, token in enumerate(ref):
        ref_positions.setdefault(token.text, []).append(j)

    shared = [t for t in cand_positions if t in ref_positions]
    per_text_choices = []
    for text in shared:
        quota = min(len(cand_positions[text]), len(ref_positions[text]))
        choices = []
        for c_subset in itertools.combinations(cand_positions[text], quota):
            for r_perm in itertools.permutations(ref_positions[text], quota):
                choices.append(tuple(zip(c_subset, r_perm)))
        per_text_choices.append(choices)

    best_m = 0
    best_chunks = math.inf
    for stage1_parts in itertools.product(*per_text_choices) if per_text_choices else [()]:
        stage1 = [pair for part in stage1_parts for pair in part]
        used_c = {i for i, _ in stage1}
        used_r = {j for _, j in stage1}
        left_c: dict = {}
        left_r: dict = {}
        if use_subtokens:
            for i, token in enumerate(cand):
                if i not in used_c and (key := _subkey(token)) is not None:
                    left_c.setdefault(key, []).append(i)
            for j, token in enumerate(ref):
                if j not in used_r and (key := _subkey(token)) is not None:
                    left_r.setdefault(key, []).append(j)
        per_key_choices = []
        for key in left_c:
            if key not in left_r:
                continue
            quota = min(len(left_c[key]), len(left_r[key]))
            if quota == 0:
                continue
            choices = []
            for c_subset in itertools.combinations(left_c[key], quota):
                for r_perm in itertools.permutations(left_r[key], quota):
                    choices.append(tuple(zip(c_subset, r_perm)))
            per_key_choices.append(choices)
        for stage2_parts in itertools.product(*per_key_choices) if per_key_choices else [()]:
            pairs = stage1 + [pair for part in stage2_parts for pair in part]
            m = len(pairs)
            chunks = _chunks_of(pairs)
            if m > best_m or (m == best_m and chunks < best_chunks):
                best_m, best_chunks = m, chunks
    return best_m, (0 if best_m == 0 else best_chunks)


def random_stream(rng, max_len=10, alphabet=("a", "b", "c", "d", "e")) -> TokenStream:
    return TokenStream.from_texts(
        [rng.choice(alphabet) for _ in range(rng.randrange(0, max_len + 1))]
    )


# ---------------------------------------------------------------------------
# n-gram precision
# ---------------------------------------------------------------------------

class TestNgramPrecision:
    def test_bigram_example(self):
        assert ngram_precision(word_stream("a b c"), word_stream("a b c d"), 2) == (2, 2)

    def test_identity_any_order(self):
        identical = word_stream("x y z w")
        for n in range(1, 5):
            clipped, total = ngram_precision(identical, identical, n)
            assert clipped == total > 0

    def test_clipping(self):
        assert ngram_precision(word_stream("a a a"), word_stream("a a"), 1) == (2, 3)

    def test_candidate_shorter_than_order(self):
        assert ngram_precision(word_stream("a"), word_stream("a b"), 2) == (0, 0)

    def test_kind_is_ignored(self):
        cand = TokenStream.from_texts(["return"], kind=TokenKind.IDENTIFIER)
        ref = lex("return x;")
        assert ngram_precision(cand, ref, 1) == (1, 1)


# ---------------------------------------------------------------------------
# BLEU
# ---------------------------------------------------------------------------

class TestBleu:
    def test_identity_is_exactly_one(self):
        identical = word_stream("a b c d e f g h i j")
        assert bleu(identical, identical) == 1.0

    def test_three_vs_four_token_example(self):
        # p1..p3 are 1, p4 excluded (no candidate 4-grams),
        # BP = exp(1 - 4/3): frozen to 5 decimals by hand.
        score = bleu(word_stream("a b c"), word_stream("a b c d"))
        assert score == pytest.approx(0.71653, abs=1e-4)

    def test_zero_unigram_overlap_is_zero(self):
        assert bleu(word_stream("x y"), word_stream("a b")) == 0.0

    def test_empty_candidate_raises(self):
        with pytest.raises(EmptyCandidateError):
            bleu(TokenStream.from_texts([]), word_stream("a"))

    def test_longer_candidate_caps_brevity_penalty(self):
        # Hand-evaluated: p1 = 2/3, p2 = 1/2, p3 smoothed to 1/2 (no match),
        # p4 excluded, weights renormalized over three orders, BP capped at 1
        # because the candidate is longer: exp(mean of logs) = 0.55032.
        score = bleu(word_stream("a b c"), word_stream("a b"))
        assert score == pytest.approx(0.55032, abs=1e-4)

    def test_smoothing_keeps_score_positive(self):
        # Unigrams overlap but no bigram does; add-one smoothing applies.
        score = bleu(word_stream("a x b"), word_stream("a y b"))
        assert 0.0 < score < 1.0

    def test_direction_sensitivity(self):
        cand = word_stream("a b")
        ref = word_stream("a b c d e")
        assert bleu(cand, ref) != bleu(ref, cand)

    def test_scores_bounded(self):
        rng = random.Random(11)
        for _ in range(200):
            cand = random_stream(rng)
            ref = random_stream(rng)
            if len(cand) == 0:
                continue
            assert 0.0 <= bleu(cand, ref) <= 1.0


# ---------------------------------------------------------------------------
# METEOR
# ---------------------------------------------------------------------------

class TestMeteor:
    def test_permutation_example_is_half(self):
        # m=4, P=R=F=1, four chunks: penalty = 0.5 * (4/4)^3 = 0.5.
        assert meteor(word_stream("a c b d"), word_stream("a b c d")) == pytest.approx(0.5)

    @pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 20])
    def test_identity_formula(self, m):
        identical = TokenStream.from_texts([f"tok{i}" for i in range(m)])
        expected = 1.0 - 0.5 * (1.0 / m) ** 3
        assert meteor(identical, identical) == pytest.approx(expected, abs=1e-12)

    def test_zero_overlap_is_zero(self):
        assert meteor(word_stream("x y"), word_stream("a b")) == 0.0

    def test_empty_streams_are_zero(self):
        empty = TokenStream.from_texts([])
        assert meteor(empty, word_stream("a")) == 0.0
        assert meteor(word_stream("a"), empty) == 0.0

    def test_subtoken_stage_matches_renamed_identifier(self):
        cand = stream("stringArray")
        ref = stream("string_array")
        assert meteor(cand, ref) > 0.0
        no_subtokens = MetricConfig(meteor_subtoken_matching=False)
        assert meteor(cand, ref, no_subtokens) == 0.0

    def test_subtoken_matching_is_set_based(self):
        assert len(meteor_alignment(stream("arrayString"), stream("stringArray")).matches) == 1

    def test_comment_words_do_not_subtoken_match(self):
        cand = TokenStream.from_texts(["classDef"], kind=TokenKind.IDENTIFIER)
        ref = TokenStream.from_texts(["class_def"], kind=TokenKind.COMMENT_WORD)
        assert len(meteor_alignment(cand, ref).matches) == 0

    def test_alignment_validity_on_random_streams(self):
        rng = random.Random(23)
        for _ in range(300):
            cand = random_stream(rng, max_len=14)
            ref = random_stream(rng, max_len=14)
            alignment = meteor_alignment(cand, ref)
            cand_indices = [i for i, _ in alignment.matches]
            ref_indices = [j for _, j in alignment.matches]
            assert cand_indices == sorted(cand_indices)
            assert len(set(cand_indices)) == len(cand_indices)
            assert len(set(ref_indices)) == len(ref_indices)
            assert alignment.chunk_count == _chunks_of(alignment.matches)

    def test_alignment_optimal_on_small_streams(self):
        rng = random.Random(37)
        for _ in range(120):
            cand = random_stream(rng, max_len=8, alphabet=("a", "b", "c", "d"))
            ref = random_stream(rng, max_len=8, alphabet=("a", "b", "c", "d"))
            expected_m, expected_chunks = alignment_oracle(cand.tokens, ref.tokens)
            alignment = meteor_alignment(cand, ref)
            assert len(alignment.matches) == expected_m
            assert alignment.chunk_count == expected_chunks

    def test_alignment_optimal_with_subtoken_stage(self):
        rng = random.Random(41)
        names = ("fooBar", "foo_bar", "bazQux", "baz_qux", "plain")
        for _ in range(60):
            cand = TokenStream.from_texts(
                [rng.choice(names) for _ in range(rng.randrange(0, 7))])
            ref = TokenStream.from_texts(
                [rng.choice(names) for _ in range(rng.randrange(0, 7))])
            expected_m, expected_chunks = alignment_oracle(cand.tokens, ref.tokens)
            alignment = meteor_alignment(cand, ref)
            assert len(alignment.matches) == expected_m
            assert alignment.chunk_count == expected_chunks

    def test_scores_bounded(self):
        rng = random.Random(59)
        for _ in range(200):
            score = meteor(random_stream(rng), random_stream(rng))
            assert 0.0 <= score <= 1.0

    def test_direction_sensitivity(self):
        cand = word_stream("a b")
        ref = word_stream("a b a b a b")
        assert meteor(cand, ref) != meteor(ref, cand)


# ---------------------------------------------------------------------------
# ROUGE-L
# ---------------------------------------------------------------------------

class TestRougeL:
    def test_hand_example(self):
        # LCS = 3 over "a c d" vs "a b c d": P=1, R=0.75, F = 6/7.
        score = rouge_l(word_stream("a c d"), word_stream("a b c d"))
        assert score == pytest.approx(0.85714, abs=1e-4)

    def test_identity_is_one(self):
        identical = word_stream("p q r s")
        assert rouge_l(identical, identical) == 1.0

    def test_disjoint_is_zero(self):
        assert rouge_l(word_stream("x y"), word_stream("a b")) == 0.0

    def test_empty_stream_is_zero(self):
        empty = TokenStream.from_texts([])
        assert rouge_l(empty, word_stream("a")) == 0.0
        assert rouge_l(word_stream("a"), empty) == 0.0

    def test_recall_weighting_configurable(self):
        cand = word_stream("a b")
        ref = word_stream("a b c d")
        balanced = rouge_l(cand, ref)
        recall_heavy = rouge_l(cand, ref, MetricConfig(rouge_beta=2.0))
        assert recall_heavy < balanced  # recall is the weaker side here

    def test_lcs_against_oracle(self):
        rng = random.Random(67)
        for _ in range(300):
            a = tuple(rng.choice("abcde") for _ in range(rng.randrange(0, 31)))
            b = tuple(rng.choice("abcde") for _ in range(rng.randrange(0, 31)))
            assert lcs_length(a, b) == lcs_oracle(a, b)


# ---------------------------------------------------------------------------
# Cosine
# ---------------------------------------------------------------------------

class TestCosine:
    def test_identical_vectors(self):
        assert cosine((1.0, 2.0, 3.0), (1.0, 2.0, 3.0)) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_vectors(self):
        assert cosine((1.0, 0.0), (0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)

    def test_analytic_angle(self):
        assert cosine((1.0, 0.0), (1.0, 1.0)) == pytest.approx(0.70711, abs=1e-5)

    def test_opposite_vectors(self):
        assert cosine((1.0, 0.0), (-1.0, 0.0)) == pytest.approx(-1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cosine((1.0, 2.0), (1.0, 2.0, 3.0))

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            cosine((0.0, 0.0), (1.0, 2.0))


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

class TestMetricConfig:
    def test_defaults_are_valid(self):
        cfg = MetricConfig()
        assert cfg.max_n == 4
        assert cfg.bleu_component_weights == (0.25, 0.25, 0.25, 0.25)

    def test_weight_length_must_match_max_n(self):
        with pytest.raises(ValueError):
            MetricConfig(max_n=3)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            MetricConfig(bleu_component_weights=(0.5, 0.5, 0.5, 0.5))

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            MetricConfig(meteor_alpha=1.5)

    def test_fingerprint_changes_with_values(self):
        assert MetricConfig().fingerprint() != MetricConfig(rouge_beta=2.0).fingerprint()
