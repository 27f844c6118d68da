"""The CTSES composite score: weighted mix of CodeBLEU, METEOR and ROUGE-L.

CTSES = alpha * CodeBLEU + beta * METEOR + gamma * ROUGE-L, with the weight
triple normalized to one. A verdict applies the acceptance threshold
(score >= 0.50 by default) and raises advisory warnings when individual
sub-metrics fall below their own floors. Warnings never modify the score;
a strict gate may treat them as failures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .codebleu import ComponentScores
from .errors import UnnormalizedProfileError

_NORMALIZATION_TOLERANCE = 1e-9


@dataclass(frozen=True)
class WeightProfile:
    """Named (alpha, beta, gamma) weighting of CodeBLEU/METEOR/ROUGE-L."""

    name: str
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise UnnormalizedProfileError(f"profile {self.name!r} has negative weights")
        total = self.alpha + self.beta + self.gamma
        if abs(total - 1.0) > _NORMALIZATION_TOLERANCE:
            raise UnnormalizedProfileError(
                f"profile {self.name!r} weights sum to {total!r}, expected 1"
            )


@dataclass(frozen=True)
class ThresholdConfig:
    """Acceptance threshold and per-metric warning floors."""

    accept_min: float = 0.50
    codebleu_drift_min: float = 0.40
    meteor_min: float = 0.50
    rouge_min: float = 0.50


class WarningFlag(enum.Enum):
    """Advisory flags raised by sub-metric floors."""

    SEMANTIC_DRIFT = "SemanticDrift"
    REDUCED_READABILITY = "ReducedReadability"
    STRUCTURAL_MISALIGNMENT = "StructuralMisalignment"


@dataclass(frozen=True)
class Verdict:
    """Composite score, accept decision and warnings for one profile."""

    ctses: float
    profile_name: str
    accepted: bool
    warnings: frozenset[WarningFlag]
    components: ComponentScores


def builtin_profiles() -> tuple[WeightProfile, ...]:
    """The three built-in weight profiles."""
    return (
        WeightProfile("uniform", 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
        WeightProfile("semantic-prioritized", 0.5, 0.3, 0.2),
        WeightProfile("readability-aware", 0.4, 0.3, 0.3),
    )


#: Alternate spellings accepted wherever a profile name is looked up.
PROFILE_ALIASES: dict[str, str] = {
    "ctses1": "semantic-prioritized",
    "ctses2": "readability-aware",
    "baseline-avg": "uniform",
}


def resolve_profile(name: str) -> WeightProfile:
    """Look up a built-in profile by canonical name or alias."""
    canonical = PROFILE_ALIASES.get(name.lower(), name.lower())
    for profile in builtin_profiles():
        if profile.name == canonical:
            return profile
    known = ", ".join(p.name for p in builtin_profiles())
    raise KeyError(f"unknown profile {name!r} (known: {known})")


def ctses_score(components: ComponentScores, profile: WeightProfile) -> float:
    """Weighted linear combination of CodeBLEU, METEOR and ROUGE-L."""
    total = profile.alpha + profile.beta + profile.gamma
    if abs(total - 1.0) > _NORMALIZATION_TOLERANCE:
        raise UnnormalizedProfileError(f"profile {profile.name!r} is not normalized")
    return (profile.alpha * components.codebleu
            + profile.beta * components.meteor
            + profile.gamma * components.rouge_l)


def evaluate(
    components: ComponentScores,
    profile: WeightProfile,
    thresholds: ThresholdConfig = ThresholdConfig(),
) -> Verdict:
    """Score under a profile and apply the threshold/warning scheme.

    Acceptance is inclusive (score exactly at ``accept_min`` passes);
    warnings use strict comparison (a sub-metric exactly at its floor does
    not warn).
    """
    score = ctses_score(components, profile)
    warnings = set()
    if components.codebleu < thresholds.codebleu_drift_min:
        warnings.add(WarningFlag.SEMANTIC_DRIFT)
    if components.meteor < thresholds.meteor_min:
        warnings.add(WarningFlag.REDUCED_READABILITY)
    if components.rouge_l < thresholds.rouge_min:
        warnings.add(WarningFlag.STRUCTURAL_MISALIGNMENT)
    return Verdict(
        ctses=score,
        profile_name=profile.name,
        accepted=score >= thresholds.accept_min,
        warnings=frozenset(warnings),
        components=components,
    )
