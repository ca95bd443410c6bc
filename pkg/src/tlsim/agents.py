"""Learning agents and the source/target transfer-learning taxonomy."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .errors import EmptyDomain, SignatureLengthMismatch, UnclassifiablePair

DEFAULT_HOMOGENEITY_THRESHOLD = 0.9


class LabelAxis(str, Enum):
    TRANSDUCTIVE = "Transductive"
    INDUCTIVE = "Inductive"
    UNSUPERVISED = "Unsupervised"


class DomainAxis(str, Enum):
    HOMOGENEOUS = "Homogeneous"
    HETEROGENEOUS = "Heterogeneous"


class KnowledgeKind(str, Enum):
    INSTANCE = "Instance"
    FEATURE = "Feature"
    PARAMETER = "Parameter"
    RELATIONAL = "Relational"


ALL_KINDS = frozenset(KnowledgeKind)


@dataclass(frozen=True)
class DomainDescriptor:
    """Feature space, data distribution and dataset size of one algorithm.

    The distribution is summarised as a normalised histogram over a binning
    shared by every agent of the same feature space.
    """

    feature_space_id: str
    distribution_signature: tuple[float, ...]
    sample_count: int
    has_labels: bool
    bits_per_sample: int = 1

    def __post_init__(self):
        object.__setattr__(self, "distribution_signature", tuple(float(x) for x in self.distribution_signature))
        if self.sample_count < 0:
            raise ValueError("sample_count must be >= 0")
        if self.bits_per_sample <= 0:
            raise ValueError("bits_per_sample must be > 0")
        sig = self.distribution_signature
        if any(x < 0 or not math.isfinite(x) for x in sig):
            raise ValueError("distribution_signature entries must be finite and >= 0")
        if self.sample_count > 0 and abs(math.fsum(sig) - 1.0) > 1e-9:
            raise ValueError("distribution_signature must sum to 1")


@dataclass(frozen=True)
class TaskDescriptor:
    label_space_id: str
    function_signature: str
    parameter_count: int = 0
    hyperparams: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.parameter_count < 0:
            raise ValueError("parameter_count must be >= 0")


@dataclass(frozen=True)
class LearningAgent:
    """The analysis algorithm of one MAPE-K loop, with its traditional baselines."""

    id: str
    node: str
    purpose: str
    domain: DomainDescriptor
    task: TaskDescriptor
    baseline_performance: float
    baseline_training_time: float

    def __post_init__(self):
        if not 0.0 <= self.baseline_performance <= 1.0:
            raise ValueError(f"agent {self.id}: baseline_performance must lie in [0, 1]")
        if not self.baseline_training_time > 0:
            raise ValueError(f"agent {self.id}: baseline_training_time must be > 0")


@dataclass(frozen=True)
class TlCategory:
    label_axis: LabelAxis
    domain_axis: DomainAxis
    solution_axis: KnowledgeKind


def classify_label_axis(source: LearningAgent, target: LearningAgent) -> LabelAxis:
    src, tgt = source.domain.has_labels, target.domain.has_labels
    if src and not tgt:
        return LabelAxis.TRANSDUCTIVE
    if src and tgt:
        return LabelAxis.INDUCTIVE
    if not src and not tgt:
        return LabelAxis.UNSUPERVISED
    raise UnclassifiablePair(f"{source.id} -> {target.id}: only the target has labels")


def domain_similarity(a: DomainDescriptor, b: DomainDescriptor) -> float:
    """Histogram overlap ``sum(min(a_i, b_i))``; 1 for identical signatures, 0 for disjoint support."""
    if len(a.distribution_signature) != len(b.distribution_signature):
        raise SignatureLengthMismatch(
            f"signature lengths differ: {len(a.distribution_signature)} != {len(b.distribution_signature)}"
        )
    if a.sample_count == 0 or b.sample_count == 0:
        raise EmptyDomain("domain_similarity needs non-empty domains")
    # fsum over a sorted sequence keeps the result symmetric bit-for-bit
    overlap = math.fsum(sorted(min(x, y) for x, y in zip(a.distribution_signature, b.distribution_signature)))
    return min(1.0, max(0.0, overlap))


def pair_similarity(source: LearningAgent, target: LearningAgent) -> float:
    """Similarity used by the sandbox; 0 whenever the domains are not comparable."""
    if source.domain.feature_space_id != target.domain.feature_space_id:
        return 0.0
    try:
        return domain_similarity(source.domain, target.domain)
    except (SignatureLengthMismatch, EmptyDomain):
        return 0.0


def classify_domain_axis(
    source: LearningAgent,
    target: LearningAgent,
    threshold: float = DEFAULT_HOMOGENEITY_THRESHOLD,
) -> DomainAxis:
    if source.domain == target.domain:
        return DomainAxis.HOMOGENEOUS
    if source.domain.feature_space_id != target.domain.feature_space_id:
        return DomainAxis.HETEROGENEOUS
    if pair_similarity(source, target) >= threshold:
        return DomainAxis.HOMOGENEOUS
    return DomainAxis.HETEROGENEOUS


def classify(
    source: LearningAgent,
    target: LearningAgent,
    kind: KnowledgeKind,
    threshold: float = DEFAULT_HOMOGENEITY_THRESHOLD,
) -> TlCategory:
    return TlCategory(
        classify_label_axis(source, target),
        classify_domain_axis(source, target, threshold),
        KnowledgeKind(kind),
    )


def admissible_knowledge_kinds(category: TlCategory | DomainAxis) -> frozenset[KnowledgeKind]:
    # raw instances from a foreign feature space cannot be consumed as-is
    axis = category.domain_axis if isinstance(category, TlCategory) else DomainAxis(category)
    if axis is DomainAxis.HOMOGENEOUS:
        return ALL_KINDS
    return ALL_KINDS - {KnowledgeKind.INSTANCE}
