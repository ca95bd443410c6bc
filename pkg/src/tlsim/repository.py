"""In-memory knowledge repository with level/tag/time queries and periodic patterns."""

from __future__ import annotations

import json
import math
from collections.abc import Iterable
from dataclasses import asdict, dataclass
from pathlib import Path

from .agents import KnowledgeKind, LearningAgent
from .errors import DuplicateIdWithDifferentContent, EmptyDomain
from .quantization import QuantScheme
from .topology import Tier

DAILY = 86400.0
WEEKLY = 604800.0
FEATURE_BITS_PER_BIN = 64
DEFAULT_RELATIONAL_BITS = 8192


@dataclass(frozen=True)
class KnowledgeArtifact:
    id: str
    kind: KnowledgeKind
    level: Tier
    content_tag: str
    payload_bits: int
    security_level: int
    source_agent: str
    timestamp: float

    def __post_init__(self):
        object.__setattr__(self, "kind", KnowledgeKind(self.kind))
        object.__setattr__(self, "level", Tier(self.level))
        if self.payload_bits <= 0:
            raise ValueError(f"artifact {self.id}: payload_bits must be > 0")
        if self.security_level < 0:
            raise ValueError(f"artifact {self.id}: security_level must be >= 0")

    def to_record(self) -> dict:
        record = asdict(self)
        record["kind"] = self.kind.value
        record["level"] = self.level.value
        return record


class KnowledgeRepository:
    def __init__(self):
        self._by_id: dict[str, KnowledgeArtifact] = {}

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self):
        return iter(self._by_id.values())

    def store(self, artifact: KnowledgeArtifact) -> str:
        existing = self._by_id.get(artifact.id)
        if existing is not None and existing != artifact:
            raise DuplicateIdWithDifferentContent(artifact.id)
        self._by_id[artifact.id] = artifact
        return artifact.id

    def get(self, artifact_id: str) -> KnowledgeArtifact:
        return self._by_id[artifact_id]

    def retrieve(
        self,
        level: Tier,
        content_tag: str,
        time_range: tuple[float, float],
        requester_security_level: int,
    ) -> list[KnowledgeArtifact]:
        """Matching artifacts the requester is cleared for, ordered by timestamp."""
        start, end = time_range
        if start > end:
            raise ValueError("time_range start must not exceed end")
        level = Tier(level)
        hits = [
            a
            for a in self._by_id.values()
            if a.level is level
            and a.content_tag == content_tag
            and start <= a.timestamp <= end
            and a.security_level <= requester_security_level
        ]
        # dict order is insertion order, so the sort is stable under it
        return sorted(hits, key=lambda a: a.timestamp)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for artifact in self._by_id.values():
                fh.write(json.dumps(artifact.to_record(), sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "KnowledgeRepository":
        repo = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    repo.store(KnowledgeArtifact(**json.loads(line)))
        return repo


def extract_knowledge(
    agent: LearningAgent,
    kind: KnowledgeKind,
    share_fraction: float = 1.0,
    *,
    level: Tier,
    timestamp: float = 0.0,
    security_level: int = 0,
    scheme: QuantScheme = QuantScheme.FLOAT32,
    relational_bits: int = DEFAULT_RELATIONAL_BITS,
    content_tag: str | None = None,
    artifact_id: str | None = None,
) -> KnowledgeArtifact:
    """Package a transferable unit of ``agent``'s domain or task knowledge.

    Payload sizes: instances ``ceil(fraction * samples) * bits_per_sample``;
    parameters ``parameter_count * bits_per_weight(scheme)``; features 64
    bits per signature bin; relational rules a fixed configured size.
    """
    kind = KnowledgeKind(kind)
    if not 0.0 < share_fraction <= 1.0:
        raise ValueError("share_fraction must lie in (0, 1]")
    domain = agent.domain
    if kind is KnowledgeKind.INSTANCE:
        if domain.sample_count == 0:
            raise EmptyDomain(f"agent {agent.id} has no samples to share")
        bits = math.ceil(share_fraction * domain.sample_count) * domain.bits_per_sample
    elif kind is KnowledgeKind.PARAMETER:
        bits = agent.task.parameter_count * QuantScheme(scheme).bits_per_weight
    elif kind is KnowledgeKind.FEATURE:
        bits = len(domain.distribution_signature) * FEATURE_BITS_PER_BIN
    else:
        bits = relational_bits
    tag = content_tag or agent.purpose
    return KnowledgeArtifact(
        id=artifact_id or f"{agent.id}/{kind.value}/{timestamp!r}",
        kind=kind,
        level=level,
        content_tag=tag,
        payload_bits=bits,
        security_level=security_level,
        source_agent=agent.id,
        timestamp=timestamp,
    )


@dataclass(frozen=True)
class PeriodicProfile:
    period: float
    bins: tuple[float, ...]

    def __post_init__(self):
        if not self.bins:
            raise ValueError("profile needs at least one bin")
        if any(not math.isfinite(b) for b in self.bins):
            raise ValueError("profile bins must be finite")


def aggregate_pattern(
    artifacts: Iterable[KnowledgeArtifact],
    period: float = DAILY,
    bins: int | None = None,
) -> PeriodicProfile:
    """Mean payload per phase bin of ``period`` (24 bins per day, 7 per week by default)."""
    if bins is None:
        if period == DAILY:
            bins = 24
        elif period == WEEKLY:
            bins = 7
        else:
            raise ValueError("seasonal periods need an explicit bin count")
    if bins <= 0 or not period > 0:
        raise ValueError("period and bin count must be positive")
    width = period / bins
    groups: list[list[int]] = [[] for _ in range(bins)]
    for a in artifacts:
        b = min(int((a.timestamp % period) // width), bins - 1)
        groups[b].append(a.payload_bits)
    # integer sums are order-free, which keeps the profile permutation-invariant
    return PeriodicProfile(period, tuple(sum(g) / len(g) if g else 0.0 for g in groups))
