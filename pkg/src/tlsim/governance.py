"""SLA policies, pipeline authorization, initiation modes and resource-conflict detection."""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .agents import KnowledgeKind
from .costmodel import InteractionClass
from .errors import NoPath, UnknownAgent
from .topology import Path, Topology, path_between

DEFAULT_CONFLICT_WINDOW = 1.0


class Initiator(str, Enum):
    NETWORK_ELEMENT = "NetworkElement"
    ORCHESTRATOR = "Orchestrator"
    OTT_APPLICATION = "OttApplication"


class DenialReason(str, Enum):
    # authorize() checks, in evaluation order
    NOT_TRUSTED_TARGET = "NotTrustedTarget"
    NOT_TRUSTED_SOURCE = "NotTrustedSource"
    KIND_NOT_SHAREABLE = "KindNotShareable"
    NO_PATH = "NoPath"
    DELAY_BOUND_VIOLATED = "DelayBoundViolated"
    BANDWIDTH_INSUFFICIENT = "BandwidthInsufficient"
    SECURITY_MISMATCH = "SecurityMismatch"
    # pre-checks applied by the simulation engine
    INITIATOR_NOT_ALLOWED = "InitiatorNotAllowed"
    UNCLASSIFIABLE_PAIR = "UnclassifiablePair"
    KIND_NOT_ADMISSIBLE = "KindNotAdmissible"


@dataclass(frozen=True)
class SlaPolicy:
    agent: str
    trusted_sources: frozenset[str] = frozenset()
    trusted_targets: frozenset[str] = frozenset()
    # kind -> share fraction in (0, 1]
    shareable_kinds: Mapping[KnowledgeKind, float] = field(default_factory=dict)
    security_level: int = 0
    default_class: InteractionClass = InteractionClass.REAL_TIME
    granularity: Mapping[str, InteractionClass] = field(default_factory=dict)
    max_e2e_delay: float = 1.0
    required_bandwidth: float = 1e6

    def __post_init__(self):
        object.__setattr__(self, "trusted_sources", frozenset(self.trusted_sources))
        object.__setattr__(self, "trusted_targets", frozenset(self.trusted_targets))
        kinds = {KnowledgeKind(k): float(v) for k, v in dict(self.shareable_kinds).items()}
        object.__setattr__(self, "shareable_kinds", kinds)
        for k, frac in kinds.items():
            if not 0.0 < frac <= 1.0:
                raise ValueError(f"SLA {self.agent}: share fraction for {k.value} must lie in (0, 1]")
        if self.security_level < 0:
            raise ValueError(f"SLA {self.agent}: security_level must be >= 0")
        if not self.max_e2e_delay > 0:
            raise ValueError(f"SLA {self.agent}: max_e2e_delay must be > 0")
        if not self.required_bandwidth > 0:
            raise ValueError(f"SLA {self.agent}: required_bandwidth must be > 0")

    def class_for(self, counterpart: str) -> InteractionClass:
        return InteractionClass(self.granularity.get(counterpart, self.default_class))

    def share_fraction(self, kind: KnowledgeKind) -> float:
        return self.shareable_kinds.get(KnowledgeKind(kind), 1.0)


@dataclass(frozen=True)
class PipelineRequest:
    source: str
    target: str
    kind: KnowledgeKind
    cls: InteractionClass
    initiator: Initiator = Initiator.ORCHESTRATOR
    payload_bits: int = 1

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("a pipeline needs distinct source and target")
        if self.payload_bits <= 0:
            raise ValueError("payload_bits must be > 0")


@dataclass(frozen=True)
class Pipeline:
    """An authorized transfer pipeline.

    ``bandwidth``/``delay`` are the realised path properties; the
    ``required_*`` fields are the SLA-derived figures used for overhead.
    """

    source: str
    target: str
    kind: KnowledgeKind
    cls: InteractionClass
    path: Path
    bandwidth: float
    delay: float
    required_bandwidth: float
    delay_bound: float
    security_level: int
    payload_bits: int
    initiator: Initiator = Initiator.ORCHESTRATOR

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class AuthorizationDecision:
    granted: bool
    pipeline: Pipeline | None = None
    denial_reason: DenialReason | None = None

    def __post_init__(self):
        if self.granted != (self.pipeline is not None) or self.granted == (self.denial_reason is not None):
            raise ValueError("granted <=> pipeline present <=> no denial reason")


def _deny(reason: DenialReason) -> AuthorizationDecision:
    return AuthorizationDecision(False, None, reason)


def authorize(
    request: PipelineRequest,
    source_sla: SlaPolicy,
    target_sla: SlaPolicy,
    topology: Topology,
    hosts: Mapping[str, str],
    security_tolerance: int = 0,
) -> AuthorizationDecision:
    """Grant or deny a pipeline; a denial names the first failing check."""
    if source_sla.agent != request.source:
        raise UnknownAgent(f"source SLA belongs to {source_sla.agent!r}, not {request.source!r}")
    if target_sla.agent != request.target:
        raise UnknownAgent(f"target SLA belongs to {target_sla.agent!r}, not {request.target!r}")
    for agent in (request.source, request.target):
        if agent not in hosts:
            raise UnknownAgent(agent)

    if request.target not in source_sla.trusted_targets:
        return _deny(DenialReason.NOT_TRUSTED_TARGET)
    if request.source not in target_sla.trusted_sources:
        return _deny(DenialReason.NOT_TRUSTED_SOURCE)
    if KnowledgeKind(request.kind) not in source_sla.shareable_kinds:
        return _deny(DenialReason.KIND_NOT_SHAREABLE)
    try:
        path = path_between(topology, hosts[request.source], hosts[request.target])
    except NoPath:
        return _deny(DenialReason.NO_PATH)
    delay_bound = min(source_sla.max_e2e_delay, target_sla.max_e2e_delay)
    if path.e2e_delay > delay_bound:
        return _deny(DenialReason.DELAY_BOUND_VIOLATED)
    required_bw = max(source_sla.required_bandwidth, target_sla.required_bandwidth)
    if path.e2e_bandwidth < required_bw:
        return _deny(DenialReason.BANDWIDTH_INSUFFICIENT)
    if abs(source_sla.security_level - target_sla.security_level) > security_tolerance:
        return _deny(DenialReason.SECURITY_MISMATCH)

    pipeline = Pipeline(
        source=request.source,
        target=request.target,
        kind=KnowledgeKind(request.kind),
        cls=InteractionClass(request.cls),
        path=path,
        bandwidth=path.e2e_bandwidth,
        delay=path.e2e_delay,
        required_bandwidth=required_bw,
        delay_bound=delay_bound,
        security_level=max(source_sla.security_level, target_sla.security_level),
        payload_bits=request.payload_bits,
        initiator=Initiator(request.initiator),
    )
    return AuthorizationDecision(True, pipeline, None)


class InitiationMode(str, Enum):
    CENTRALIZED = "centralized"
    DECENTRALIZED = "decentralized"


def initiation_allowed(initiator: Initiator, mode: InitiationMode, ott_enabled: bool = False) -> bool:
    initiator = Initiator(initiator)
    if initiator is Initiator.OTT_APPLICATION:
        return ott_enabled
    if initiator is Initiator.ORCHESTRATOR:
        return True
    return InitiationMode(mode) is InitiationMode.DECENTRALIZED


@dataclass(frozen=True)
class ResourceAction:
    agent: str
    node: str
    resource: str
    delta: float
    time: float


@dataclass(frozen=True)
class Conflict:
    node: str
    resource: str
    agents: tuple[str, ...]
    net_opposition: float


def _opposed(window: list[ResourceAction]) -> bool:
    raising = {a.agent for a in window if a.delta > 0}
    lowering = {a.agent for a in window if a.delta < 0}
    return any(x != y for x in raising for y in lowering)


def detect_conflicts(actions: Iterable[ResourceAction], window: float = DEFAULT_CONFLICT_WINDOW) -> list[Conflict]:
    """One conflict per (node, resource) where distinct agents push in opposite directions.

    Two actions share a window when their times differ by less than
    ``window``. The reported agents are every agent involved in an opposed
    window; ``net_opposition`` is the largest ``min(sum(+), |sum(-)|)`` seen.
    """
    if not window > 0:
        raise ValueError("window must be > 0")
    groups: dict[tuple[str, str], list[ResourceAction]] = defaultdict(list)
    for action in actions:
        groups[(action.node, action.resource)].append(action)

    conflicts = []
    for (node, resource), group in sorted(groups.items()):
        group.sort(key=lambda a: (a.time, a.agent, a.delta))
        agents: set[str] = set()
        opposition = 0.0
        hi = 0
        # every maximal window starts at some action time
        for lo, first in enumerate(group):
            hi = max(hi, lo)
            while hi < len(group) and group[hi].time - first.time < window:
                hi += 1
            members = group[lo:hi]
            if not _opposed(members):
                continue
            agents.update(a.agent for a in members if a.delta != 0)
            pos = sum(a.delta for a in members if a.delta > 0)
            neg = -sum(a.delta for a in members if a.delta < 0)
            opposition = max(opposition, min(pos, neg))
        if agents:
            conflicts.append(Conflict(node, resource, tuple(sorted(agents)), opposition))
    return conflicts
