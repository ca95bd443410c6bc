"""Discrete-event sandbox that wires governance, scheduling, costing and the repository."""

from __future__ import annotations

import heapq
import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any

from .agents import (
    DEFAULT_HOMOGENEITY_THRESHOLD,
    KnowledgeKind,
    LearningAgent,
    TlCategory,
    admissible_knowledge_kinds,
    classify,
    pair_similarity,
)
from .costmodel import InteractionClass, OverheadParams, eta, is_positive_tl, tau
from .errors import NoFutureWindow, UnclassifiablePair
from .governance import (
    DEFAULT_CONFLICT_WINDOW,
    Conflict,
    DenialReason,
    Initiator,
    InitiationMode,
    Pipeline,
    PipelineRequest,
    ResourceAction,
    SlaPolicy,
    authorize,
    detect_conflicts,
    initiation_allowed,
)
from .quantization import AccuracyModel, QuantScheme, RetuneModel, predicted_accuracy
from .repository import DEFAULT_RELATIONAL_BITS, KnowledgeRepository, extract_knowledge
from .scheduler import HOUR, RushProfile, Schedule, Scheduler, TransferJob, plan_non_rush
from .topology import Topology

DEFAULT_NEGATIVE_TRANSFER_FACTOR = 0.9


class EventKind(IntEnum):
    # value is the processing priority at equal timestamps
    WINDOW_OPEN = 0
    KNOWLEDGE_UPDATE = 1
    DEMAND_REQUEST = 2
    JOB_DISPATCH = 3
    RESOURCE_ACTION = 4


@dataclass(frozen=True)
class Event:
    time: float
    kind: EventKind
    subject: tuple[str, ...]
    payload: Any = field(default=None, compare=False)


@dataclass(frozen=True)
class PipelineSpec:
    source: str
    target: str
    kind: KnowledgeKind
    cls: InteractionClass
    initiator: Initiator = Initiator.ORCHESTRATOR
    schedule: Schedule | None = None
    payload_bits: int | None = None
    scheme: QuantScheme | None = None
    overhead: OverheadParams | None = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class QuantizationConfig:
    scheme: QuantScheme = QuantScheme.FLOAT32
    accuracy: AccuracyModel | None = None
    retune: RetuneModel | None = None
    parameter_count: int | None = None


@dataclass(frozen=True)
class EffectConfig:
    """Knobs of the default effect model mapping received knowledge to target outcomes."""

    homogeneity_threshold: float = DEFAULT_HOMOGENEITY_THRESHOLD
    negative_transfer_factor: float = DEFAULT_NEGATIVE_TRANSFER_FACTOR
    performance_gain: float = 0.0
    training_time_factor: float = 1.0


@dataclass(frozen=True)
class SyntheticTrace:
    update_period: float | None = None
    demand_period: float | None = None
    jitter: float = 0.0


@dataclass(frozen=True)
class Scenario:
    name: str
    topology: Topology
    agents: dict[str, LearningAgent]
    slas: dict[str, SlaPolicy]
    pipelines: tuple[PipelineSpec, ...]
    horizon: float
    seed: int = 0
    overhead: OverheadParams = field(default_factory=OverheadParams)
    quantization: QuantizationConfig = field(default_factory=QuantizationConfig)
    effect: EffectConfig = field(default_factory=EffectConfig)
    events: tuple[Event, ...] = ()
    synthetic: SyntheticTrace | None = None
    initiation_mode: InitiationMode = InitiationMode.DECENTRALIZED
    ott_enabled: bool = False
    security_tolerance: int = 0
    conflict_window: float = DEFAULT_CONFLICT_WINDOW
    rush_profile: RushProfile | None = None
    utilization_bin: float = HOUR
    plan_non_rush: bool = True
    relational_bits: int = DEFAULT_RELATIONAL_BITS


@dataclass
class PairRecord:
    source: str
    target: str
    category: TlCategory
    cls: InteractionClass
    jobs: int = 0
    bits: int = 0
    total_theta: float = 0.0
    similarity: float = 0.0
    p_tl: float = 0.0
    t_tl: float = 0.0
    eta: float = 1.0
    tau: float = 1.0
    positive: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "label_axis": self.category.label_axis.value,
            "domain_axis": self.category.domain_axis.value,
            "solution_axis": self.category.solution_axis.value,
            "class": self.cls.value,
            "jobs": self.jobs,
            "bits": self.bits,
            "total_theta": self.total_theta,
            "similarity": self.similarity,
            "p_tl": self.p_tl,
            "t_tl": self.t_tl,
            "eta": self.eta,
            "tau": self.tau,
            "positive": self.positive,
        }


@dataclass
class SimReport:
    scenario: str
    seed: int
    horizon: float
    pairs: list[PairRecord]
    jobs: list[TransferJob]
    conflicts: list[Conflict]
    denials: list[dict[str, str]]
    utilization: dict[tuple[str, int], int]
    counters: dict[str, int]

    @property
    def totals(self) -> dict[str, Any]:
        return {
            "theta": math.fsum(p.total_theta for p in self.pairs),
            "bits": sum(p.bits for p in self.pairs),
            "jobs": sum(p.jobs for p in self.pairs),
            "positive_pairs": sum(1 for p in self.pairs if p.positive),
        }

    def pair(self, source: str, target: str) -> PairRecord:
        for p in self.pairs:
            if (p.source, p.target) == (source, target):
                return p
        raise KeyError((source, target))

    def utilization_rows(self, bin_seconds: float) -> list[dict[str, Any]]:
        return [
            {"link": link, "bin": b, "bin_start": b * bin_seconds, "bits": bits}
            for (link, b), bits in sorted(self.utilization.items())
        ]

    def to_dict(self, bin_seconds: float = HOUR) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "horizon": self.horizon,
            "pairs": [p.to_dict() for p in self.pairs],
            "jobs": [
                {
                    "source": j.pipeline.source,
                    "target": j.pipeline.target,
                    "class": j.pipeline.cls.value,
                    "kind": j.pipeline.kind.value,
                    "trigger_time": j.trigger_time,
                    "dispatch_time": j.dispatch_time,
                    "payload_bits": j.payload_bits,
                    "theta": j.theta,
                }
                for j in self.jobs
            ],
            "conflicts": [
                {"node": c.node, "resource": c.resource, "agents": list(c.agents), "net_opposition": c.net_opposition}
                for c in self.conflicts
            ],
            "denials": self.denials,
            "utilization": self.utilization_rows(bin_seconds),
            "totals": self.totals,
            "counters": dict(sorted(self.counters.items())),
        }


def effect_model(
    target: LearningAgent,
    received: set[KnowledgeKind],
    quantization: QuantizationConfig,
    scheme: QuantScheme,
    similarity: float,
    effect: EffectConfig = EffectConfig(),
) -> tuple[float, float]:
    """Performance and training time the target reaches with the received knowledge.

    Dissimilar sources degrade performance by ``negative_transfer_factor``.
    A retuned parameter transfer trains in the retune time and reaches the
    accuracy predicted for its quantization scheme.
    """
    p_base, t_base = target.baseline_performance, target.baseline_training_time
    if not received:
        return p_base, t_base

    retune = quantization.retune
    retuned = KnowledgeKind.PARAMETER in received and retune is not None
    t_tl = retune.retrain_time if retuned else t_base * effect.training_time_factor

    if similarity < effect.homogeneity_threshold:
        return p_base * effect.negative_transfer_factor, t_tl
    if KnowledgeKind.PARAMETER in received and quantization.accuracy is not None:
        restored = retuned and retune.restores_accuracy
        return predicted_accuracy(quantization.accuracy, scheme, restored) / 100.0, t_tl
    return min(1.0, p_base * (1.0 + effect.performance_gain)), t_tl


def _bottleneck_link(pipeline: Pipeline, topology: Topology, hosts: dict[str, str]) -> str:
    if not pipeline.path.links:
        return f"local:{hosts[pipeline.source]}"
    links = [topology.links[i] for i in pipeline.path.links]
    return min(links, key=lambda l: l.bandwidth).id


def _payload(spec: PipelineSpec, scenario: Scenario) -> tuple[int, QuantScheme]:
    scheme = spec.scheme or scenario.quantization.scheme
    if spec.payload_bits is not None:
        return spec.payload_bits, scheme
    source = scenario.agents[spec.source]
    artifact = extract_knowledge(
        source,
        spec.kind,
        scenario.slas[spec.source].share_fraction(spec.kind),
        level=scenario.topology.nodes[source.node].tier,
        scheme=scheme,
        relational_bits=scenario.relational_bits,
    )
    return artifact.payload_bits, scheme


class Simulation:
    """One run over a single event queue."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.hosts = {a.id: a.node for a in scenario.agents.values()}
        self.repository = KnowledgeRepository()
        self.pipelines: dict[tuple[str, str], Pipeline] = {}
        self.specs: dict[tuple[str, str], PipelineSpec] = {}
        self.schemes: dict[tuple[str, str], QuantScheme] = {}
        self.categories: dict[tuple[str, str], TlCategory] = {}
        self.denials: list[dict[str, str]] = []
        self.counters: dict[str, int] = defaultdict(int)
        self._queue: list[tuple[float, int, tuple[str, ...], int, Event]] = []
        self._seq = itertools.count()
        self._authorize_all()

        sc = scenario
        rush: dict[tuple[str, str], RushProfile | None] = {}
        for key, pipe in self.pipelines.items():
            if sc.rush_profile is not None:
                rush[key] = sc.rush_profile
            else:
                profiles = [
                    RushProfile(sc.topology.links[i].load_profile)
                    for i in pipe.path.links
                    if sc.topology.links[i].load_profile is not None
                ]
                rush[key] = RushProfile.combine_max(profiles)
        self.rush = rush
        self.scheduler = Scheduler(
            sc.overhead,
            {k: s.schedule for k, s in self.specs.items() if s.schedule is not None},
            rush,
            {k: s.overhead for k, s in self.specs.items() if s.overhead is not None},
        )

    def _deny(self, spec: PipelineSpec, reason: DenialReason) -> None:
        self.denials.append(
            {"source": spec.source, "target": spec.target, "kind": spec.kind.value, "reason": reason.value}
        )

    def _authorize_all(self) -> None:
        sc = self.scenario
        threshold = sc.effect.homogeneity_threshold
        for spec in sorted(sc.pipelines, key=lambda s: s.key):
            if not initiation_allowed(spec.initiator, sc.initiation_mode, sc.ott_enabled):
                self._deny(spec, DenialReason.INITIATOR_NOT_ALLOWED)
                continue
            source, target = sc.agents[spec.source], sc.agents[spec.target]
            try:
                category = classify(source, target, spec.kind, threshold)
            except UnclassifiablePair:
                self._deny(spec, DenialReason.UNCLASSIFIABLE_PAIR)
                continue
            if spec.kind not in admissible_knowledge_kinds(category):
                self._deny(spec, DenialReason.KIND_NOT_ADMISSIBLE)
                continue
            bits, scheme = _payload(spec, sc)
            request = PipelineRequest(spec.source, spec.target, spec.kind, spec.cls, spec.initiator, bits)
            decision = authorize(
                request, sc.slas[spec.source], sc.slas[spec.target], sc.topology, self.hosts, sc.security_tolerance
            )
            if not decision.granted:
                self._deny(spec, decision.denial_reason)
                continue
            self.pipelines[spec.key] = decision.pipeline
            self.specs[spec.key] = spec
            self.schemes[spec.key] = scheme
            self.categories[spec.key] = category

    def push(self, event: Event) -> None:
        if not 0.0 <= event.time <= self.scenario.horizon:
            self.counters["events_outside_horizon"] += 1
            return
        heapq.heappush(self._queue, (event.time, int(event.kind), event.subject, next(self._seq), event))

    def _synthetic_events(self) -> list[Event]:
        sc = self.scenario
        syn = sc.synthetic
        if syn is None:
            return []
        rng = random.Random(sc.seed)
        events = []

        def arrivals(period: float) -> list[float]:
            times = []
            t = rng.uniform(0.0, period)
            while t <= sc.horizon:
                times.append(t)
                t += period * (1.0 + rng.uniform(-syn.jitter, syn.jitter))
            return times

        if syn.update_period:
            for source in sorted({k[0] for k in self.pipelines}):
                events += [Event(t, EventKind.KNOWLEDGE_UPDATE, (source,)) for t in arrivals(syn.update_period)]
        if syn.demand_period:
            for key in sorted(k for k, p in self.pipelines.items() if p.cls is InteractionClass.ON_DEMAND):
                events += [
                    Event(t, EventKind.DEMAND_REQUEST, (key[1], key[0])) for t in arrivals(syn.demand_period)
                ]
        return events

    def run(self) -> SimReport:
        sc = self.scenario
        for event in sc.events:
            self.push(event)
        for event in self._synthetic_events():
            self.push(event)
        for key, spec in sorted(self.specs.items()):
            if spec.schedule is not None and spec.cls is InteractionClass.NON_REAL_TIME:
                for start, _ in spec.schedule.windows:
                    self.push(Event(start, EventKind.WINDOW_OPEN, key))

        dispatched: list[TransferJob] = []
        actions: list[ResourceAction] = []
        while self._queue:
            *_, event = heapq.heappop(self._queue)
            self.counters[f"events_{event.kind.name.lower()}"] += 1
            if event.kind is EventKind.KNOWLEDGE_UPDATE:
                self._on_update(event)
            elif event.kind is EventKind.DEMAND_REQUEST:
                self._on_demand(event)
            elif event.kind is EventKind.JOB_DISPATCH:
                dispatched.append(event.payload)
            elif event.kind is EventKind.RESOURCE_ACTION:
                actions.append(event.payload)

        self.counters["artifacts_stored"] = len(self.repository)
        self.counters["pending_requests"] = sum(len(q) for q in self.scheduler.pending.values())
        return self._report(dispatched, detect_conflicts(actions, sc.conflict_window))

    def _on_update(self, event: Event) -> None:
        sc = self.scenario
        (source,) = event.subject
        outgoing = [p for k, p in sorted(self.pipelines.items()) if k[0] == source]
        agent = sc.agents[source]
        sla = sc.slas[source]
        for kind in sorted({p.kind for p in outgoing}, key=lambda k: k.value):
            scheme = next(self.schemes[p.key] for p in outgoing if p.kind is kind)
            self.repository.store(
                extract_knowledge(
                    agent,
                    kind,
                    sla.share_fraction(kind),
                    level=sc.topology.nodes[agent.node].tier,
                    timestamp=event.time,
                    security_level=sla.security_level,
                    scheme=scheme,
                    relational_bits=sc.relational_bits,
                )
            )
        # availability is tracked per source even when it has no pipeline yet
        self.scheduler.last_update[source] = event.time
        for pipe in outgoing:
            try:
                jobs = self.scheduler.on_knowledge_update(source, event.time, [pipe])
            except NoFutureWindow:
                self.counters["missed_updates"] += 1
                continue
            if pipe.cls is InteractionClass.NON_REAL_TIME and sc.plan_non_rush and self.rush[pipe.key] is not None:
                jobs = plan_non_rush(jobs, self.rush[pipe.key], self.scheduler.params_for(pipe), sc.horizon)
            self._enqueue(jobs)

    def _on_demand(self, event: Event) -> None:
        target, source = event.subject
        pipe = self.pipelines.get((source, target))
        if pipe is None or pipe.cls is not InteractionClass.ON_DEMAND:
            self.counters["unserved_requests"] += 1
            return
        result = self.scheduler.on_demand_request(target, event.time, pipe)
        if isinstance(result, TransferJob):
            self._enqueue([result])

    def _enqueue(self, jobs: list[TransferJob]) -> None:
        for job in jobs:
            if job.dispatch_time > self.scenario.horizon:
                self.counters["jobs_beyond_horizon"] += 1
                continue
            self.push(Event(job.dispatch_time, EventKind.JOB_DISPATCH, job.pipeline.key, job))

    def _report(self, dispatched: list[TransferJob], conflicts: list[Conflict]) -> SimReport:
        sc = self.scenario
        records = {
            key: PairRecord(key[0], key[1], self.categories[key], pipe.cls)
            for key, pipe in sorted(self.pipelines.items())
        }
        received: dict[tuple[str, str], set[KnowledgeKind]] = defaultdict(set)
        thetas: dict[tuple[str, str], list[float]] = defaultdict(list)
        utilization: dict[tuple[str, int], int] = defaultdict(int)
        for job in dispatched:
            key = job.pipeline.key
            rec = records[key]
            rec.jobs += 1
            rec.bits += job.payload_bits
            thetas[key].append(job.theta)
            received[key].add(job.pipeline.kind)
            link = _bottleneck_link(job.pipeline, sc.topology, self.hosts)
            utilization[(link, int(job.dispatch_time // sc.utilization_bin))] += job.payload_bits

        for key, rec in records.items():
            rec.total_theta = math.fsum(thetas[key])
            source, target = sc.agents[key[0]], sc.agents[key[1]]
            rec.similarity = pair_similarity(source, target)
            rec.p_tl, rec.t_tl = effect_model(
                target, received[key], sc.quantization, self.schemes[key], rec.similarity, sc.effect
            )
            rec.eta = eta(rec.p_tl, target.baseline_performance)
            rec.tau = tau(target.baseline_training_time, rec.t_tl)
            rec.positive = is_positive_tl(rec.eta, rec.tau)

        jobs = sorted(dispatched, key=lambda j: j.sort_key)
        return SimReport(
            scenario=sc.name,
            seed=sc.seed,
            horizon=sc.horizon,
            pairs=list(records.values()),
            jobs=jobs,
            conflicts=conflicts,
            denials=self.denials,
            utilization=dict(utilization),
            counters=dict(self.counters),
        )


def run(scenario: Scenario) -> SimReport:
    return Simulation(scenario).run()
