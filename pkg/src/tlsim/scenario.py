"""Scenario documents: JSON loading and validation with field paths."""

from __future__ import annotations

import json
import math
from collections.abc import Callable
from importlib import resources
from pathlib import Path
from typing import Any

from .agents import DomainDescriptor, KnowledgeKind, LearningAgent, TaskDescriptor
from .costmodel import FunctionSpec, InteractionClass, OverheadParams
from .errors import ParseError, ValidationError
from .governance import Initiator, InitiationMode, ResourceAction, SlaPolicy
from .quantization import AccuracyModel, QuantScheme, RetuneModel
from .scheduler import RushProfile, Schedule
from .simengine import (
    EffectConfig,
    Event,
    EventKind,
    PipelineSpec,
    QuantizationConfig,
    Scenario,
    SyntheticTrace,
)
from .topology import InteractionModel, Link, Node, Tier, Topology, generate_pairs

BUNDLED = ("oran-ra-ee-ac", "hierarchy-three-models", "quantized-retune")

_MISSING = object()


class _Checker:
    """Collects ``(path, message)`` issues while building typed objects."""

    def __init__(self):
        self.issues: list[tuple[str, str]] = []

    def add(self, path: str, message: str) -> None:
        self.issues.append((path, message))

    def build(self, path: str, factory: Callable[..., Any], *args, **kwargs) -> Any:
        try:
            return factory(*args, **kwargs)
        except (ValueError, TypeError, KeyError) as exc:
            msg = exc.args[0] if exc.args else str(exc)
            self.add(path, str(msg))
            return None

    def get(self, obj: dict, key: str, path: str, kind: type | tuple = object, default: Any = _MISSING) -> Any:
        if not isinstance(obj, dict):
            self.add(path, "expected an object")
            return None
        if key not in obj:
            if default is _MISSING:
                self.add(f"{path}.{key}" if path else key, "required field is missing")
                return None
            return default
        value = obj[key]
        if kind is float:
            kind = (int, float)
        if not isinstance(value, kind) or (isinstance(value, bool) and kind in (int, (int, float))):
            self.add(f"{path}.{key}" if path else key, f"wrong type {type(value).__name__}")
            return None
        return value

    def enum(self, enum_cls, value: Any, path: str):
        try:
            return enum_cls(value)
        except ValueError:
            self.add(path, f"{value!r} is not one of {[e.value for e in enum_cls]}")
            return None


def _node(c: _Checker, rec: dict, path: str) -> Node | None:
    nid = c.get(rec, "id", path, str)
    tier = c.enum(Tier, c.get(rec, "tier", path, str), f"{path}.tier")
    zone = c.get(rec, "zone", path, str, "")
    if nid is None or tier is None:
        return None
    return Node(nid, tier, zone)


def _link(c: _Checker, rec: dict, path: str, index: int) -> Link | None:
    ends = c.get(rec, "endpoints", path, list)
    if ends is not None and (len(ends) != 2 or not all(isinstance(e, str) for e in ends)):
        c.add(f"{path}.endpoints", "expected two node ids")
        ends = None
    bw = c.get(rec, "bandwidth", path, float)
    delay = c.get(rec, "delay", path, float)
    profile = c.get(rec, "load_profile", path, list, None)
    lid = c.get(rec, "id", path, str, f"L{index}")
    if None in (ends, bw, delay):
        return None
    return c.build(path, Link, lid, ends[0], ends[1], float(bw), float(delay), None if profile is None else tuple(profile))


def _topology(c: _Checker, doc: dict) -> Topology | None:
    topo = c.get(doc, "topology", "", dict)
    if topo is None:
        return None
    nodes, links = [], []
    seen: set[str] = set()
    for i, rec in enumerate(c.get(topo, "nodes", "topology", list) or []):
        node = _node(c, rec, f"topology.nodes[{i}]")
        if node is not None:
            if node.id in seen:
                c.add(f"topology.nodes[{i}].id", f"duplicate node id {node.id!r}")
                continue
            seen.add(node.id)
            nodes.append(node)
    link_ids: set[str] = set()
    for i, rec in enumerate(c.get(topo, "links", "topology", list, []) or []):
        link = _link(c, rec, f"topology.links[{i}]", i)
        if link is None:
            continue
        if link.id in link_ids:
            c.add(f"topology.links[{i}].id", f"duplicate link id {link.id!r}")
            continue
        bad = [e for e in (link.a, link.b) if e not in seen]
        if bad:
            c.add(f"topology.links[{i}].endpoints", f"unknown node {bad[0]!r}")
            continue
        link_ids.add(link.id)
        links.append(link)
    return Topology.build(nodes, links)


def _agent(c: _Checker, rec: dict, path: str, nodes: set[str]) -> LearningAgent | None:
    aid = c.get(rec, "id", path, str)
    node = c.get(rec, "node", path, str)
    if node is not None and node not in nodes:
        c.add(f"{path}.node", f"unknown node {node!r}")
        node = None
    dom = c.get(rec, "domain", path, dict)
    domain = None
    if dom is not None:
        dpath = f"{path}.domain"
        fields = (
            c.get(dom, "feature_space", dpath, str),
            c.get(dom, "signature", dpath, list),
            c.get(dom, "sample_count", dpath, int),
            c.get(dom, "has_labels", dpath, bool),
            c.get(dom, "bits_per_sample", dpath, int, 32),
        )
        if None not in fields:
            domain = c.build(dpath, DomainDescriptor, *fields)
    tsk = c.get(rec, "task", path, dict, {})
    task = None
    if tsk is not None:
        tpath = f"{path}.task"
        fields = (
            c.get(tsk, "label_space", tpath, str, ""),
            c.get(tsk, "function", tpath, str, ""),
            c.get(tsk, "parameter_count", tpath, int, 0),
            c.get(tsk, "hyperparams", tpath, dict, {}),
        )
        if None not in fields:
            task = c.build(tpath, TaskDescriptor, *fields)
    perf = c.get(rec, "baseline_performance", path, float)
    ttime = c.get(rec, "baseline_training_time", path, float)
    purpose = c.get(rec, "purpose", path, str, "")
    if None in (aid, node, domain, task, perf, ttime, purpose):
        return None
    if perf == 0:
        c.add(f"{path}.baseline_performance", "must be > 0 (performance ratios divide by it)")
        return None
    return c.build(path, LearningAgent, aid, node, purpose, domain, task, float(perf), float(ttime))


def _sla(c: _Checker, rec: dict, path: str, agents: set[str]) -> SlaPolicy | None:
    agent = c.get(rec, "agent", path, str)
    if agent is not None and agent not in agents:
        c.add(f"{path}.agent", f"unknown agent {agent!r}")
        agent = None
    trusted = {}
    for field_name in ("trusted_sources", "trusted_targets"):
        ids = c.get(rec, field_name, path, list, [])
        for j, other in enumerate(ids or []):
            if other not in agents:
                c.add(f"{path}.{field_name}[{j}]", f"unknown agent {other!r}")
        trusted[field_name] = frozenset(ids or [])
    kinds_raw = c.get(rec, "shareable_kinds", path, (dict, list), {})
    kinds = {}
    if isinstance(kinds_raw, list):
        kinds_raw = {k: 1.0 for k in kinds_raw}
    for name, frac in (kinds_raw or {}).items():
        kind = c.enum(KnowledgeKind, name, f"{path}.shareable_kinds.{name}")
        if kind is None:
            continue
        if isinstance(frac, bool) or not isinstance(frac, (int, float)) or not 0 < frac <= 1:
            c.add(f"{path}.shareable_kinds.{name}", "share fraction must lie in (0, 1]")
            continue
        kinds[kind] = float(frac)
    default_class = c.enum(InteractionClass, c.get(rec, "default_class", path, str, "RealTime"), f"{path}.default_class")
    granularity = {}
    for other, cls in (c.get(rec, "granularity", path, dict, {}) or {}).items():
        value = c.enum(InteractionClass, cls, f"{path}.granularity.{other}")
        if value is not None:
            granularity[other] = value
    security = c.get(rec, "security_level", path, int, 0)
    max_delay = c.get(rec, "max_e2e_delay", path, float)
    req_bw = c.get(rec, "required_bandwidth", path, float)
    for name, value in (("security_level", security), ("max_e2e_delay", max_delay), ("required_bandwidth", req_bw)):
        if value is None:
            continue
        if name == "security_level" and value < 0:
            c.add(f"{path}.{name}", "must be >= 0")
        elif name != "security_level" and not value > 0:
            c.add(f"{path}.{name}", "must be > 0")
    if None in (agent, default_class, security, max_delay, req_bw):
        return None
    return c.build(
        path,
        SlaPolicy,
        agent,
        trusted["trusted_sources"],
        trusted["trusted_targets"],
        kinds,
        security,
        default_class,
        granularity,
        float(max_delay),
        float(req_bw),
    )


def _function(c: _Checker, role: str, raw: Any, path: str) -> FunctionSpec | None:
    if raw is None:
        return FunctionSpec(role)
    if not isinstance(raw, dict):
        c.add(path, "expected an object")
        return None
    constants = {k: v for k, v in raw.items() if k != "form"}
    return c.build(path, FunctionSpec, role, raw.get("form", ""), constants)


def _overhead(c: _Checker, raw: Any, path: str) -> OverheadParams | None:
    if raw is None:
        return OverheadParams()
    if not isinstance(raw, dict):
        c.add(path, "expected an object")
        return None
    alpha = c.get(raw, "alpha", path, list, [1.0, 1.0, 1.0, 1.0])
    m_costs = c.get(raw, "m_costs", path, list, [3.0, 2.0, 1.0])
    ok = True
    if alpha is not None and (len(alpha) != 4 or any(not isinstance(a, (int, float)) or a < 0 for a in alpha)):
        c.add(f"{path}.alpha", "expected four weights >= 0")
        ok = False
    if m_costs is not None:
        if len(m_costs) != 3 or any(not isinstance(m, (int, float)) for m in m_costs):
            c.add(f"{path}.m_costs", "expected three costs (M1, M2, M3)")
            ok = False
        elif not (m_costs[0] >= m_costs[1] >= m_costs[2] > 0):
            c.add(f"{path}.m_costs", f"must satisfy M1 >= M2 >= M3 > 0, got {m_costs}")
            ok = False
    fns = {role: _function(c, role, raw.get(role), f"{path}.{role}") for role in ("f1", "f2", "h")}
    if not ok or None in (alpha, m_costs) or None in fns.values():
        return None
    return c.build(path, OverheadParams, tuple(alpha), tuple(m_costs), fns["f1"], fns["f2"], fns["h"])


def _schedule(c: _Checker, raw: Any, path: str) -> Schedule | None:
    if not isinstance(raw, list) or not all(
        isinstance(w, list) and len(w) == 2 and all(isinstance(x, (int, float)) for x in w) for w in raw
    ):
        c.add(path, "expected a list of [start, end] windows")
        return None
    return c.build(path, Schedule, tuple(tuple(w) for w in raw))


def _quantization(c: _Checker, raw: Any) -> QuantizationConfig | None:
    if raw is None:
        return QuantizationConfig()
    path = "quantization"
    if not isinstance(raw, dict):
        c.add(path, "expected an object")
        return None
    scheme = c.enum(QuantScheme, c.get(raw, "scheme", path, str, "Float32"), f"{path}.scheme")
    accuracy = None
    if "base_accuracy" in raw:
        base = c.get(raw, "base_accuracy", path, float)
        fb = c.get(raw, "fbgemm_delta", path, float)
        de = c.get(raw, "default_delta", path, float, fb)
        if None not in (base, fb, de):
            accuracy = c.build(f"{path}.accuracy", AccuracyModel, float(base), float(fb), float(de))
    retune = None
    if "retrain_time" in raw or "full_train_time" in raw:
        rt = c.get(raw, "retrain_time", path, float)
        ft = c.get(raw, "full_train_time", path, float)
        restores = c.get(raw, "restores_accuracy", path, bool, True)
        if None not in (rt, ft, restores):
            retune = c.build(f"{path}.retune", RetuneModel, float(rt), float(ft), restores)
    count = c.get(raw, "parameter_count", path, int, None)
    if count is not None and count <= 0:
        c.add(f"{path}.parameter_count", "must be > 0")
    return QuantizationConfig(scheme or QuantScheme.FLOAT32, accuracy, retune, count)


def _pipeline_fields(c: _Checker, rec: dict, path: str, defaults: dict) -> dict | None:
    merged = {**defaults, **rec}
    out = {
        "kind": c.enum(KnowledgeKind, merged.get("kind", "Parameter"), f"{path}.kind"),
        "initiator": c.enum(Initiator, merged.get("initiator", "Orchestrator"), f"{path}.initiator"),
        "cls": None,
        "schedule": None,
        "payload_bits": None,
        "scheme": None,
        "overhead": None,
    }
    if "class" in merged:
        out["cls"] = c.enum(InteractionClass, merged["class"], f"{path}.class")
        if out["cls"] is None:
            return None
    if "schedule" in merged:
        out["schedule"] = _schedule(c, merged["schedule"], f"{path}.schedule")
        if out["schedule"] is None:
            return None
    if "payload_bits" in merged:
        bits = merged["payload_bits"]
        if isinstance(bits, bool) or not isinstance(bits, int) or bits <= 0:
            c.add(f"{path}.payload_bits", "must be a positive integer")
            return None
        out["payload_bits"] = bits
    if "scheme" in merged:
        out["scheme"] = c.enum(QuantScheme, merged["scheme"], f"{path}.scheme")
        if out["scheme"] is None:
            return None
    if "overhead" in rec:
        out["overhead"] = _overhead(c, rec["overhead"], f"{path}.overhead")
        if out["overhead"] is None:
            return None
    if out["kind"] is None or out["initiator"] is None:
        return None
    return out


def _make_spec(
    c: _Checker, source: str, target: str, fields: dict, slas: dict[str, SlaPolicy], path: str
) -> PipelineSpec | None:
    cls = fields["cls"]
    if cls is None:
        sla = slas.get(source)
        cls = sla.class_for(target) if sla is not None else InteractionClass.REAL_TIME
    if cls is InteractionClass.NON_REAL_TIME and fields["schedule"] is None:
        c.add(f"{path}.schedule", f"non-real-time pipeline {source}->{target} needs a schedule")
        return None
    return PipelineSpec(
        source,
        target,
        fields["kind"],
        cls,
        fields["initiator"],
        fields["schedule"] if cls is InteractionClass.NON_REAL_TIME else None,
        fields["payload_bits"],
        fields["scheme"],
        fields["overhead"],
    )


def _pipelines(
    c: _Checker, doc: dict, agents: dict[str, LearningAgent], slas: dict[str, SlaPolicy], topology: Topology | None
) -> tuple[PipelineSpec, ...]:
    defaults = c.get(doc, "pipeline_defaults", "", dict, {}) or {}
    specs: dict[tuple[str, str], PipelineSpec] = {}

    models = doc.get("interaction_model", [])
    if isinstance(models, dict):
        models = [models]
    if not isinstance(models, list):
        c.add("interaction_model", "expected an object or a list of objects")
        models = []
    for i, model in enumerate(models):
        path = f"interaction_model[{i}]"
        kind = c.enum(InteractionModel, c.get(model, "kind", path, str), f"{path}.kind")
        members = c.get(model, "agents", path, list)
        parent = c.get(model, "parent", path, dict, None)
        directed = c.get(model, "directed_cascade", path, bool, False)
        if kind is None or members is None:
            continue
        unknown = [a for a in members if a not in agents]
        unknown += [a for a in (parent or {}).values() if a not in agents]
        if unknown:
            c.add(f"{path}.agents", f"unknown agent {unknown[0]!r}")
            continue
        tiers = None
        if topology is not None:
            tiers = {a: topology.nodes[agents[a].node].tier for a in members}
        pairs = c.build(path, generate_pairs, kind, members, parent, tiers, directed)
        settings = {k: model[k] for k in ("class", "schedule", "initiator", "scheme") if k in model}
        if "knowledge" in model:
            settings["kind"] = model["knowledge"]
        fields = _pipeline_fields(c, settings, path, defaults)
        if pairs is None or fields is None:
            continue
        for source, target in pairs:
            spec = _make_spec(c, source, target, fields, slas, path)
            if spec is not None:
                specs.setdefault(spec.key, spec)

    explicit: set[tuple[str, str]] = set()
    for i, rec in enumerate(c.get(doc, "pipelines", "", list, []) or []):
        path = f"pipelines[{i}]"
        source = c.get(rec, "source", path, str)
        target = c.get(rec, "target", path, str)
        if source is None or target is None:
            continue
        bad = [a for a in (source, target) if a not in agents]
        if bad:
            c.add(f"{path}.{'source' if bad[0] == source else 'target'}", f"unknown agent {bad[0]!r}")
            continue
        if source == target:
            c.add(path, "source and target must differ")
            continue
        if (source, target) in explicit:
            c.add(path, f"duplicate pipeline {source}->{target}")
            continue
        explicit.add((source, target))
        fields = _pipeline_fields(c, rec, path, defaults)
        if fields is None:
            continue
        spec = _make_spec(c, source, target, fields, slas, path)
        if spec is not None:
            specs[spec.key] = spec
    for key in specs:
        for agent in key:
            if agent not in slas and agent in agents:
                c.add("slas", f"agent {agent!r} takes part in a pipeline but has no SLA")
    return tuple(specs[k] for k in sorted(specs))


def _events(c: _Checker, doc: dict, agents: dict[str, LearningAgent], nodes: set[str], horizon: float | None):
    events = []
    for i, rec in enumerate(c.get(doc, "events", "", list, []) or []):
        path = f"events[{i}]"
        t = c.get(rec, "time", path, float)
        etype = c.get(rec, "type", path, str)
        if t is None or etype is None:
            continue
        if horizon is not None and not 0 <= t <= horizon:
            c.add(f"{path}.time", f"time {t} lies outside [0, horizon]")
            continue
        if etype == "update":
            agent = c.get(rec, "agent", path, str)
            if agent is not None and agent not in agents:
                c.add(f"{path}.agent", f"unknown agent {agent!r}")
            elif agent is not None:
                events.append(Event(float(t), EventKind.KNOWLEDGE_UPDATE, (agent,)))
        elif etype == "demand":
            target = c.get(rec, "target", path, str)
            source = c.get(rec, "source", path, str)
            if None in (target, source):
                continue
            bad = [a for a in (target, source) if a not in agents]
            if bad:
                c.add(path, f"unknown agent {bad[0]!r}")
            else:
                events.append(Event(float(t), EventKind.DEMAND_REQUEST, (target, source)))
        elif etype == "resource":
            agent = c.get(rec, "agent", path, str)
            node = c.get(rec, "node", path, str)
            resource = c.get(rec, "resource", path, str)
            delta = c.get(rec, "delta", path, float)
            if None in (agent, node, resource, delta):
                continue
            if agent not in agents:
                c.add(f"{path}.agent", f"unknown agent {agent!r}")
            elif node not in nodes:
                c.add(f"{path}.node", f"unknown node {node!r}")
            else:
                action = ResourceAction(agent, node, resource, float(delta), float(t))
                events.append(Event(float(t), EventKind.RESOURCE_ACTION, (agent, node, resource), action))
        else:
            c.add(f"{path}.type", f"unknown event type {etype!r}; use update, demand or resource")
    return tuple(events)


def _positive(c: _Checker, doc: dict, key: str, default: float, strict: bool = True, kind=float):
    value = c.get(doc, key, "", kind, default)
    if value is None:
        return default
    if (strict and not value > 0) or (not strict and value < 0) or not math.isfinite(value):
        c.add(key, f"must be {'>' if strict else '>='} 0")
        return default
    return value


def parse_scenario(doc: Any, name: str = "scenario") -> Scenario:
    """Build a :class:`Scenario` from a decoded document or raise :class:`ValidationError`."""
    c = _Checker()
    if not isinstance(doc, dict):
        raise ValidationError([("", "scenario document must be a JSON object")])
    name = c.get(doc, "name", "", str, name) or name
    horizon = c.get(doc, "horizon", "", float)
    if horizon is not None and not horizon > 0:
        c.add("horizon", "must be > 0")
        horizon = None
    seed = c.get(doc, "seed", "", int, 0)

    topology = _topology(c, doc)
    nodes = set(topology.nodes) if topology is not None else set()
    agents: dict[str, LearningAgent] = {}
    for i, rec in enumerate(c.get(doc, "agents", "", list) or []):
        agent = _agent(c, rec, f"agents[{i}]", nodes)
        if agent is None:
            continue
        if agent.id in agents:
            c.add(f"agents[{i}].id", f"duplicate agent id {agent.id!r}")
            continue
        agents[agent.id] = agent
    slas: dict[str, SlaPolicy] = {}
    for i, rec in enumerate(c.get(doc, "slas", "", list, []) or []):
        sla = _sla(c, rec, f"slas[{i}]", set(agents))
        if sla is None:
            continue
        if sla.agent in slas:
            c.add(f"slas[{i}].agent", f"duplicate SLA for {sla.agent!r}")
            continue
        slas[sla.agent] = sla

    overhead = _overhead(c, doc.get("overhead"), "overhead")
    quantization = _quantization(c, doc.get("quantization"))
    pipelines = _pipelines(c, doc, agents, slas, topology)
    events = _events(c, doc, agents, nodes, horizon)

    synthetic = None
    if "synthetic" in doc:
        raw = c.get(doc, "synthetic", "", dict)
        if raw is not None:
            up = c.get(raw, "update_period", "synthetic", float, None)
            dp = c.get(raw, "demand_period", "synthetic", float, None)
            jitter = c.get(raw, "jitter", "synthetic", float, 0.0)
            for key, value in (("update_period", up), ("demand_period", dp)):
                if value is not None and not value > 0:
                    c.add(f"synthetic.{key}", "must be > 0")
            if jitter is not None and not 0 <= jitter < 1:
                c.add("synthetic.jitter", "must lie in [0, 1)")
            synthetic = SyntheticTrace(up, dp, jitter or 0.0)

    init = c.get(doc, "initiation", "", (dict, str), {"mode": "decentralized"})
    mode, ott = InitiationMode.DECENTRALIZED, False
    if isinstance(init, str):
        init = {"mode": "decentralized", "ott_enabled": True} if init == "ott_enabled" else {"mode": init}
    if isinstance(init, dict):
        mode = c.enum(InitiationMode, init.get("mode", "decentralized"), "initiation.mode") or mode
        ott = c.get(init, "ott_enabled", "initiation", bool, False) or False

    threshold = c.get(doc, "homogeneity_threshold", "", float, 0.9)
    if threshold is not None and not 0 <= threshold <= 1:
        c.add("homogeneity_threshold", "must lie in [0, 1]")
    ntf = c.get(doc, "negative_transfer_factor", "", float, 0.9)
    if ntf is not None and not 0 <= ntf < 1:
        c.add("negative_transfer_factor", "must lie in [0, 1)")
    gain = _positive(c, doc, "performance_gain", 0.0, strict=False)
    time_factor = _positive(c, doc, "training_time_factor", 1.0)
    effect = EffectConfig(threshold if threshold is not None else 0.9, ntf if ntf is not None else 0.9, gain, time_factor)

    rush = None
    if "rush_profile" in doc:
        raw = c.get(doc, "rush_profile", "", list)
        if raw is not None:
            if len(raw) != 24:
                c.add("rush_profile", "expected 24 hourly multipliers")
            else:
                rush = c.build("rush_profile", RushProfile, tuple(raw))

    security_tolerance = c.get(doc, "security_tolerance", "", int, 0)
    if security_tolerance is not None and security_tolerance < 0:
        c.add("security_tolerance", "must be >= 0")
    conflict_window = _positive(c, doc, "conflict_window", 1.0)
    utilization_bin = _positive(c, doc, "utilization_bin", 3600.0)
    relational_bits = _positive(c, doc, "relational_bits", 8192, kind=int)
    plan = c.get(doc, "plan_non_rush", "", bool, True)

    if c.issues:
        raise ValidationError(c.issues)
    return Scenario(
        name=name,
        topology=topology,
        agents=agents,
        slas=slas,
        pipelines=pipelines,
        horizon=float(horizon),
        seed=seed,
        overhead=overhead,
        quantization=quantization,
        effect=effect,
        events=events,
        synthetic=synthetic,
        initiation_mode=mode,
        ott_enabled=ott,
        security_tolerance=security_tolerance,
        conflict_window=float(conflict_window),
        rush_profile=rush,
        utilization_bin=float(utilization_bin),
        plan_non_rush=plan,
        relational_bits=int(relational_bits),
    )


def read_document(path: str | Path) -> dict:
    """Decode a scenario file; raises FileNotFoundError or :class:`ParseError`."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(read_document(path), Path(path).stem)


def validate(path: str | Path) -> list[tuple[str, str]]:
    """Empty list when the scenario is valid, else every ``(field_path, message)`` issue."""
    try:
        load_scenario(path)
    except ValidationError as exc:
        return exc.issues
    return []


def bundled_path(name: str) -> Path:
    if name not in BUNDLED:
        raise KeyError(f"no bundled scenario named {name!r}; choose from {list(BUNDLED)}")
    return Path(str(resources.files("tlsim") / "scenarios" / f"{name}.json"))


def resolve_path(arg: str) -> Path:
    """A filesystem path, or the name of a bundled scenario."""
    p = Path(arg)
    if not p.exists() and arg in BUNDLED:
        return bundled_path(arg)
    return p
