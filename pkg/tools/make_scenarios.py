"""Regenerates the bundled scenario files under src/tlsim/scenarios/."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "tlsim" / "scenarios"

RUSH = [0.0] * 7 + [0.6, 1.0, 0.8] + [0.3] * 7 + [0.7, 1.0, 0.6] + [0.1] * 4
assert len(RUSH) == 24


def agent(aid, node, purpose, space, sig, labels, perf, ttime, params=0, samples=10000, bps=256):
    return {
        "id": aid,
        "node": node,
        "purpose": purpose,
        "domain": {"feature_space": space, "signature": sig, "sample_count": samples,
                   "has_labels": labels, "bits_per_sample": bps},
        "task": {"label_space": purpose, "function": "dnn", "parameter_count": params},
        "baseline_performance": perf,
        "baseline_training_time": ttime,
    }


def sla(aid, sources, targets, kinds, delay=0.05, bw=1e7, security=1, default="RealTime", granularity=None):
    rec = {"agent": aid, "trusted_sources": sources, "trusted_targets": targets, "shareable_kinds": kinds,
           "security_level": security, "default_class": default, "max_e2e_delay": delay, "required_bandwidth": bw}
    if granularity:
        rec["granularity"] = granularity
    return rec


quantized = {
    "name": "quantized-retune",
    "horizon": 3600,
    "seed": 1,
    "topology": {
        "nodes": [{"id": "cloud", "tier": "Core", "zone": "dc"}, {"id": "edge", "tier": "RadioAccess", "zone": "z1"}],
        "links": [{"id": "backhaul", "endpoints": ["cloud", "edge"], "bandwidth": 1e9, "delay": 0.005}],
    },
    "agents": [
        agent("cifar-src", "cloud", "image-classifier", "cifar10", [0.1] * 10, True, 0.92, 616.0,
              params=3504872, samples=50000, bps=24576),
        agent("cifar-tgt", "edge", "image-classifier", "cifar10", [0.1] * 10, True, 0.92, 616.0,
              params=3504872, samples=50000, bps=24576),
    ],
    "slas": [
        sla("cifar-src", [], ["cifar-tgt"], {"Parameter": 1.0}, delay=0.1, bw=1e8),
        sla("cifar-tgt", ["cifar-src"], [], {"Parameter": 1.0}, delay=0.1, bw=1e8),
    ],
    "pipelines": [{"source": "cifar-src", "target": "cifar-tgt", "kind": "Parameter", "class": "RealTime",
                   "scheme": "Qat8"}],
    "overhead": {"alpha": [1e-3, 1.0, 1.0, 1.0], "m_costs": [3, 2, 1]},
    "quantization": {"scheme": "Qat8", "base_accuracy": 94.0, "fbgemm_delta": -3.0, "default_delta": -5.0,
                     "retrain_time": 196, "full_train_time": 616, "restores_accuracy": True},
    "events": [{"time": 60, "type": "update", "agent": "cifar-src"}],
}

MOB = [0.05, 0.1, 0.2, 0.25, 0.2, 0.1, 0.05, 0.05]
MOB2 = [0.05, 0.1, 0.15, 0.25, 0.25, 0.1, 0.05, 0.05]
ENERGY = [0.3, 0.25, 0.2, 0.1, 0.05, 0.05, 0.03, 0.02]
ENERGY2 = [0.02, 0.03, 0.05, 0.05, 0.1, 0.2, 0.25, 0.3]
ALL = {"Instance": 0.25, "Feature": 1.0, "Parameter": 1.0, "Relational": 1.0}
NRT_WINDOWS = [[3600, 7200], [36000, 39600], [72000, 75600]]

oran = {
    "name": "oran-ra-ee-ac",
    "horizon": 86400,
    "seed": 11,
    "topology": {
        "nodes": [
            {"id": "oran1", "tier": "RadioAccess", "zone": "zone1"},
            {"id": "oran2", "tier": "RadioAccess", "zone": "zone2"},
            {"id": "core1", "tier": "Core", "zone": "metro"},
            {"id": "orch", "tier": "Management", "zone": "metro"},
        ],
        "links": [
            {"id": "fh-oran1", "endpoints": ["oran1", "core1"], "bandwidth": 1e9, "delay": 0.002, "load_profile": RUSH},
            {"id": "fh-oran2", "endpoints": ["oran2", "core1"], "bandwidth": 5e8, "delay": 0.002, "load_profile": RUSH},
            {"id": "mgmt", "endpoints": ["core1", "orch"], "bandwidth": 1e10, "delay": 0.001},
        ],
    },
    "agents": [
        agent("RA1", "oran1", "RA", "ran-mobility", MOB, True, 0.8, 1200.0, params=250000),
        agent("EE1", "oran1", "EE", "ran-energy", ENERGY, False, 0.7, 900.0, params=120000),
        agent("AC1", "oran1", "AC", "ran-mobility", MOB2, True, 0.85, 600.0, params=80000),
        agent("RA2", "oran2", "RA", "ran-mobility", MOB2, False, 0.75, 1200.0, params=250000),
        agent("EE2", "oran2", "EE", "ran-energy", ENERGY2, False, 0.7, 900.0, params=120000),
    ],
    "slas": [
        sla("RA1", ["RA2", "AC1"], ["RA2"], ALL, security=1),
        sla("EE1", ["EE2", "AC1"], ["EE2"], {"Feature": 1.0, "Parameter": 1.0}, security=1,
            default="NonRealTime"),
        sla("AC1", [], ["RA1"], {"Instance": 0.5, "Parameter": 1.0}, security=1, default="OnDemand"),
        sla("RA2", ["RA1"], ["RA1"], ALL, security=1),
        sla("EE2", ["EE1"], ["EE1"], {"Feature": 1.0, "Parameter": 1.0}, security=1, default="NonRealTime"),
    ],
    "pipeline_defaults": {"initiator": "NetworkElement", "schedule": NRT_WINDOWS},
    "pipelines": [
        {"source": "RA1", "target": "RA2", "kind": "Parameter"},
        {"source": "RA2", "target": "RA1", "kind": "Parameter"},
        {"source": "EE1", "target": "EE2", "kind": "Feature"},
        {"source": "EE2", "target": "EE1", "kind": "Feature"},
        {"source": "AC1", "target": "RA1", "kind": "Instance"},
        {"source": "AC1", "target": "EE1", "kind": "Parameter"},
    ],
    "overhead": {"alpha": [0.001, 1.0, 1.0, 0.5], "m_costs": [3, 2, 1],
                 "f2": {"form": "reciprocal", "d_ref": 0.01}},
    "initiation": {"mode": "decentralized", "ott_enabled": False},
    "performance_gain": 0.05,
    "training_time_factor": 0.6,
    "conflict_window": 5.0,
    "events": [
        {"time": 10, "type": "resource", "agent": "RA1", "node": "oran1", "resource": "prb", "delta": 5},
        {"time": 12, "type": "resource", "agent": "EE1", "node": "oran1", "resource": "prb", "delta": -3},
        {"time": 200, "type": "demand", "target": "RA1", "source": "AC1"},
        {"time": 500, "type": "update", "agent": "AC1"},
        {"time": 600, "type": "update", "agent": "RA1"},
        {"time": 1000, "type": "demand", "target": "RA1", "source": "AC1"},
        {"time": 1800, "type": "update", "agent": "EE1"},
        {"time": 2000, "type": "update", "agent": "EE2"},
        {"time": 4000, "type": "update", "agent": "RA1"},
        {"time": 30000, "type": "update", "agent": "EE1"},
        {"time": 50000, "type": "update", "agent": "RA2"},
    ],
}

ZONE = [0.1, 0.15, 0.25, 0.25, 0.15, 0.1]
ZONE3 = [0.1, 0.1, 0.25, 0.3, 0.15, 0.1]
CORE = [0.1, 0.15, 0.2, 0.25, 0.2, 0.1]
MEMBERS = ["M1", "M2", "M3", "C"]

hierarchy = {
    "name": "hierarchy-three-models",
    "horizon": 86400,
    "seed": 42,
    "topology": {
        "nodes": [
            {"id": "ran1", "tier": "RadioAccess", "zone": "z1"},
            {"id": "ran2", "tier": "RadioAccess", "zone": "z2"},
            {"id": "ran3", "tier": "RadioAccess", "zone": "z3"},
            {"id": "core1", "tier": "Core", "zone": "metro"},
        ],
        "links": [
            {"id": "xn12", "endpoints": ["ran1", "ran2"], "bandwidth": 1e8, "delay": 0.004},
            {"id": "xn23", "endpoints": ["ran2", "ran3"], "bandwidth": 1e8, "delay": 0.004},
            {"id": "bh1", "endpoints": ["ran1", "core1"], "bandwidth": 1e9, "delay": 0.003},
            {"id": "bh2", "endpoints": ["ran2", "core1"], "bandwidth": 1e9, "delay": 0.003},
            {"id": "bh3", "endpoints": ["ran3", "core1"], "bandwidth": 1e9, "delay": 0.003},
        ],
    },
    "agents": [
        agent("M1", "ran1", "mobility", "zone-traffic", ZONE, True, 0.78, 1800.0, params=400000),
        agent("M2", "ran2", "mobility", "zone-traffic", ZONE, True, 0.8, 1800.0, params=400000),
        agent("M3", "ran3", "mobility", "zone-traffic", ZONE3, True, 0.76, 1800.0, params=400000),
        agent("C", "core1", "traffic", "zone-traffic", CORE, True, 0.82, 3600.0, params=1500000, samples=200000),
    ],
    "slas": [sla(a, [b for b in MEMBERS if b != a], [b for b in MEMBERS if b != a], ALL, bw=1e7) for a in MEMBERS],
    "interaction_model": [
        {"kind": "Cascade", "agents": ["M1", "M2", "M3"], "knowledge": "Parameter", "class": "RealTime"},
        {"kind": "Hierarchical", "agents": ["M1", "M2", "M3", "C"],
         "parent": {"M1": "C", "M2": "C", "M3": "C"}, "knowledge": "Feature", "class": "NonRealTime",
         "schedule": [[0, 21600], [43200, 64800]]},
        {"kind": "Parallel", "agents": ["M1", "M2", "M3"], "knowledge": "Instance", "class": "OnDemand"},
    ],
    "overhead": {"alpha": [0.001, 1.0, 1.0, 0.5], "m_costs": [4, 2, 1],
                 "f1": {"form": "log", "w_ref": 1e6}, "f2": {"form": "reciprocal", "d_ref": 0.01}},
    "rush_profile": RUSH,
    "performance_gain": 0.04,
    "training_time_factor": 0.5,
    "synthetic": {"update_period": 7200, "demand_period": 10800, "jitter": 0.2},
}

for doc in (quantized, oran, hierarchy):
    (OUT / f"{doc['name']}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", doc["name"])
