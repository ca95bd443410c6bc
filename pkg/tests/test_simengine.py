import json

import pytest

from tlsim.agents import KnowledgeKind
from tlsim.costmodel import InteractionClass, compute_overhead, is_positive_tl
from tlsim.errors import ValidationError
from tlsim.scenario import BUNDLED, bundled_path, load_scenario, parse_scenario
from tlsim.simengine import Event, EventKind, Simulation, effect_model, run

from .conftest import make_agent

PAIR = ("cifar-src", "cifar-tgt")


def test_empty_trace_yields_zero_totals(retune_doc):
    retune_doc["events"] = []
    report = run(parse_scenario(retune_doc))
    assert report.jobs == []
    assert report.totals == {"theta": 0.0, "bits": 0, "jobs": 0, "positive_pairs": 0}
    rec = report.pair(*PAIR)
    assert (rec.eta, rec.tau) == (1.0, 1.0)


def test_single_realtime_job(retune_doc):
    retune_doc["events"] = [{"time": 5, "type": "update", "agent": "cifar-src"}]
    sc = parse_scenario(retune_doc)
    report = run(sc)
    (job,) = report.jobs
    assert job.dispatch_time == 5 and job.trigger_time == 5
    expected = compute_overhead(1e8, 0.1, InteractionClass.REAL_TIME, 1, sc.overhead)
    assert report.pair(*PAIR).total_theta == expected
    assert report.totals["theta"] == expected
    assert job.payload_bits == 3504872 * 8


def test_retune_scenario_tau():
    rec = run(load_scenario(bundled_path("quantized-retune"))).pair(*PAIR)
    assert rec.tau == pytest.approx(3.142, abs=1e-3)
    assert rec.p_tl == pytest.approx(0.94)
    assert rec.positive


def test_negative_transfer(retune_doc):
    for agent, hot in zip(retune_doc["agents"], (0, 9)):
        agent["domain"]["signature"] = [1.0 if i == hot else 0.0 for i in range(10)]
    report = run(parse_scenario(retune_doc))
    rec = report.pair(*PAIR)
    assert rec.similarity == 0.0
    assert rec.eta == pytest.approx(0.9)
    assert rec.eta < 1 and not rec.positive


def test_effect_model_rules():
    target = make_agent(perf=0.8, ttime=100.0)
    sc = load_scenario(bundled_path("quantized-retune"))
    assert effect_model(target, set(), sc.quantization, sc.quantization.scheme, 1.0) == (0.8, 100.0)
    p, t = effect_model(target, {KnowledgeKind.PARAMETER}, sc.quantization, sc.quantization.scheme, 1.0)
    assert (p, t) == (0.94, 196)
    p, _ = effect_model(target, {KnowledgeKind.FEATURE}, sc.quantization, sc.quantization.scheme, 0.0)
    assert p == pytest.approx(0.72)


def test_out_of_horizon_events_rejected_by_validation_and_engine(retune_doc):
    retune_doc["events"].append({"time": 99999, "type": "update", "agent": "cifar-src"})
    with pytest.raises(ValidationError, match=r"events\[1\]\.time"):
        parse_scenario(retune_doc)
    retune_doc["events"].pop()
    sim = Simulation(parse_scenario(retune_doc))
    sim.push(Event(99999.0, EventKind.KNOWLEDGE_UPDATE, ("cifar-src",)))
    report = sim.run()
    assert report.counters["events_outside_horizon"] == 1
    assert len(report.jobs) == 1


def test_event_priority_order():
    kinds = sorted(EventKind, key=int)
    assert kinds == [
        EventKind.WINDOW_OPEN,
        EventKind.KNOWLEDGE_UPDATE,
        EventKind.DEMAND_REQUEST,
        EventKind.JOB_DISPATCH,
        EventKind.RESOURCE_ACTION,
    ]


def test_same_time_update_precedes_demand(oran_doc):
    sc = parse_scenario(oran_doc)
    sim = Simulation(sc)
    sim._queue.clear()
    sim.push(Event(50.0, EventKind.DEMAND_REQUEST, ("RA1", "AC1")))
    sim.push(Event(50.0, EventKind.KNOWLEDGE_UPDATE, ("AC1",)))
    first = sim._queue[0][-1]
    assert first.kind is EventKind.KNOWLEDGE_UPDATE


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_invariants(name):
    sc = load_scenario(bundled_path(name))
    report = run(sc)
    assert sum(j.payload_bits for j in report.jobs) == sum(report.utilization.values())
    assert report.totals["bits"] == sum(report.utilization.values())
    for rec in report.pairs:
        assert rec.positive == is_positive_tl(rec.eta, rec.tau)
    for job in report.jobs:
        assert 0 <= job.trigger_time <= job.dispatch_time <= sc.horizon
    again = run(load_scenario(bundled_path(name)))
    assert json.dumps(report.to_dict(), sort_keys=True) == json.dumps(again.to_dict(), sort_keys=True)


def test_seed_changes_synthetic_trace(bundled_docs):
    doc = bundled_docs["hierarchy-three-models"]
    a = run(parse_scenario(doc))
    b = run(parse_scenario({**doc, "seed": doc["seed"] + 1}))
    assert [j.trigger_time for j in a.jobs] != [j.trigger_time for j in b.jobs]
