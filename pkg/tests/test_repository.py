import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlsim.agents import KnowledgeKind
from tlsim.errors import DuplicateIdWithDifferentContent, EmptyDomain
from tlsim.quantization import QuantScheme
from tlsim.repository import (
    DAILY,
    WEEKLY,
    KnowledgeArtifact,
    KnowledgeRepository,
    aggregate_pattern,
    extract_knowledge,
)
from tlsim.topology import Tier

from .conftest import make_agent

RAN = Tier.RADIO_ACCESS


def artifact(aid="a1", t=0.0, bits=100, sec=0, tag="mobility_pattern", level=RAN):
    return KnowledgeArtifact(aid, KnowledgeKind.FEATURE, level, tag, bits, sec, "RA", t)


def test_store_then_retrieve():
    repo = KnowledgeRepository()
    a = artifact()
    assert repo.store(a) == "a1"
    assert repo.retrieve(RAN, "mobility_pattern", (0, 10), 0) == [a]
    assert repo.get("a1") is a
    assert repo.retrieve(Tier.CORE, "mobility_pattern", (0, 10), 0) == []


def test_time_range_filter():
    repo = KnowledgeRepository()
    repo.store(artifact("x", 100))
    repo.store(artifact("y", 200))
    assert [a.id for a in repo.retrieve(RAN, "mobility_pattern", (150, 250), 0)] == ["y"]
    assert [a.id for a in repo.retrieve(RAN, "mobility_pattern", (100, 200), 0)] == ["x", "y"]
    with pytest.raises(ValueError):
        repo.retrieve(RAN, "mobility_pattern", (5, 1), 0)


def test_security_gate():
    repo = KnowledgeRepository()
    repo.store(artifact(sec=3))
    assert repo.retrieve(RAN, "mobility_pattern", (0, 1), 0) == []
    assert len(repo.retrieve(RAN, "mobility_pattern", (0, 1), 3)) == 1
    assert KnowledgeRepository().retrieve(RAN, "x", (0, 1), 9) == []


def test_store_is_idempotent_but_rejects_conflicting_ids():
    repo = KnowledgeRepository()
    repo.store(artifact())
    repo.store(artifact())
    assert len(repo) == 1
    with pytest.raises(DuplicateIdWithDifferentContent):
        repo.store(artifact(bits=200))


def test_results_sorted_by_timestamp_stable_under_insertion():
    repo = KnowledgeRepository()
    for aid, t in [("c", 5), ("a", 1), ("b", 5), ("d", 3)]:
        repo.store(artifact(aid, t))
    assert [a.id for a in repo.retrieve(RAN, "mobility_pattern", (0, 10), 0)] == ["a", "d", "c", "b"]


def test_jsonl_round_trip(tmp_path):
    repo = KnowledgeRepository()
    repo.store(artifact("x", 100, sec=2))
    repo.store(KnowledgeArtifact("y", KnowledgeKind.PARAMETER, Tier.CORE, "traffic_model", 8, 0, "C", 7.5))
    path = tmp_path / "repo.jsonl"
    repo.save(path)
    loaded = KnowledgeRepository.load(path)
    assert list(loaded) == list(repo)


def test_artifact_validation():
    with pytest.raises(ValueError):
        artifact(bits=0)


def test_extract_payload_sizes():
    agent = make_agent(params=1_000_000, samples=1000, bits_per_sample=512, signature=[1 / 16] * 16)
    param = extract_knowledge(agent, KnowledgeKind.PARAMETER, level=RAN, scheme=QuantScheme.FLOAT32)
    assert param.payload_bits == 32_000_000
    inst = extract_knowledge(agent, KnowledgeKind.INSTANCE, 0.5, level=RAN)
    assert inst.payload_bits == 256_000
    feat = extract_knowledge(agent, KnowledgeKind.FEATURE, level=RAN)
    assert feat.payload_bits == 1024
    rel = extract_knowledge(agent, KnowledgeKind.RELATIONAL, level=RAN, relational_bits=77)
    assert rel.payload_bits == 77
    quant = extract_knowledge(agent, KnowledgeKind.PARAMETER, level=RAN, scheme=QuantScheme.QAT8)
    assert quant.payload_bits == 8_000_000


def test_extract_instances_from_empty_domain():
    agent = make_agent(samples=0, signature=(0.0, 0.0))
    with pytest.raises(EmptyDomain):
        extract_knowledge(agent, KnowledgeKind.INSTANCE, level=RAN)


def test_daily_pattern_examples():
    assert aggregate_pattern([]).bins == (0.0,) * 24
    single = aggregate_pattern([artifact(bits=100)])
    assert single.bins[0] == 100 and sum(single.bins) == 100
    hour3 = [artifact(f"d{d}", d * DAILY + 3 * 3600 + 60, 10 * (d + 1)) for d in range(4)]
    profile = aggregate_pattern(hour3)
    assert profile.bins[3] == 25.0
    assert all(b == 0 for i, b in enumerate(profile.bins) if i != 3)


def test_weekly_and_seasonal_bins():
    weekly = aggregate_pattern([artifact(t=2 * DAILY + 5)], WEEKLY)
    assert len(weekly.bins) == 7 and weekly.bins[2] == 100
    with pytest.raises(ValueError):
        aggregate_pattern([], 1000.0)
    assert len(aggregate_pattern([], 1000.0, bins=4).bins) == 4


@given(
    st.lists(st.tuples(st.floats(0, 10 * DAILY), st.integers(1, 10**9)), max_size=30),
    st.randoms(use_true_random=False),
)
def test_pattern_is_permutation_invariant(items, rnd):
    arts = [artifact(f"a{i}", t, b) for i, (t, b) in enumerate(items)]
    shuffled = list(arts)
    rnd.shuffle(shuffled)
    assert aggregate_pattern(arts) == aggregate_pattern(shuffled)
