from __future__ import annotations

import copy
import json

import pytest

from tlsim.agents import DomainDescriptor, LearningAgent, TaskDescriptor
from tlsim.scenario import BUNDLED, bundled_path
from tlsim.topology import Link, Node, Tier, Topology


def make_agent(
    aid="A",
    node="n1",
    labels=True,
    signature=(0.5, 0.5),
    space="fs",
    samples=1000,
    bits_per_sample=512,
    params=1_000_000,
    perf=0.8,
    ttime=100.0,
    purpose="RA",
) -> LearningAgent:
    return LearningAgent(
        id=aid,
        node=node,
        purpose=purpose,
        domain=DomainDescriptor(space, tuple(signature), samples, labels, bits_per_sample),
        task=TaskDescriptor("ys", "f", params),
        baseline_performance=perf,
        baseline_training_time=ttime,
    )


def line_topology(*links: tuple[str, str, float, float]) -> Topology:
    names = sorted({n for a, b, *_ in links for n in (a, b)})
    return Topology.build(
        [Node(n, Tier.RADIO_ACCESS) for n in names],
        [Link(f"L{i}", a, b, bw, d) for i, (a, b, bw, d) in enumerate(links)],
    )


@pytest.fixture
def bundled_docs() -> dict[str, dict]:
    return {name: json.loads(bundled_path(name).read_text()) for name in BUNDLED}


@pytest.fixture
def oran_doc(bundled_docs) -> dict:
    return copy.deepcopy(bundled_docs["oran-ra-ee-ac"])


@pytest.fixture
def retune_doc(bundled_docs) -> dict:
    return copy.deepcopy(bundled_docs["quantized-retune"])
