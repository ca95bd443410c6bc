import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlsim.agents import KnowledgeKind
from tlsim.costmodel import InteractionClass
from tlsim.errors import UnknownAgent
from tlsim.governance import (
    Conflict,
    DenialReason,
    Initiator,
    InitiationMode,
    PipelineRequest,
    ResourceAction,
    SlaPolicy,
    authorize,
    detect_conflicts,
    initiation_allowed,
)

from .conftest import line_topology

MB = 1e6
HOSTS = {"S": "a", "T": "b"}


def slas(
    src_targets=("T",), tgt_sources=("S",), kinds=("Parameter",), delay=(1.0, 1.0), bw=(MB, MB), sec=(1, 1)
):
    source = SlaPolicy("S", trusted_targets=frozenset(src_targets), shareable_kinds={k: 1.0 for k in kinds},
                       security_level=sec[0], max_e2e_delay=delay[0], required_bandwidth=bw[0])
    target = SlaPolicy("T", trusted_sources=frozenset(tgt_sources), shareable_kinds={},
                       security_level=sec[1], max_e2e_delay=delay[1], required_bandwidth=bw[1])
    return source, target


REQ = PipelineRequest("S", "T", KnowledgeKind.PARAMETER, InteractionClass.REAL_TIME, payload_bits=100)
TOPO = line_topology(("a", "b", 10 * MB, 0.05))


def test_granted_pipeline_carries_path_properties():
    decision = authorize(REQ, *slas(), TOPO, HOSTS)
    assert decision.granted and decision.denial_reason is None
    pipe = decision.pipeline
    assert (pipe.bandwidth, pipe.delay) == (10 * MB, 0.05)
    assert pipe.cls is InteractionClass.REAL_TIME
    assert pipe.required_bandwidth == MB and pipe.delay_bound == 1.0


def test_untrusted_target_denied():
    decision = authorize(REQ, *slas(src_targets=()), TOPO, HOSTS)
    assert not decision.granted
    assert decision.denial_reason is DenialReason.NOT_TRUSTED_TARGET
    assert decision.pipeline is None


def test_delay_bound_violation():
    decision = authorize(REQ, *slas(delay=(0.01, 0.01)), TOPO, HOSTS)
    assert decision.denial_reason is DenialReason.DELAY_BOUND_VIOLATED


@pytest.mark.parametrize(
    "kwargs, topo, reason",
    [
        ({"tgt_sources": ()}, TOPO, DenialReason.NOT_TRUSTED_SOURCE),
        ({"kinds": ("Feature",)}, TOPO, DenialReason.KIND_NOT_SHAREABLE),
        ({}, line_topology(("a", "x", MB, 0.1), ("b", "y", MB, 0.1)), DenialReason.NO_PATH),
        ({"bw": (MB, 20 * MB)}, TOPO, DenialReason.BANDWIDTH_INSUFFICIENT),
        ({"sec": (1, 3)}, TOPO, DenialReason.SECURITY_MISMATCH),
        # several checks fail; the first in order is reported
        ({"src_targets": (), "tgt_sources": (), "sec": (0, 5)}, TOPO, DenialReason.NOT_TRUSTED_TARGET),
    ],
)
def test_denial_reasons_in_order(kwargs, topo, reason):
    assert authorize(REQ, *slas(**kwargs), topo, HOSTS).denial_reason is reason


def test_security_tolerance():
    assert authorize(REQ, *slas(sec=(1, 2)), TOPO, HOSTS, security_tolerance=1).granted


def test_unknown_agent():
    with pytest.raises(UnknownAgent):
        authorize(REQ, *slas(), TOPO, {"S": "a"})


def test_request_rejects_self_pair():
    with pytest.raises(ValueError):
        PipelineRequest("S", "S", KnowledgeKind.FEATURE, InteractionClass.REAL_TIME)


@settings(max_examples=100, deadline=None)
@given(st.booleans(), st.booleans(), st.booleans(), st.sampled_from([0.01, 1.0]), st.sampled_from([MB, 50 * MB]))
def test_trust_is_monotone_and_decisions_deterministic(trust_t, trust_s, kind_ok, delay, bw):
    base = slas(
        src_targets=("T",) if trust_t else (),
        tgt_sources=("S",) if trust_s else (),
        kinds=("Parameter",) if kind_ok else ("Feature",),
        delay=(delay, delay),
        bw=(bw, bw),
    )
    first = authorize(REQ, *base, TOPO, HOSTS)
    assert first == authorize(REQ, *base, TOPO, HOSTS)
    widened = slas(
        src_targets=("T", "X"), tgt_sources=("S", "Y"),
        kinds=("Parameter",) if kind_ok else ("Feature",), delay=(delay, delay), bw=(bw, bw),
    )
    if first.granted:
        assert authorize(REQ, *widened, TOPO, HOSTS).granted


@pytest.mark.parametrize(
    "initiator, mode, ott, expected",
    [
        (Initiator.NETWORK_ELEMENT, InitiationMode.CENTRALIZED, False, False),
        (Initiator.ORCHESTRATOR, InitiationMode.CENTRALIZED, False, True),
        (Initiator.OTT_APPLICATION, InitiationMode.DECENTRALIZED, False, False),
        (Initiator.NETWORK_ELEMENT, InitiationMode.DECENTRALIZED, False, True),
        (Initiator.ORCHESTRATOR, InitiationMode.DECENTRALIZED, False, True),
        (Initiator.OTT_APPLICATION, InitiationMode.DECENTRALIZED, True, True),
    ],
)
def test_initiation_modes(initiator, mode, ott, expected):
    assert initiation_allowed(initiator, mode, ott) is expected


def test_ra_ee_conflict_example():
    actions = [ResourceAction("RA", "N", "prb", 5, 10), ResourceAction("EE", "N", "prb", -3, 12)]
    assert detect_conflicts(actions, 5) == [Conflict("N", "prb", ("EE", "RA"), 3)]


def test_same_sign_and_far_apart_actions():
    same = [ResourceAction("RA", "N", "prb", 5, 10), ResourceAction("EE", "N", "prb", 3, 12)]
    assert detect_conflicts(same, 5) == []
    far = [ResourceAction("RA", "N", "prb", 5, 10), ResourceAction("EE", "N", "prb", -3, 110)]
    assert detect_conflicts(far, 5) == []
    assert detect_conflicts([], 5) == []


def test_single_agent_reversing_itself_is_not_a_conflict():
    actions = [ResourceAction("RA", "N", "prb", 5, 10), ResourceAction("RA", "N", "prb", -5, 11)]
    assert detect_conflicts(actions, 5) == []


def test_conflicts_are_per_node_and_resource():
    actions = [
        ResourceAction("RA", "N", "prb", 5, 10),
        ResourceAction("EE", "M", "prb", -3, 10),
        ResourceAction("EE", "N", "power", -3, 10),
    ]
    assert detect_conflicts(actions, 5) == []


def _brute_force_conflicts(actions, window):
    """Check every pair of actions directly."""
    found = {}
    for a in actions:
        for b in actions:
            if a.node == b.node and a.resource == b.resource and a.agent != b.agent \
                    and a.delta > 0 > b.delta and abs(a.time - b.time) < window:
                found.setdefault((a.node, a.resource), set()).update({a.agent, b.agent})
    return found


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.builds(
            ResourceAction,
            st.sampled_from(["RA", "EE", "AC"]),
            st.sampled_from(["N1", "N2"]),
            st.just("prb"),
            st.integers(-5, 5).map(float),
            st.integers(0, 30).map(float),
        ),
        max_size=12,
    ),
    st.sampled_from([1.0, 3.0, 10.0]),
    st.randoms(use_true_random=False),
)
def test_conflict_detection_matches_pairwise_oracle_and_ignores_order(actions, window, rnd):
    got = detect_conflicts(actions, window)
    expected = _brute_force_conflicts(actions, window)
    assert {(c.node, c.resource) for c in got} == set(expected)
    for c in got:
        assert c.net_opposition > 0
        assert set(c.agents) >= expected[(c.node, c.resource)]
    shuffled = list(actions)
    rnd.shuffle(shuffled)
    assert detect_conflicts(shuffled, window) == got
