"""Multi-tier network graph, end-to-end path properties and interaction-model pair sets."""

from __future__ import annotations

import heapq
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from .errors import EmptyAgentList, MissingHierarchy, NoPath, UnknownNode

HOUR = 3600.0


class Tier(str, Enum):
    END_USER = "EndUser"
    RADIO_ACCESS = "RadioAccess"
    CORE = "Core"
    OTT_SERVICE = "OttService"
    MANAGEMENT = "Management"


class InteractionModel(str, Enum):
    CASCADE = "Cascade"
    HIERARCHICAL = "Hierarchical"
    PARALLEL = "Parallel"


@dataclass(frozen=True)
class Node:
    id: str
    tier: Tier
    zone: str = ""


@dataclass(frozen=True)
class Link:
    """Undirected link. ``load_profile`` holds 24 hourly utilization values in [0, 1]."""

    id: str
    a: str
    b: str
    bandwidth: float
    delay: float
    load_profile: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise ValueError(f"link {self.id}: bandwidth must be > 0")
        if not self.delay >= 0:
            raise ValueError(f"link {self.id}: delay must be >= 0")
        if self.load_profile is not None:
            if len(self.load_profile) != 24:
                raise ValueError(f"link {self.id}: load_profile needs 24 hourly slots")
            if any(not 0.0 <= u <= 1.0 for u in self.load_profile):
                raise ValueError(f"link {self.id}: load_profile values must lie in [0, 1]")

    def utilization_at(self, t: float) -> float:
        if self.load_profile is None:
            return 0.0
        return self.load_profile[int(math.floor(t / HOUR)) % 24]

    def other(self, node: str) -> str:
        return self.b if node == self.a else self.a


@dataclass(frozen=True)
class Path:
    nodes: tuple[str, ...]
    links: tuple[str, ...]
    e2e_bandwidth: float
    e2e_delay: float


@dataclass(frozen=True)
class Topology:
    nodes: Mapping[str, Node]
    links: Mapping[str, Link]
    _adjacency: dict[str, list[Link]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: dict[str, list[Link]] = {n: [] for n in self.nodes}
        for link in self.links.values():
            for end in (link.a, link.b):
                if end not in self.nodes:
                    raise UnknownNode(f"link {link.id} references unknown node {end!r}")
            adj[link.a].append(link)
            if link.b != link.a:
                adj[link.b].append(link)
        for lst in adj.values():
            lst.sort(key=lambda l: l.id)
        object.__setattr__(self, "_adjacency", adj)

    @classmethod
    def build(cls, nodes: Iterable[Node], links: Iterable[Link]) -> "Topology":
        node_map: dict[str, Node] = {}
        for n in nodes:
            if n.id in node_map:
                raise ValueError(f"duplicate node id {n.id!r}")
            node_map[n.id] = n
        link_map: dict[str, Link] = {}
        for l in links:
            if l.id in link_map:
                raise ValueError(f"duplicate link id {l.id!r}")
            link_map[l.id] = l
        return cls(node_map, link_map)

    def neighbors(self, node: str) -> list[Link]:
        return self._adjacency[node]


def path_between(topology: Topology, a: str, b: str) -> Path:
    """Minimum-delay path from ``a`` to ``b``.

    Equal-delay candidates are ordered by their link-id sequence read from
    the smaller endpoint id, so the result is deterministic and ``(b, a)``
    returns the same links reversed. The end-to-end bandwidth is the
    bottleneck (minimum) link bandwidth and the delay is the sum of link
    delays.
    """
    for n in (a, b):
        if n not in topology.nodes:
            raise UnknownNode(n)
    if a == b:
        return Path((a,), (), math.inf, 0.0)
    if b < a:
        path = _search(topology, b, a)
        return Path(path.nodes[::-1], path.links[::-1], path.e2e_bandwidth, path.e2e_delay)
    return _search(topology, a, b)


def _search(topology: Topology, a: str, b: str) -> Path:
    # labels are (delay, link-id sequence); lexicographic comparison gives the tie-break
    best: dict[str, tuple[float, tuple[str, ...]]] = {a: (0.0, ())}
    heap: list[tuple[float, tuple[str, ...], str, tuple[str, ...]]] = [(0.0, (), a, (a,))]
    done: set[str] = set()
    while heap:
        delay, seq, node, visited = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == b:
            links = [topology.links[i] for i in seq]
            return Path(visited, seq, min(l.bandwidth for l in links), delay)
        for link in topology.neighbors(node):
            nxt = link.other(node)
            if nxt in done or nxt in visited:
                continue
            label = (delay + link.delay, seq + (link.id,))
            if nxt not in best or label < best[nxt]:
                best[nxt] = label
                heapq.heappush(heap, (label[0], label[1], nxt, visited + (nxt,)))
    raise NoPath(f"no path between {a!r} and {b!r}")


def generate_pairs(
    model: InteractionModel,
    agents: Sequence[str],
    hierarchy: Mapping[str, str] | None = None,
    tiers: Mapping[str, object] | None = None,
    directed_cascade: bool = False,
) -> list[tuple[str, str]]:
    """Directed (source, target) pairs induced by an interaction model.

    Cascade links consecutive agents, Hierarchical links each child with its
    parent, Parallel links every peer pair sharing a tier (all agents are
    peers when ``tiers`` is omitted). Both directions are emitted unless
    ``directed_cascade`` restricts a cascade to its forward direction.
    """
    model = InteractionModel(model)
    if not agents:
        raise EmptyAgentList("agent list is empty")
    if len(set(agents)) != len(agents):
        raise ValueError("agent list contains duplicates")

    pairs: list[tuple[str, str]] = []
    if model is InteractionModel.CASCADE:
        if hierarchy is not None:
            raise ValueError("hierarchy is only meaningful for the Hierarchical model")
        for s, t in zip(agents, agents[1:]):
            pairs.append((s, t))
            if not directed_cascade:
                pairs.append((t, s))
    elif model is InteractionModel.HIERARCHICAL:
        if hierarchy is None:
            raise MissingHierarchy("Hierarchical model needs a parent map")
        members = set(agents)
        for child in agents:
            parent = hierarchy.get(child)
            if parent is None:
                continue
            if parent not in members:
                raise ValueError(f"parent {parent!r} of {child!r} is not in the agent list")
            if parent == child:
                raise ValueError(f"agent {child!r} is its own parent")
            pairs.append((child, parent))
            pairs.append((parent, child))
    else:
        if hierarchy is not None:
            raise ValueError("hierarchy is only meaningful for the Hierarchical model")
        for i, s in enumerate(agents):
            for t in agents[i + 1:]:
                if tiers is None or tiers[s] == tiers[t]:
                    pairs.append((s, t))
                    pairs.append((t, s))
    return pairs
