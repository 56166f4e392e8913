"""Gossip network model: topology builders, jammer application, decomposition.

A network is a single source plus n gossiping nodes. The source refreshes its
own payload at rate ``lambda_s`` and pushes the current version to node j at
rate ``source_rates[j-1]``. Node i pushes its version to node j at the directed
rate stored under ``(i, j)``. Jammers cut undirected node-to-node links; source
links cannot be jammed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import InvalidTopologyError, PlacementError, WastedJammerWarning

Pair = tuple[int, int]


def _canonical_pair(i: int, j: int) -> Pair:
    if i == j:
        raise InvalidTopologyError(f"self link ({i},{j}) is not allowed")
    if i < 1 or j < 1:
        raise InvalidTopologyError(f"node ids are 1-based, got ({i},{j})")
    return (i, j) if i < j else (j, i)


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GossipNetwork:
    """Immutable rate description of a jammable gossip network.

    ``link_rates`` maps directed pairs (i, j) to the rate at which node i
    sends updates to node j. Zero-rate entries are dropped at construction,
    so an absent key means "no link in that direction".
    """

    n: int
    lambda_s: float
    source_rates: tuple[float, ...]
    link_rates: Mapping[Pair, float]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidTopologyError(f"need at least one node, got n={self.n}")
        if not (math.isfinite(self.lambda_s) and self.lambda_s >= 0):
            raise InvalidTopologyError("lambda_s must be finite and >= 0")
        src = tuple(float(r) for r in self.source_rates)
        if len(src) != self.n:
            raise InvalidTopologyError(
                f"source_rates has {len(src)} entries for n={self.n}")
        if any(not math.isfinite(r) or r < 0 for r in src):
            raise InvalidTopologyError("source rates must be finite and >= 0")
        clean: dict[Pair, float] = {}
        for (i, j), r in dict(self.link_rates).items():
            if i == j:
                raise InvalidTopologyError(f"self link ({i},{j}) is not allowed")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InvalidTopologyError(f"link ({i},{j}) outside [1,{self.n}]")
            r = float(r)
            if not math.isfinite(r) or r < 0:
                raise InvalidTopologyError(f"bad rate on link ({i},{j}): {r}")
            if r > 0:
                clean[(i, j)] = r
        object.__setattr__(self, "source_rates", src)
        object.__setattr__(self, "link_rates", MappingProxyType(clean))

    # -- queries ------------------------------------------------------------

    def directed_rate(self, i: int, j: int) -> float:
        return self.link_rates.get((i, j), 0.0)

    def out_rate(self, i: int) -> float:
        return sum(r for (a, _), r in self.link_rates.items() if a == i)

    def undirected_pairs(self) -> frozenset[Pair]:
        """Pairs {i, j} carrying a positive rate in at least one direction."""
        return frozenset(_canonical_pair(i, j) for (i, j) in self.link_rates)

    def total_rate(self) -> float:
        return self.lambda_s + sum(self.source_rates) + sum(self.link_rates.values())


@dataclass(frozen=True)
class JammerSet:
    """A deduplicated set of undirected cut pairs.

    Multiple jammers on the same pair collapse into one; ``size`` is the
    number of distinct pairs actually cut.
    """

    pairs: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", frozenset(_canonical_pair(i, j) for (i, j) in self.pairs))

    @classmethod
    def of(cls, pairs: Iterable[Iterable[int]]) -> "JammerSet":
        return cls(frozenset(tuple(p) for p in pairs))

    @property
    def size(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)


@dataclass(frozen=True)
class Component:
    nodes: tuple[int, ...]
    shape: str  # isolated | path | cycle | clique | star | general
    n_links: int

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]

    def shapes(self) -> list[str]:
        return [c.shape for c in self.components]

    def component_of(self, node: int) -> Component:
        for c in self.components:
            if node in c.nodes:
                return c
        raise KeyError(node)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_ring(n: int, lam: float = 1.0, lam_s: float = 1.0) -> GossipNetwork:
    """Bidirectional ring: each node spreads at ``lam``, split over its neighbors.

    For n == 2 the two neighbor slots point at the same node, so they merge
    into a single link carrying the full rate ``lam`` in each direction.
    """
    if n < 2:
        raise InvalidTopologyError(f"a ring needs n >= 2, got {n}")
    links: dict[Pair, float] = {}
    if n == 2:
        links[(1, 2)] = lam
        links[(2, 1)] = lam
    else:
        for i in range(1, n + 1):
            j = i % n + 1
            links[(i, j)] = lam / 2.0
            links[(j, i)] = lam / 2.0
    src = tuple(lam / n for _ in range(n))
    return GossipNetwork(n, lam_s, src, links)


def build_fully_connected(
    n: int, lam: float = 1.0, lam_s: float = 1.0, denominator: str = "n"
) -> GossipNetwork:
    """Complete graph; each directed link runs at lam/n or lam/(n-1).

    ``denominator="n-1"`` gives every node a total out rate of exactly
    ``lam``; ``"n"`` is the slightly slowed variant whose per-node out rate
    is lam*(n-1)/n, convenient because closed forms stay uniform in n.
    """
    if n < 2:
        raise InvalidTopologyError(f"a complete graph needs n >= 2, got {n}")
    if denominator == "n":
        rate = lam / n
    elif denominator == "n-1":
        rate = lam / (n - 1)
    else:
        raise ValueError(f"denominator must be 'n' or 'n-1', got {denominator!r}")
    links = {(i, j): rate for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    src = tuple(lam / n for _ in range(n))
    return GossipNetwork(n, lam_s, src, links)


# ---------------------------------------------------------------------------
# jamming and decomposition
# ---------------------------------------------------------------------------


def apply_jammers(net: GossipNetwork, jam: JammerSet) -> GossipNetwork:
    """Zero out both directions of every cut pair.

    Pairs that do not match a live link are legal but wasted; each one is
    reported with a WastedJammerWarning. Applying the same set twice gives
    the same network as applying it once.
    """
    live = net.undirected_pairs()
    for pair in jam.sorted_pairs():
        if not (1 <= pair[0] <= net.n and 1 <= pair[1] <= net.n):
            raise PlacementError(f"cut pair {pair} outside [1,{net.n}]")
        if pair not in live:
            warnings.warn(f"cut pair {pair} matches no live link", WastedJammerWarning,
                          stacklevel=2)
    cut = jam.pairs
    links = {
        (i, j): r for (i, j), r in net.link_rates.items()
        if _canonical_pair(i, j) not in cut
    }
    return GossipNetwork(net.n, net.lambda_s, net.source_rates, links)


def _classify(nodes: list[int], adj: dict[int, set[int]], n_links: int) -> str:
    m = len(nodes)
    if m == 1:
        return "isolated"
    degs = sorted(len(adj[v]) for v in nodes)
    if m >= 3 and n_links == m * (m - 1) // 2:
        return "clique"
    if m >= 3 and n_links == m and degs[0] == degs[-1] == 2:
        return "cycle"
    if n_links == m - 1 and degs[0] == 1 and degs[1] == 1 and (m == 2 or degs[2:] == [2] * (m - 2)):
        return "path"
    if m >= 4 and n_links == m - 1 and degs[-1] == m - 1 and degs[:-1] == [1] * (m - 1):
        return "star"
    return "general"


def decompose(net: GossipNetwork) -> Decomposition:
    """Connected components of the positive-rate support, tagged by shape.

    A pair counts as connected when either direction carries a positive
    rate. Tags are checked most specific first; a triangle is a clique, a
    two-node component with one link is a path.
    """
    adj: dict[int, set[int]] = {i: set() for i in range(1, net.n + 1)}
    for (i, j) in net.link_rates:
        adj[i].add(j)
        adj[j].add(i)
    seen: set[int] = set()
    comps: list[Component] = []
    for start in range(1, net.n + 1):
        if start in seen:
            continue
        stack, nodes = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            nodes.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        nodes.sort()
        n_links = sum(len(adj[v]) for v in nodes) // 2
        comps.append(Component(tuple(nodes), _classify(nodes, adj, n_links), n_links))
    return Decomposition(tuple(comps))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def network_to_dict(net: GossipNetwork, jam: JammerSet | None = None) -> dict:
    """One JSON-ready document holding the network and an optional cut set."""
    pairs = sorted(net.undirected_pairs())
    links = [
        {"i": i, "j": j,
         "rate_ij": net.directed_rate(i, j),
         "rate_ji": net.directed_rate(j, i)}
        for (i, j) in pairs
    ]
    doc = {
        "n": net.n,
        "lambda_s": net.lambda_s,
        "source_rates": list(net.source_rates),
        "links": links,
        "cuts": [list(p) for p in jam.sorted_pairs()] if jam is not None else [],
    }
    return doc


def network_from_dict(doc: dict) -> tuple[GossipNetwork, JammerSet]:
    links: dict[Pair, float] = {}
    for entry in doc.get("links", []):
        i, j = int(entry["i"]), int(entry["j"])
        links[(i, j)] = float(entry.get("rate_ij", 0.0))
        links[(j, i)] = float(entry.get("rate_ji", 0.0))
    net = GossipNetwork(
        n=int(doc["n"]),
        lambda_s=float(doc["lambda_s"]),
        source_rates=tuple(float(r) for r in doc["source_rates"]),
        link_rates=links,
    )
    jam = JammerSet.of(doc.get("cuts", []))
    return net, jam
