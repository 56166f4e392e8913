"""Exact age computation for jammable gossip networks.

Every solver here evaluates the same stationary recursion: the freshness
lag of a node set S satisfies

    age(S) = (lambda_s + sum_i w_i(S) * age(S + {i})) /
             (src(S)    + sum_i w_i(S))

where i runs over external neighbors of S, w_i(S) is the total rate at
which i pushes into S, and src(S) is the total source rate into S. A set
with no inflow at all never updates, which is reported as a degenerate
network rather than an infinite age.

Three engines share that recursion: a bitmask solver over all subsets of a
component (general graphs, exponential in component size), an interval
solver for path components (quadratic), and an arc solver for cycle
components (quadratic). Closed forms for uniform-rate rings, paths, stars
and cliques are provided alongside for cross-checking and for scaling
studies where the exact engines would be too slow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ComponentTooLargeError,
    DegenerateNetworkError,
    InvalidTopologyError,
    PlacementError,
)
from .network import Component, GossipNetwork, JammerSet, decompose

# ---------------------------------------------------------------------------
# result container
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AgeReport:
    """Stationary expected version age, one entry per node (1-based order)."""

    per_node: tuple[float, ...]
    total: float
    average: float

    @classmethod
    def from_per_node(cls, values: Iterable[float]) -> "AgeReport":
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ValueError("empty age vector")
        tot = math.fsum(vals)
        return cls(vals, tot, tot / len(vals))

    def to_dict(self) -> dict:
        return {
            "per_node": list(self.per_node),
            "total": self.total,
            "average": self.average,
        }


# ---------------------------------------------------------------------------
# subset engine (general components)
# ---------------------------------------------------------------------------


def _component_dp(R: np.ndarray, src: np.ndarray, lam_s: float) -> np.ndarray:
    """Solve the recursion over every subset of one component.

    R[i, j] is the rate from local node i to local node j. Returns the age
    of every nonempty bitmask; masks are processed by descending popcount
    so each lookup hits an already-solved superset.
    """
    m = len(src)
    size = 1 << m
    masks = np.arange(size, dtype=np.int64)
    srcsum = np.zeros(size)
    pop = np.zeros(size, dtype=np.int16)
    inflow = np.zeros((size, m))
    for b in range(m):
        has = ((masks >> b) & 1) == 1
        srcsum[has] += src[b]
        pop[has] += 1
        # rate from every sender into member b, accumulated per mask
        inflow[has] += R[:, b]
    if srcsum[-1] <= 0.0:
        raise DegenerateNetworkError("component receives no source updates")

    delta = np.zeros(size)
    delta[size - 1] = lam_s / srcsum[size - 1]
    order = np.argsort(pop, kind="stable")
    spop = pop[order]
    for p in range(m - 1, 0, -1):
        lo = np.searchsorted(spop, p, side="left")
        hi = np.searchsorted(spop, p, side="right")
        mm = order[lo:hi]
        num = np.full(mm.shape, lam_s, dtype=float)
        den = srcsum[mm].copy()
        for b in range(m):
            ext = ((mm >> b) & 1) == 0
            sub = mm[ext]
            if sub.size == 0:
                continue
            w = inflow[sub, b]
            num[ext] += w * delta[sub | (1 << b)]
            den[ext] += w
        if np.any(den <= 0.0):
            raise DegenerateNetworkError("a node subset receives no inflow")
        delta[mm] = num / den
    return delta


def _component_matrices(net: GossipNetwork, nodes: tuple[int, ...]):
    idx = {v: t for t, v in enumerate(nodes)}
    m = len(nodes)
    R = np.zeros((m, m))
    for (i, j), r in net.link_rates.items():
        if i in idx and j in idx:
            R[idx[i], idx[j]] = r
    src = np.array([net.source_rates[v - 1] for v in nodes], dtype=float)
    return R, src


def solve_subset_dp(net: GossipNetwork, component_cap: int = 20) -> AgeReport:
    """Exact per-node ages via the subset engine, one component at a time."""
    ages = np.zeros(net.n)
    for comp in decompose(net).components:
        if comp.size > component_cap:
            raise ComponentTooLargeError(
                f"component of {comp.size} nodes exceeds the subset cap "
                f"{component_cap}; use the path/cycle engines or closed forms")
        R, src = _component_matrices(net, comp.nodes)
        delta = _component_dp(R, src, net.lambda_s)
        for t, v in enumerate(comp.nodes):
            ages[v - 1] = delta[1 << t]
    return AgeReport.from_per_node(ages)


def set_age(net: GossipNetwork, nodes: Iterable[int], component_cap: int = 20) -> float:
    """Age of the freshest member of an arbitrary node set.

    The recursion only ever grows the set through neighbors, so it is run
    over the union of the components the set touches.
    """
    req = sorted(set(int(v) for v in nodes))
    if not req:
        raise ValueError("need at least one node")
    for v in req:
        if not (1 <= v <= net.n):
            raise ValueError(f"node {v} outside [1,{net.n}]")
    dec = decompose(net)
    touched: list[Component] = []
    for comp in dec.components:
        if any(v in comp.nodes for v in req):
            touched.append(comp)
    union = tuple(sorted(v for c in touched for v in c.nodes))
    if len(union) > component_cap:
        raise ComponentTooLargeError(
            f"set spans {len(union)} nodes, above the subset cap {component_cap}")
    R, src = _component_matrices(net, union)
    delta = _component_dp(R, src, net.lambda_s)
    pos = {v: t for t, v in enumerate(union)}
    mask = 0
    for v in req:
        mask |= 1 << pos[v]
    return float(delta[mask])


# ---------------------------------------------------------------------------
# interval engine (path components)
# ---------------------------------------------------------------------------


def _interval_dp(left_in: np.ndarray, right_in: np.ndarray, src: np.ndarray,
                 lam_s: float) -> np.ndarray:
    """Ages of single positions on a path, via all contiguous intervals.

    left_in[p] is the rate into position p from p-1 (left_in[0] ignored);
    right_in[p] the rate into p from p+1 (right_in[m-1] ignored). Adding a
    neighbor keeps an interval contiguous, so rows shrink from the full
    path down to single positions.
    """
    m = len(src)
    cs = np.concatenate(([0.0], np.cumsum(src)))
    prev: np.ndarray | None = None
    for L in range(m, 0, -1):
        k = m - L + 1
        starts = np.arange(k)
        num = np.full(k, lam_s, dtype=float)
        den = cs[starts + L] - cs[starts]
        if prev is not None:
            # row L+1 holds every interval of length L+1; both gathers use it whole
            wl = left_in[1:k]
            num[1:] += wl * prev
            den[1:] += wl
            wr = right_in[L - 1:m - 1]
            num[:-1] += wr * prev
            den[:-1] += wr
        if np.any(den <= 0.0):
            raise DegenerateNetworkError("an interval receives no inflow")
        prev = num / den
    assert prev is not None
    return prev


def _undirected_adjacency(net: GossipNetwork, nodes: tuple[int, ...]) -> dict[int, list[int]]:
    ns = set(nodes)
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for (i, j) in net.link_rates:
        if i in ns and j in ns:
            adj[i].add(j)
            adj[j].add(i)
    return {v: sorted(ws) for v, ws in adj.items()}


def _path_order(net: GossipNetwork, nodes: tuple[int, ...]) -> list[int]:
    if len(nodes) == 1:
        return [nodes[0]]
    adj = _undirected_adjacency(net, nodes)
    ends = [v for v in nodes if len(adj[v]) == 1]
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in nodes):
        raise InvalidTopologyError(f"nodes {nodes} do not form a path")
    order = [min(ends)]
    prev = None
    while len(order) < len(nodes):
        nxt = [w for w in adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            raise InvalidTopologyError(f"nodes {nodes} do not form a path")
        prev = order[-1]
        order.append(nxt[0])
    return order


def path_component_ages(net: GossipNetwork, nodes: Iterable[int]) -> dict[int, float]:
    """Exact ages on a path-shaped component with arbitrary rates."""
    order = _path_order(net, tuple(sorted(set(nodes))))
    m = len(order)
    left_in = np.zeros(m)
    right_in = np.zeros(m)
    for p in range(1, m):
        left_in[p] = net.directed_rate(order[p - 1], order[p])
    for p in range(m - 1):
        right_in[p] = net.directed_rate(order[p + 1], order[p])
    src = np.array([net.source_rates[v - 1] for v in order], dtype=float)
    ages = _interval_dp(left_in, right_in, src, net.lambda_s)
    return dict(zip(order, ages.tolist()))


# ---------------------------------------------------------------------------
# arc engine (cycle components)
# ---------------------------------------------------------------------------


def _arc_dp(into_left: np.ndarray, into_right: np.ndarray, src: np.ndarray,
            lam_s: float) -> np.ndarray:
    """Ages of single positions on a cycle, via all arcs.

    into_left[p] is the rate into position p from (p-1) mod m, into_right[p]
    the rate into p from (p+1) mod m. At arc length m-1 the two external
    neighbors coincide, so their weights merge onto the full-cycle value.
    """
    m = len(src)
    if m < 3:
        raise InvalidTopologyError("arc engine needs a cycle of 3 or more nodes")
    total = float(src.sum())
    if total <= 0.0:
        raise DegenerateNetworkError("component receives no source updates")
    ext = np.concatenate((src, src))
    cs = np.concatenate(([0.0], np.cumsum(ext)))
    a = np.arange(m)
    delta_full = lam_s / total
    prev: np.ndarray | None = None
    for L in range(m - 1, 0, -1):
        segsum = cs[a + L] - cs[a]
        ir = np.roll(into_right, -(L - 1))  # rate into the arc at its far end
        num = np.full(m, lam_s, dtype=float)
        den = segsum.copy()
        if L == m - 1:
            w = into_left + ir
            num += w * delta_full
            den += w
        else:
            assert prev is not None
            pl = np.roll(prev, 1)  # arc grown one step to the left
            num += into_left * pl + ir * prev
            den += into_left + ir
        if np.any(den <= 0.0):
            raise DegenerateNetworkError("an arc receives no inflow")
        prev = num / den
    assert prev is not None
    return prev


def _cycle_order(net: GossipNetwork, nodes: tuple[int, ...]) -> list[int]:
    adj = _undirected_adjacency(net, nodes)
    if any(len(adj[v]) != 2 for v in nodes):
        raise InvalidTopologyError(f"nodes {nodes} do not form a cycle")
    start = min(nodes)
    order = [start, min(adj[start])]
    while len(order) < len(nodes):
        nxt = [w for w in adj[order[-1]] if w != order[-2]]
        order.append(nxt[0])
    if order[0] not in adj[order[-1]]:
        raise InvalidTopologyError(f"nodes {nodes} do not form a cycle")
    return order


def cycle_component_ages(net: GossipNetwork, nodes: Iterable[int]) -> dict[int, float]:
    """Exact ages on a cycle-shaped component with arbitrary rates."""
    order = _cycle_order(net, tuple(sorted(set(nodes))))
    m = len(order)
    into_left = np.zeros(m)
    into_right = np.zeros(m)
    for p in range(m):
        into_left[p] = net.directed_rate(order[(p - 1) % m], order[p])
        into_right[p] = net.directed_rate(order[(p + 1) % m], order[p])
    src = np.array([net.source_rates[v - 1] for v in order], dtype=float)
    ages = _arc_dp(into_left, into_right, src, net.lambda_s)
    return dict(zip(order, ages.tolist()))


def solve_structured(net: GossipNetwork, component_cap: int = 20) -> AgeReport:
    """Per-node ages using the cheapest exact engine each shape allows.

    Paths and cycles get the quadratic engines regardless of size; every
    other shape falls back to the subset engine under the usual cap. Output
    matches solve_subset_dp to rounding error, which makes the pair a handy
    consistency check.
    """
    ages = np.zeros(net.n)
    for comp in decompose(net).components:
        if comp.shape == "isolated":
            v = comp.nodes[0]
            s = net.source_rates[v - 1]
            if s <= 0.0:
                raise DegenerateNetworkError(f"node {v} receives no source updates")
            ages[v - 1] = net.lambda_s / s
        elif comp.shape == "path":
            for v, age in path_component_ages(net, comp.nodes).items():
                ages[v - 1] = age
        elif comp.shape == "cycle":
            for v, age in cycle_component_ages(net, comp.nodes).items():
                ages[v - 1] = age
        else:
            if comp.size > component_cap:
                raise ComponentTooLargeError(
                    f"{comp.shape} component of {comp.size} nodes exceeds the "
                    f"subset cap {component_cap}")
            R, src = _component_matrices(net, comp.nodes)
            delta = _component_dp(R, src, net.lambda_s)
            for t, v in enumerate(comp.nodes):
                ages[v - 1] = delta[1 << t]
    return AgeReport.from_per_node(ages)


# ---------------------------------------------------------------------------
# closed forms for the uniform-rate building blocks
# ---------------------------------------------------------------------------


def harmonic(k: int) -> float:
    if k < 0:
        raise ValueError("harmonic number needs k >= 0")
    return float(np.sum(1.0 / np.arange(1, k + 1))) if k else 0.0


def _ring_prefix_sum(n0: int, n_eff: float) -> float:
    # sum_{j=1}^{n0-1} prod_{k<=j} n_eff/(n_eff+k)  +  (n_eff/n0) prod_{k<n0}
    if n0 == 1:
        return float(n_eff)
    k = np.arange(1, n0)
    cp = np.cumprod(n_eff / (n_eff + k))
    return float(cp.sum() + (n_eff / n0) * cp[-1])


def cycle_node_age(n0: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """Age of any node on a uniform ring segment of n0 nodes closed into a
    cycle, inside a network of n nodes total (source rate lam/n per node,
    gossip rate lam/2 per direction, neighbors merged for n0 == 2)."""
    if not (1 <= n0 <= n):
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={n}")
    return (lam_s / lam) * _ring_prefix_sum(n0, float(n))


def path_end_age(n0: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """Age of an end node of a uniform n0-node path inside an n-node network.

    Exactly twice the cycle value at half the effective size: an end node
    sees one inbound chain instead of two.
    """
    if not (1 <= n0 <= n):
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={n}")
    return 2.0 * (lam_s / lam) * _ring_prefix_sum(n0, n / 2.0)


def star_hub_age(d: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """Age of the hub of a star with d leaves (uniform rates, n-node network)."""
    if d < 0:
        raise ValueError("need d >= 0 leaves")
    if d > 0:
        factors = (d - np.arange(d, dtype=float)) / (d + 1.0)
        s = float(np.cumprod(factors).sum())
    else:
        s = 0.0
    return (lam_s / lam) * (n / (d + 1.0)) * (1.0 + s)


def hub_age_reduction(d: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """How much a hub gains over an isolated node by keeping d leaves."""
    return (lam_s / lam) * n - star_hub_age(d, n, lam, lam_s)


def hub_reduction_coefficient(d: int) -> Fraction:
    """Exact reduction per unit of isolated age: reduction = coeff * lam_s*n/lam."""
    if d < 0:
        raise ValueError("need d >= 0 leaves")
    s = Fraction(0)
    prod = Fraction(1)
    for d1 in range(d):
        prod *= Fraction(d - d1, d + 1)
        s += prod
    return 1 - (1 + s) / (d + 1)


def reduction_table(d_max: int = 22) -> list[float]:
    """Reduction coefficients for d = 1..d_max, floored to two decimals."""
    out = []
    for d in range(1, d_max + 1):
        c = hub_reduction_coefficient(d)
        out.append((c.numerator * 100 // c.denominator) / 100.0)
    return out


def clique_node_age(k: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """Age of any node of a uniform k-clique inside an n-node network
    (directed link rate lam/n between clique members)."""
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return (lam_s / lam) * (n / k) * harmonic(k)


def clique_system_total(k: int, n: int, lam: float = 1.0, lam_s: float = 1.0) -> float:
    """Total age over all n nodes when k survive as a clique and the rest
    are isolated."""
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return (lam_s / lam) * (n * harmonic(k) + n * (n - k))


# ---------------------------------------------------------------------------
# analytic bounds
# ---------------------------------------------------------------------------


def product_decay_bounds(j: int, n: int) -> tuple[float, float, float]:
    """(lower, exact, upper) for the j-step ring decay product prod n/(n+k).

    The upper envelope exp(-j^2/(4n)) is only valid up to j == n.
    """
    if j < 0 or n < 1:
        raise ValueError("need j >= 0 and n >= 1")
    if j > n:
        raise ValueError(f"upper envelope needs j <= n, got j={j}, n={n}")
    exact = float(np.prod(n / (n + np.arange(1, j + 1, dtype=float))))
    lower = math.exp(-j * j / n)
    upper = math.exp(-j * j / (4.0 * n))
    return lower, exact, upper


def ring_scaling_bounds(n: int, alpha: float, c: float,
                        lam: float = 1.0, lam_s: float = 1.0) -> tuple[float, float]:
    """(lower, upper) envelope for the average age of a ring under c*n^alpha
    evenly spread cuts."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 <= alpha <= 1.0):
        raise ValueError("need 0 <= alpha <= 1")
    if c <= 0.0:
        raise ValueError("need c > 0")
    root_term = math.sqrt(math.pi / 2.0) * math.sqrt(n)
    jam_term = c * n ** alpha
    lower = jam_term * math.exp(-(n ** (1.0 - 2.0 * alpha)) / (2.0 * c * c))
    if alpha < 0.5:
        lower += root_term
    upper = jam_term + root_term + c
    scale = lam_s / lam
    return scale * lower, scale * upper


# ---------------------------------------------------------------------------
# jammed uniform rings
# ---------------------------------------------------------------------------


def uniform_path_ages(n0: int, n: int, lam: float = 1.0,
                      lam_s: float = 1.0) -> np.ndarray:
    """Exact ages along a uniform n0-node path inside an n-node network
    (gossip rate lam/2 per direction, source rate lam/n per node)."""
    if not (1 <= n0 <= n):
        raise ValueError(f"need 1 <= n0 <= n, got n0={n0}, n={n}")
    left_in = np.full(n0, lam / 2.0)
    right_in = np.full(n0, lam / 2.0)
    left_in[0] = 0.0
    right_in[-1] = 0.0
    src = np.full(n0, lam / n)
    return _interval_dp(left_in, right_in, src, lam_s)


def _ring_edge_left(pair: tuple[int, int], n: int) -> int:
    i, j = pair
    if n == 2:
        if (i, j) != (1, 2):
            raise PlacementError(f"{pair} is not an edge of the 2-ring")
        return 1
    if j == i + 1:
        return i
    if (i, j) == (1, n):
        return n
    raise PlacementError(f"{pair} is not an edge of the {n}-ring")


def jammed_ring_ages(n: int, cuts, lam: float = 1.0, lam_s: float = 1.0,
                     model: str = "line") -> AgeReport:
    """Per-node ages of a uniform n-ring with the given adjacent pairs cut.

    model="line" treats each surviving segment as the open path it really
    is (exact); model="miniring" closes each segment into a cycle of the
    same size, the tractable stand-in whose value never exceeds the true
    one but stays within a factor of two.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if model not in ("line", "miniring"):
        raise ValueError(f"model must be 'line' or 'miniring', got {model!r}")
    jam = cuts if isinstance(cuts, JammerSet) else JammerSet.of(cuts)
    lefts = sorted(_ring_edge_left(p, n) for p in jam.pairs)
    ages = np.zeros(n)
    if not lefts:
        ages[:] = cycle_node_age(n, n, lam, lam_s)
        return AgeReport.from_per_node(ages)
    if n == 2:
        # the 2-ring has a single merged link; cutting it isolates both nodes
        ages[:] = (lam_s / lam) * n
        return AgeReport.from_per_node(ages)
    r = len(lefts)
    for t, e in enumerate(lefts):
        nxt = lefts[(t + 1) % r]
        length = (nxt - e) % n or n
        start = e % n + 1
        seg = [(start - 1 + q) % n + 1 for q in range(length)]
        if model == "miniring":
            val = cycle_node_age(length, n, lam, lam_s)
            for v in seg:
                ages[v - 1] = val
        else:
            vals = uniform_path_ages(length, n, lam, lam_s)
            for v, a in zip(seg, vals):
                ages[v - 1] = a
    return AgeReport.from_per_node(ages)
