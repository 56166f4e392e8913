"""Jammer configuration generators.

Ring attacks pick which ring links to cut (evenly spread, bunched on
adjacent links, or uniformly random). Complete-graph attacks are phrased
the other way around: a link budget survives the jammers, and the
placement decides how the surviving links are arranged (one growing
clique for the consolidation strategy, several disjoint cliques for the
clustered alternative). Exhaustive enumeration backs the small-n ground
truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate, combinations
from typing import Iterator

import numpy as np

from .errors import PlacementError
from .network import JammerSet, Pair


def all_pairs(n: int) -> list[Pair]:
    """Every distinct undirected node pair of an n-node network."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def ring_pair_count(n: int) -> int:
    # a 2-ring folds both neighbor slots onto one physical link
    return 1 if n == 2 else n


def _ring_edge(e: int, n: int) -> Pair:
    # edge with left endpoint e: (e, e+1), wrapping to (1, n)
    return (e, e + 1) if e < n else (1, n)


def _check_ring_budget(n: int, n_tilde: int) -> None:
    if n < 2:
        raise PlacementError(f"a ring needs n >= 2, got {n}")
    edges = ring_pair_count(n)
    if not (1 <= n_tilde <= edges):
        raise PlacementError(
            f"need 1 <= n_tilde <= {edges} distinct ring links, got {n_tilde}")


# ---------------------------------------------------------------------------
# ring placements
# ---------------------------------------------------------------------------


def ring_equidistant(n: int, n_tilde: int) -> JammerSet:
    """Spread the cuts so segment sizes differ by at most one.

    The first (n mod n_tilde) segments take the extra node; segments start
    at node 1, so the final cut is always the wrap link (1, n).
    """
    _check_ring_budget(n, n_tilde)
    base, rem = divmod(n, n_tilde)
    sizes = [base + 1] * rem + [base] * (n_tilde - rem)
    return JammerSet.of(_ring_edge(b, n) for b in accumulate(sizes))


def ring_adjacent(n: int, n_tilde: int) -> JammerSet:
    """Bunch the cuts on consecutive links (1,2)..(n_tilde, n_tilde+1).

    Leaves n_tilde - 1 isolated nodes and one path of n - n_tilde + 1
    nodes, the most damaging arrangement for a fixed budget.
    """
    _check_ring_budget(n, n_tilde)
    return JammerSet.of(_ring_edge(e, n) for e in range(1, n_tilde + 1))


def ring_random(n: int, n_tilde: int, seed) -> JammerSet:
    """Cut n_tilde distinct ring links chosen uniformly at random."""
    _check_ring_budget(n, n_tilde)
    edges = ring_pair_count(n)
    rng = np.random.default_rng(seed)
    picks = rng.choice(edges, size=n_tilde, replace=False)
    return JammerSet.of(_ring_edge(int(e) + 1, n) for e in picks)


# ---------------------------------------------------------------------------
# complete-graph placements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GreedyPlan:
    """Shape of the consolidated survivor network for a given jammer budget.

    k is the clique size, c the leftover links attached to node k+1
    (0 <= c < k), steps the number of rounds the one-node-at-a-time
    construction needs.
    """

    k: int
    c: int
    steps: int


@dataclass(frozen=True)
class ClusterPlan:
    """Survivor links split into m_bar disjoint cliques of size k_bar."""

    m_bar: int
    k_bar: int

    @property
    def link_budget(self) -> int:
        return self.m_bar * math.comb(self.k_bar, 2)


def _cut_complement(n: int, kept: set[Pair]) -> JammerSet:
    return JammerSet(frozenset(p for p in all_pairs(n) if p not in kept))


def greedy_shape(n: int, n_tilde: int) -> GreedyPlan:
    """Arithmetic of the consolidation plan, without materializing links."""
    total = math.comb(n, 2)
    if not (0 <= n_tilde <= total):
        raise PlacementError(
            f"need 0 <= n_tilde <= C({n},2) = {total}, got {n_tilde}")
    n_bar = total - n_tilde
    k = (1 + math.isqrt(1 + 8 * n_bar)) // 2
    while math.comb(k, 2) > n_bar:
        k -= 1
    while k < n and math.comb(k + 1, 2) <= n_bar:
        k += 1
    c = n_bar - math.comb(k, 2)
    return GreedyPlan(k=k, c=c, steps=k if c == 0 else k + 1)


def greedy_kept_links(n: int, n_tilde: int) -> tuple[GreedyPlan, set[Pair]]:
    plan = greedy_shape(n, n_tilde)
    kept = {(i, j) for i in range(1, plan.k + 1) for j in range(i + 1, plan.k + 1)}
    kept.update((i, plan.k + 1) for i in range(1, plan.c + 1))
    return plan, kept


def fc_greedy(n: int, n_tilde: int) -> tuple[GreedyPlan, JammerSet]:
    """Consolidate the surviving link budget into one clique plus leftovers.

    Keeps the clique on {1..k} for the largest k whose link count fits the
    budget, attaches any remainder from node k+1 down to {1..c}, and cuts
    everything else.
    """
    plan, kept = greedy_kept_links(n, n_tilde)
    return plan, _cut_complement(n, kept)


def fc_clusters(n: int, k_bar: int, m_bar: int) -> JammerSet:
    """Arrange the surviving links as m_bar disjoint cliques of size k_bar."""
    if m_bar < 1 or k_bar < 1:
        raise PlacementError("need m_bar >= 1 and k_bar >= 1")
    if m_bar * k_bar > n:
        raise PlacementError(
            f"cannot pack {m_bar} disjoint cliques of {k_bar} nodes into n={n}")
    kept: set[Pair] = set()
    for q in range(m_bar):
        lo = q * k_bar + 1
        block = range(lo, lo + k_bar)
        kept.update((i, j) for i in block for j in block if i < j)
    return _cut_complement(n, kept)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------


def enumerate_configs(n: int, n_bar: int) -> Iterator[tuple[Pair, ...]]:
    """Stream every way to keep exactly n_bar links among n nodes.

    Yields the kept-link sets; the matching JammerSet is the complement.
    Capped at n <= 8 since the stream has C(C(n,2), n_bar) entries.
    """
    if n < 2:
        raise PlacementError(f"need n >= 2, got {n}")
    pairs = all_pairs(n)
    if not (0 <= n_bar <= len(pairs)):
        raise PlacementError(
            f"need 0 <= n_bar <= C({n},2) = {len(pairs)}, got {n_bar}")
    if n > 8:
        est = math.comb(len(pairs), n_bar)
        raise PlacementError(
            f"enumeration for n={n} would stream C({len(pairs)},{n_bar}) = "
            f"{est} configurations; capped at n <= 8")
    return combinations(pairs, n_bar)


def kept_to_jammers(n: int, kept) -> JammerSet:
    """Complement of a kept-link set, as the cut set realizing it."""
    return _cut_complement(n, set(kept))
