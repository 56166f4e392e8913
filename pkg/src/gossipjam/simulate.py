"""Event-driven Monte Carlo simulation of the version-age gossip process.

Events are competing exponential clocks collapsed into one stream: a
single exponential wait at the total rate picks the next event time, a
uniform draw picks which clock fired. The source increments its own
version counter, a source push copies the current version onto a node,
and a gossip push lets the receiver keep the fresher of the two versions.

Per-node ages are piecewise constant between events, so time averages are
exact integrals, accumulated lazily: each version counter remembers when
it last changed and settles its area on the next change. The warmup
prefix is discarded by resetting the accumulators the first time an event
lands past it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numba import njit

from .errors import DegenerateNetworkError, SimulationError
from .network import GossipNetwork

# fixed draw block so the random stream never depends on stopping time
_CHUNK = 1 << 16

# slots of the float / int carry-over state shared with the kernel
_F_T, _F_ACCN, _F_LASTN, _F_ACCM, _F_LASTM = 0, 1, 2, 3, 4
_I_N, _I_M, _I_CROSSED, _I_EVENTS, _I_ERR = 0, 1, 2, 3, 4


@njit(cache=True)
def _run_chunk(dts, us, cum, total, src_of, dst_of, n, warmup, horizon,
               fstate, istate, node_v, last_v, acc_v, in_set):
    t = fstate[_F_T]
    for q in range(dts.shape[0]):
        t_new = t + dts[q]
        if t_new >= horizon:
            fstate[_F_T] = horizon
            return q
        if istate[_I_CROSSED] == 0 and t_new >= warmup:
            # state is constant since the previous event, so everything
            # accrued before the warmup instant is simply dropped
            for j in range(n):
                acc_v[j] = 0.0
                last_v[j] = warmup
            fstate[_F_ACCN] = 0.0
            fstate[_F_LASTN] = warmup
            fstate[_F_ACCM] = 0.0
            fstate[_F_LASTM] = warmup
            istate[_I_CROSSED] = 1
        idx = np.searchsorted(cum, us[q] * total, side="right")
        if idx == 0:
            fstate[_F_ACCN] += istate[_I_N] * (t_new - fstate[_F_LASTN])
            fstate[_F_LASTN] = t_new
            istate[_I_N] += 1
        else:
            if idx <= n:
                j = idx - 1
                new_v = istate[_I_N]
            else:
                e = idx - n - 1
                j = dst_of[e]
                new_v = node_v[src_of[e]]
            if new_v > node_v[j]:
                acc_v[j] += node_v[j] * (t_new - last_v[j])
                last_v[j] = t_new
                node_v[j] = new_v
                if new_v > istate[_I_N]:
                    istate[_I_ERR] = 1
                    return q
                if in_set[j] == 1 and new_v > istate[_I_M]:
                    fstate[_F_ACCM] += istate[_I_M] * (t_new - fstate[_F_LASTM])
                    fstate[_F_LASTM] = t_new
                    istate[_I_M] = new_v
        istate[_I_EVENTS] += 1
        t = t_new
    fstate[_F_T] = t
    return dts.shape[0]


# ---------------------------------------------------------------------------
# configuration and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimConfig:
    """Run parameters. warmup defaults to 5% of the horizon."""

    horizon: float
    warmup: float | None = None
    seed: int = 0
    replications: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise SimulationError(f"horizon must be positive, got {self.horizon}")
        w = 0.05 * self.horizon if self.warmup is None else float(self.warmup)
        if not (0.0 <= w < self.horizon):
            raise SimulationError(
                f"need horizon > warmup >= 0, got horizon={self.horizon}, warmup={w}")
        if self.replications < 1:
            raise SimulationError("need at least one replication")
        object.__setattr__(self, "warmup", w)


@dataclass(frozen=True)
class SimState:
    """Snapshot of the version counters when a replication ends."""

    source_version: int
    node_versions: tuple[int, ...]
    last_event_time: float


@dataclass(frozen=True)
class SimResult:
    """Time-averaged ages, aggregated over replications."""

    per_node_time_avg: tuple[float, ...]
    average: float
    std_error: tuple[float, ...]
    average_std_error: float
    replication_averages: tuple[float, ...]
    events: int
    final_states: tuple[SimState, ...]

    def to_dict(self) -> dict:
        return {
            "per_node_time_avg": list(self.per_node_time_avg),
            "average": self.average,
            "std_error": list(self.std_error),
            "average_std_error": self.average_std_error,
            "replication_averages": list(self.replication_averages),
            "events": self.events,
        }

    def to_csv_rows(self) -> list[tuple[int, float, float]]:
        return [(i + 1, m, s) for i, (m, s) in
                enumerate(zip(self.per_node_time_avg, self.std_error))]


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def _event_tables(net: GossipNetwork):
    rates = [net.lambda_s]
    rates.extend(net.source_rates)
    keys = sorted(net.link_rates)
    rates.extend(net.link_rates[k] for k in keys)
    cum = np.cumsum(np.asarray(rates, dtype=float))
    total = float(cum[-1])
    if total <= 0.0:
        raise DegenerateNetworkError("total event rate is zero")
    src_of = np.array([i - 1 for (i, _) in keys], dtype=np.int64)
    dst_of = np.array([j - 1 for (_, j) in keys], dtype=np.int64)
    return cum, total, src_of, dst_of


def _one_replication(cum, total, src_of, dst_of, n, cfg: SimConfig, rng,
                     in_set: np.ndarray):
    fstate = np.zeros(5)
    istate = np.zeros(5, dtype=np.int64)
    node_v = np.zeros(n, dtype=np.int64)
    last_v = np.zeros(n)
    acc_v = np.zeros(n)
    warmup = float(cfg.warmup)
    horizon = float(cfg.horizon)
    while True:
        dts = rng.exponential(1.0 / total, _CHUNK)
        us = rng.random(_CHUNK)
        _run_chunk(dts, us, cum, total, src_of, dst_of, n, warmup, horizon,
                   fstate, istate, node_v, last_v, acc_v, in_set)
        if istate[_I_ERR]:
            raise SimulationError("a node version overtook the source version")
        if fstate[_F_T] >= horizon:
            break
    if istate[_I_CROSSED] == 0:
        # every event fell before the warmup instant
        acc_v[:] = 0.0
        last_v[:] = warmup
        fstate[_F_ACCN] = 0.0
        fstate[_F_LASTN] = warmup
        fstate[_F_ACCM] = 0.0
        fstate[_F_LASTM] = warmup
    acc_v += node_v * (horizon - last_v)
    acc_n = fstate[_F_ACCN] + istate[_I_N] * (horizon - fstate[_F_LASTN])
    acc_m = fstate[_F_ACCM] + istate[_I_M] * (horizon - fstate[_F_LASTM])
    window = horizon - warmup
    per_node = (acc_n - acc_v) / window
    set_mean = (acc_n - acc_m) / window
    state = SimState(int(istate[_I_N]), tuple(int(v) for v in node_v), horizon)
    return per_node, set_mean, int(istate[_I_EVENTS]), state


def _simulate_reps(net: GossipNetwork, cfg: SimConfig, in_set: np.ndarray):
    cum, total, src_of, dst_of = _event_tables(net)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.replications)
    per_node = np.empty((cfg.replications, net.n))
    set_means = np.empty(cfg.replications)
    events = 0
    states = []
    for r, child in enumerate(seeds):
        rng = np.random.default_rng(child)
        pn, sm, ev, state = _one_replication(
            cum, total, src_of, dst_of, net.n, cfg, rng, in_set)
        per_node[r] = pn
        set_means[r] = sm
        events += ev
        states.append(state)
    return per_node, set_means, events, tuple(states)


def _stderr(samples: np.ndarray, axis=0) -> np.ndarray:
    reps = samples.shape[0]
    if reps < 2:
        return np.zeros(samples.shape[1:] if samples.ndim > 1 else ())
    return samples.std(axis=axis, ddof=1) / math.sqrt(reps)


def simulate(net: GossipNetwork, cfg: SimConfig) -> SimResult:
    """Estimate per-node time-average ages; deterministic for a fixed seed."""
    in_set = np.zeros(net.n, dtype=np.int8)
    per_node, _, events, states = _simulate_reps(net, cfg, in_set)
    means = per_node.mean(axis=0)
    rep_avgs = per_node.mean(axis=1)
    return SimResult(
        per_node_time_avg=tuple(means.tolist()),
        average=float(rep_avgs.mean()),
        std_error=tuple(np.atleast_1d(_stderr(per_node)).tolist()),
        average_std_error=float(_stderr(rep_avgs)),
        replication_averages=tuple(rep_avgs.tolist()),
        events=events,
        final_states=states,
    )


def simulate_set_age(net: GossipNetwork, nodes: Iterable[int],
                     cfg: SimConfig) -> float:
    """Time average of the age of the freshest member of a node set."""
    req = sorted(set(int(v) for v in nodes))
    if not req:
        raise ValueError("need at least one node")
    in_set = np.zeros(net.n, dtype=np.int8)
    for v in req:
        if not (1 <= v <= net.n):
            raise ValueError(f"node {v} outside [1,{net.n}]")
        in_set[v - 1] = 1
    _, set_means, _, _ = _simulate_reps(net, cfg, in_set)
    return float(set_means.mean())
