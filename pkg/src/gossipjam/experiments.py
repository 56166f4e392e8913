"""Desk-scale experiment harness: sweeps, enumeration, property suites.

Ring sweeps trace average age against network size while the jammer
budget grows as floor(c * n^alpha); complete-graph sweeps do the same for
the consolidation strategy under a budget rule, keeping only the sizes
where the plan has no leftover links. Enumeration scores every kept-link
configuration of the 6-node complete graph. verify_properties re-runs the
numeric invariants behind all of it and reports per-property case counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

import numpy as np

from .analytic import (
    AgeReport,
    _component_dp,
    clique_node_age,
    clique_system_total,
    cycle_component_ages,
    cycle_node_age,
    harmonic,
    hub_reduction_coefficient,
    jammed_ring_ages,
    path_component_ages,
    path_end_age,
    product_decay_bounds,
    reduction_table,
    ring_scaling_bounds,
    solve_subset_dp,
    star_hub_age,
    uniform_path_ages,
)
from .errors import SweepBoundsError
from .network import GossipNetwork, JammerSet, apply_jammers, build_fully_connected, build_ring
from .placement import (
    all_pairs,
    enumerate_configs,
    fc_greedy,
    greedy_kept_links,
    greedy_shape,
    ring_adjacent,
    ring_equidistant,
    ring_pair_count,
    ring_random,
)
from .simulate import SimConfig, simulate

RING_STRATEGIES = ("adjacent", "equidistant", "random")
ENGINES = ("analytic_line", "analytic_miniring", "simulation", "bounds")
_STRATEGY_CODE = {"adjacent": 1, "equidistant": 2, "random": 3, "greedy": 4}


# ---------------------------------------------------------------------------
# sweep specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep and which engines to run at each grid point."""

    strategy: str
    alpha: float | None = None
    c: float = 1.0
    n_values: tuple[int, ...] | None = None
    n_max: int = 1024
    engines: frozenset[str] = frozenset(ENGINES)
    seed: int = 0
    horizon: float = 2e4
    warmup: float | None = None
    replications: int = 10
    sim_cap: int | None = None  # defaults: 512 for rings, 256 for greedy FC
    sim_points: int = 8
    rule: str = "power"  # greedy FC budget rule: "power" or "nlogn"
    lam: float = 1.0
    lam_s: float = 1.0

    def __post_init__(self):
        if self.alpha is not None and not (0.0 <= self.alpha <= 2.0):
            raise ValueError(f"alpha must lie in [0,2], got {self.alpha}")
        if self.c <= 0:
            raise ValueError("c must be positive")
        bad = set(self.engines) - set(ENGINES)
        if bad:
            raise ValueError(f"unknown engines: {sorted(bad)}")
        if self.n_values is not None:
            vals = tuple(int(v) for v in self.n_values)
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValueError("n_values must be strictly increasing")
            object.__setattr__(self, "n_values", vals)
        if self.rule not in ("power", "nlogn"):
            raise ValueError(f"rule must be 'power' or 'nlogn', got {self.rule!r}")
        if self.replications < 1:
            raise ValueError("need at least one replication")


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[dict, ...]
    skipped: tuple[str, ...]
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def ring_grid(alpha: float, c: float, n_max: int) -> list[int]:
    """Network sizes hit by inverting the jammer rule: n = ceil((nt/c)^(1/alpha)).

    Walking nt = 1, 2, ... keeps the jammer count advancing one step per
    grid point. alpha = 0 fixes the budget, so callers must list n values
    explicitly there.
    """
    if alpha <= 0.0:
        raise ValueError("grid rule needs alpha > 0; pass explicit n_values")
    ns: list[int] = []
    nt = 1
    while True:
        n = math.ceil((nt / c) ** (1.0 / alpha))
        if n > n_max:
            break
        if not ns or n > ns[-1]:
            ns.append(n)
        nt += 1
    return ns


def _row_seed(spec: SweepSpec, n: int) -> int:
    code = _STRATEGY_CODE[spec.strategy]
    return int(np.random.SeedSequence([spec.seed, n, code]).generate_state(1)[0])


def _sim_rows(eligible: list[int], limit: int) -> set[int]:
    if len(eligible) <= limit:
        return set(eligible)
    picks = np.linspace(0, len(eligible) - 1, limit).round().astype(int)
    return {eligible[i] for i in np.unique(picks)}


# ---------------------------------------------------------------------------
# ring sweep
# ---------------------------------------------------------------------------


def sweep_ring(spec: SweepSpec, enforce_bounds: bool = True) -> SweepResult:
    """One row per network size: exact line ages, mini-ring surrogate,
    envelope bounds, and (below the cap) simulation.

    Every row is checked for lower <= miniring <= line <= 2*miniring and
    line <= upper. With enforce_bounds the collected violations raise a
    SweepBoundsError carrying the finished result in .result.
    """
    if spec.strategy not in RING_STRATEGIES:
        raise ValueError(f"ring strategies are {RING_STRATEGIES}, got {spec.strategy!r}")
    if spec.alpha is None:
        raise ValueError("ring sweeps need alpha (jammer rule exponent)")
    ns = list(spec.n_values) if spec.n_values is not None else ring_grid(
        spec.alpha, spec.c, spec.n_max)
    sim_cap = 512 if spec.sim_cap is None else spec.sim_cap
    tol = 1e-9

    rows: list[dict] = []
    jams: list[JammerSet] = []
    skipped: list[str] = []
    violations: list[str] = []
    for n in ns:
        nt = int(math.floor(spec.c * n ** spec.alpha + 1e-9))
        if n < 2:
            skipped.append(f"n={n}: ring needs at least 2 nodes")
            continue
        if nt < 1 or nt > ring_pair_count(n):
            skipped.append(f"n={n}: jammer count {nt} infeasible "
                           f"(1..{ring_pair_count(n)})")
            continue
        seed = _row_seed(spec, n)
        if spec.strategy == "adjacent":
            jam = ring_adjacent(n, nt)
        elif spec.strategy == "equidistant":
            jam = ring_equidistant(n, nt)
        else:
            jam = ring_random(n, nt, seed)
        row = {
            "n": n, "n_jammers": nt, "strategy": spec.strategy,
            "age_line": None, "age_miniring": None,
            "age_sim": None, "sim_stderr": None,
            "lower_bound": None, "upper_bound": None, "seed": seed,
        }
        if "analytic_line" in spec.engines:
            row["age_line"] = jammed_ring_ages(
                n, jam, spec.lam, spec.lam_s, model="line").average
        if "analytic_miniring" in spec.engines:
            row["age_miniring"] = jammed_ring_ages(
                n, jam, spec.lam, spec.lam_s, model="miniring").average
        if "bounds" in spec.engines:
            row["lower_bound"], row["upper_bound"] = ring_scaling_bounds(
                n, spec.alpha, spec.c, spec.lam, spec.lam_s)
        _check_row(row, tol, violations)
        rows.append(row)
        jams.append(jam)

    if "simulation" in spec.engines:
        eligible = [i for i, r in enumerate(rows) if r["n"] <= sim_cap]
        chosen = _sim_rows(eligible, spec.sim_points)
        for i in sorted(chosen):
            row = rows[i]
            n = row["n"]
            warmup = spec.warmup if spec.warmup is not None else max(
                0.05 * spec.horizon, 6.0 * n)
            if warmup >= 0.5 * spec.horizon:
                skipped.append(f"n={n}: horizon {spec.horizon} too short for "
                              f"warmup {warmup}, simulation skipped")
                continue
            net = apply_jammers(build_ring(n, spec.lam, spec.lam_s), jams[i])
            res = simulate(net, SimConfig(spec.horizon, warmup, row["seed"],
                                          spec.replications))
            row["age_sim"] = res.average
            row["sim_stderr"] = res.average_std_error

    result = SweepResult(tuple(rows), tuple(skipped), tuple(violations))
    if enforce_bounds and violations:
        err = SweepBoundsError(violations)
        err.result = result
        raise err
    return result


def _check_row(row: dict, tol: float, violations: list[str]) -> None:
    n = row["n"]
    lo, up = row["lower_bound"], row["upper_bound"]
    line, mini = row["age_line"], row["age_miniring"]
    if mini is not None and lo is not None and mini < lo - tol * max(1.0, lo):
        violations.append(f"n={n}: miniring {mini:.6g} below lower bound {lo:.6g}")
    if mini is not None and line is not None:
        if line < mini - tol * max(1.0, mini):
            violations.append(f"n={n}: line {line:.6g} below miniring {mini:.6g}")
        if line > 2.0 * mini + tol * max(1.0, mini):
            violations.append(f"n={n}: line {line:.6g} above twice miniring "
                              f"{2 * mini:.6g}")
    if line is not None and up is not None and line > up + tol * max(1.0, up):
        violations.append(f"n={n}: line {line:.6g} above upper bound {up:.6g}")


# ---------------------------------------------------------------------------
# complete-graph sweep
# ---------------------------------------------------------------------------


def sweep_fc(spec: SweepSpec) -> SweepResult:
    """Average age of the consolidated survivor clique as n grows.

    The budget follows floor(n*log n) (rule="nlogn") or floor(c*n^alpha)
    with alpha in (1,2] (rule="power"). Only sizes whose plan has no
    leftover links are emitted, so each row is the pure clique-plus-
    isolated shape with the closed-form average H_k/1 + (n - k), scaled
    by lam_s/lam.
    """
    if spec.strategy != "greedy":
        raise ValueError(f"complete-graph sweeps use strategy 'greedy', "
                         f"got {spec.strategy!r}")
    if spec.rule == "power":
        if spec.alpha is None or not (1.0 < spec.alpha <= 2.0):
            raise ValueError("power rule needs alpha in (1,2]")
    ns = list(spec.n_values) if spec.n_values is not None else list(
        range(2, spec.n_max + 1))
    sim_cap = 256 if spec.sim_cap is None else spec.sim_cap
    scale = spec.lam_s / spec.lam

    rows: list[dict] = []
    skipped: list[str] = []
    for n in ns:
        if n < 2:
            skipped.append(f"n={n}: complete graph needs at least 2 nodes")
            continue
        if spec.rule == "nlogn":
            nt = int(math.floor(n * math.log(n)))
        else:
            nt = int(math.floor(spec.c * n ** spec.alpha + 1e-9))
        if nt < 0 or nt > math.comb(n, 2):
            skipped.append(f"n={n}: jammer count {nt} exceeds C(n,2)={math.comb(n, 2)}")
            continue
        plan = greedy_shape(n, nt)
        if plan.c != 0:
            continue  # the sweep keeps only leftover-free plans
        age = scale * (harmonic(plan.k) + (n - plan.k))
        rows.append({
            "n": n, "n_jammers": nt, "strategy": "greedy", "k": plan.k,
            "age_closed_form": age, "age_sim": None, "sim_stderr": None,
            "seed": _row_seed(spec, n),
        })

    if "simulation" in spec.engines:
        eligible = [i for i, r in enumerate(rows) if r["n"] <= sim_cap]
        chosen = _sim_rows(eligible, spec.sim_points)
        for i in sorted(chosen):
            row = rows[i]
            n = row["n"]
            warmup = spec.warmup if spec.warmup is not None else max(
                0.05 * spec.horizon, 6.0 * n)
            if warmup >= 0.5 * spec.horizon:
                skipped.append(f"n={n}: horizon {spec.horizon} too short for "
                              f"warmup {warmup}, simulation skipped")
                continue
            _, jam = fc_greedy(n, row["n_jammers"])
            net = apply_jammers(
                build_fully_connected(n, spec.lam, spec.lam_s), jam)
            res = simulate(net, SimConfig(spec.horizon, warmup, row["seed"],
                                          spec.replications))
            row["age_sim"] = res.average
            row["sim_stderr"] = res.average_std_error

    return SweepResult(tuple(rows), tuple(skipped), ())


def fc_trend_summary(result: SweepResult, rule: str) -> dict:
    """Trend statistics over the largest decade of a greedy FC sweep.

    nlogn rule: min/max of average age / log n. power rule: least-squares
    slope of log(average age) against log(n).
    """
    rows = [r for r in result.rows if r["age_closed_form"] is not None]
    if not rows:
        raise ValueError("sweep produced no rows")
    n_hi = max(r["n"] for r in rows)
    decade = [r for r in rows if r["n"] > n_hi / 10]
    out = {"rule": rule, "rows": len(rows), "decade_rows": len(decade)}
    if rule == "nlogn":
        ratios = [r["age_closed_form"] / math.log(r["n"]) for r in decade]
        out["ratio_min"] = min(ratios)
        out["ratio_max"] = max(ratios)
    elif rule == "power":
        xs = np.log([r["n"] for r in decade])
        ys = np.log([r["age_closed_form"] for r in decade])
        out["slope"] = float(np.polyfit(xs, ys, 1)[0])
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return out


# ---------------------------------------------------------------------------
# exhaustive 6-node enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationResult:
    rows: tuple[dict, ...]
    greedy_by_budget: tuple[dict, ...]

    @property
    def total_configs(self) -> int:
        return len(self.rows)


def _score_config(n: int, kept, rate: float, src: np.ndarray, lam_s: float):
    # whole-graph subset solve: the recursion closes over any set with no
    # external neighbors, so disconnected graphs need no decomposition
    R = np.zeros((n, n))
    for (i, j) in kept:
        R[i - 1, j - 1] = rate
        R[j - 1, i - 1] = rate
    delta = _component_dp(R, src, lam_s)
    per_node = [float(delta[1 << t]) for t in range(n)]
    total = math.fsum(per_node)
    return per_node, total


def enumerate_n6(lam: float = 1.0, lam_s: float = 1.0) -> EnumerationResult:
    """Score every kept-link configuration of the 6-node complete graph
    whose budget matches a clique link count C(k,2), k = 1..6.

    Emits one row per configuration plus, per budget, the consolidation
    value and whether it attains the group maximum.
    """
    n = 6
    rate = lam / n
    src = np.full(n, lam / n)
    rows: list[dict] = []
    greedy_rows: list[dict] = []
    config_id = 0
    for k in range(1, n + 1):
        n_bar = math.comb(k, 2)
        n_tilde = math.comb(n, 2) - n_bar
        group_max = -math.inf
        for kept in enumerate_configs(n, n_bar):
            _, total = _score_config(n, kept, rate, src, lam_s)
            avg = total / n
            rows.append({
                "config_id": config_id, "n_links": n_bar, "links": kept,
                "total_age": total, "average_age": avg,
            })
            group_max = max(group_max, avg)
            config_id += 1
        plan, kept_g = greedy_kept_links(n, n_tilde)
        _, total_g = _score_config(n, sorted(kept_g), rate, src, lam_s)
        avg_g = total_g / n
        greedy_rows.append({
            "n_links": n_bar, "k": plan.k, "average_age": avg_g,
            "group_max": group_max,
            "is_max": avg_g >= group_max - 1e-9,
        })
    return EnumerationResult(tuple(rows), tuple(greedy_rows))


# ---------------------------------------------------------------------------
# shared random-network generator
# ---------------------------------------------------------------------------


def random_connected_network(n: int, rng: np.random.Generator,
                             extra_edge_prob: float = 0.3) -> GossipNetwork:
    """Random connected topology with independent per-direction rates."""
    perm = [int(v) for v in rng.permutation(n) + 1]
    edges: set[tuple[int, int]] = set()
    for t in range(1, n):
        a, b = perm[int(rng.integers(0, t))], perm[t]
        edges.add((min(a, b), max(a, b)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in edges and rng.random() < extra_edge_prob:
                edges.add((i, j))
    links: dict[tuple[int, int], float] = {}
    for (i, j) in sorted(edges):
        links[(i, j)] = float(rng.uniform(0.05, 0.25))
        links[(j, i)] = float(rng.uniform(0.05, 0.25))
    src = tuple(float(v) for v in rng.uniform(0.08, 0.25, n))
    return GossipNetwork(n, 1.0, src, links)


# ---------------------------------------------------------------------------
# property verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    cases: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class VerificationReport:
    level: str
    checks: tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "cases": c.cases, "passed": c.passed,
                 "failures": list(c.failures)}
                for c in self.checks
            ],
        }


def _chk(name: str):
    def deco(fn):
        fn.check_name = name
        return fn
    return deco


@_chk("path_profile")
def _chk_path_profile(level: str) -> PropertyCheck:
    # ages along a uniform path fall toward the center and mirror around it
    fails, cases = [], 0
    top = 50 if level == "full" else 20
    for n0 in range(2, top + 1):
        for n in (n0, 2 * n0, 10 * n0):
            ages = uniform_path_ages(n0, n)
            cases += 1
            for i in range(n0 // 2):
                if ages[i] < ages[n0 - 1 - i] - 1e-9 or \
                   ages[i] > ages[n0 - 1 - i] + 1e-9:
                    fails.append(f"n0={n0} n={n}: asymmetric at {i}")
                    break
                if ages[i] < ages[i + 1] - 1e-9:
                    fails.append(f"n0={n0} n={n}: rises toward center at {i}")
                    break
    return PropertyCheck("path_profile", cases, tuple(fails))


@_chk("line_ring_sandwich")
def _chk_sandwich(level: str) -> PropertyCheck:
    # closed segment value <= every open-path age <= twice the closed value
    fails, cases = [], 0
    top = 200 if level == "full" else 60
    for n0 in range(2, top + 1, 3):
        for n in (n0, 2 * n0):
            ring = cycle_node_age(n0, n)
            ages = uniform_path_ages(n0, n)
            cases += 1
            if np.any(ages < ring - 1e-9) or np.any(ages > 2 * ring + 1e-9):
                fails.append(f"n0={n0} n={n}: sandwich broken")
    return PropertyCheck("line_ring_sandwich", cases, tuple(fails))


@_chk("ring_total_gap")
def _chk_ring_total_gap(level: str) -> PropertyCheck:
    # (n0+1)*age(n0+1) - n0*age(n0) equals the decay-product prefix sum
    fails, cases = [], 0
    n = 127
    top = 100 if level == "full" else 40
    for n0 in range(1, top + 1):
        lhs = (n0 + 1) * cycle_node_age(n0 + 1, n) - n0 * cycle_node_age(n0, n)
        cp = np.cumprod(n / (n + np.arange(1, n0 + 1, dtype=float)))
        rhs = float(cp.sum())
        cases += 1
        if abs(lhs - rhs) > 1e-10 * max(1.0, abs(rhs)):
            fails.append(f"n0={n0}: gap {lhs} != prefix sum {rhs}")
    return PropertyCheck("ring_total_gap", cases, tuple(fails))


@_chk("segment_split_monotone")
def _chk_segment_split(level: str) -> PropertyCheck:
    # moving a second cut toward the first never lowers the total
    # (mini-ring totals over split sizes m and n0-m, m up to n0/2)
    fails, cases = [], 0
    top = 60 if level == "full" else 30
    for n0 in range(4, top + 1):
        totals = [m * cycle_node_age(m, n0) + (n0 - m) * cycle_node_age(n0 - m, n0)
                  for m in range(1, n0 // 2 + 1)]
        cases += 1
        if any(b > a + 1e-9 for a, b in zip(totals, totals[1:])):
            fails.append(f"n0={n0}: split totals not non-increasing")
    return PropertyCheck("segment_split_monotone", cases, tuple(fails))


@_chk("link_addition")
def _chk_link_addition(level: str) -> PropertyCheck:
    # adding a link never increases any node's exact age
    fails, cases = [], 0
    rng = np.random.default_rng(7)
    graphs = 50 if level == "full" else 20
    max_n = 10 if level == "full" else 8
    for _ in range(graphs):
        n = int(rng.integers(3, max_n + 1))
        net = random_connected_network(n, rng)
        base = solve_subset_dp(net).per_node
        absent = [p for p in all_pairs(n) if p not in net.undirected_pairs()]
        rng.shuffle(absent)
        for (i, j) in absent[:3]:
            links = dict(net.link_rates)
            links[(i, j)] = float(rng.uniform(0.05, 0.25))
            links[(j, i)] = float(rng.uniform(0.05, 0.25))
            grown = GossipNetwork(n, net.lambda_s, net.source_rates, links)
            new = solve_subset_dp(grown).per_node
            cases += 1
            if any(b > a + 1e-9 for a, b in zip(base, new)):
                fails.append(f"n={n} +({i},{j}): an age increased")
    return PropertyCheck("link_addition", cases, tuple(fails))


# frozen reference coefficients for the hub age-reduction table, d = 1..22
_REDUCTION_REF = (0.25, 0.37, 0.44, 0.49, 0.53, 0.56, 0.59, 0.61, 0.63, 0.64,
                  0.66, 0.67, 0.68, 0.69, 0.70, 0.71, 0.72, 0.72, 0.73, 0.74,
                  0.74, 0.75)

# reference hub-degree groupings and their floored coefficient sums
_REDUCTION_GROUPS_7 = (((5, 1, 1), 1.03), ((4, 2, 1), 1.11),
                       ((3, 3, 1), 1.13), ((3, 2, 2), 1.18))
_REDUCTION_GROUPS_23 = (((22, 1), 1.00), ((21, 2), 1.11), ((20, 3), 1.18),
                        ((19, 4), 1.22), ((18, 5), 1.25), ((17, 6), 1.28),
                        ((16, 7), 1.30), ((15, 8), 1.31), ((14, 9), 1.32),
                        ((13, 10), 1.32), ((12, 11), 1.33))


@_chk("reduction_table_values")
def _chk_reduction_table(level: str) -> PropertyCheck:
    fails, cases = [], 0
    got = reduction_table(22)
    for d, (g, want) in enumerate(zip(got, _REDUCTION_REF), start=1):
        cases += 1
        if abs(g - want) > 1e-12:
            fails.append(f"d={d}: coefficient {g} != {want}")
    for d in range(1, 22):
        cases += 1
        if not hub_reduction_coefficient(d) < hub_reduction_coefficient(d + 1):
            fails.append(f"d={d}: coefficients not increasing")
    return PropertyCheck("reduction_table_values", cases, tuple(fails))


@_chk("reduction_group_sums")
def _chk_reduction_sums(level: str) -> PropertyCheck:
    fails, cases = [], 0
    table = {d + 1: v for d, v in enumerate(reduction_table(22))}
    for k, groups in ((7, _REDUCTION_GROUPS_7), (23, _REDUCTION_GROUPS_23)):
        floor_bound = k / (k + 1)
        for degrees, want in groups:
            cases += 1
            if sum(degrees) != k:
                fails.append(f"k={k} {degrees}: degrees do not sum to k")
                continue
            got = math.fsum(table[d] for d in degrees)
            if abs(got - want) > 5e-3:
                fails.append(f"k={k} {degrees}: sum {got:.4f} != {want}")
            if not got > floor_bound:
                fails.append(f"k={k} {degrees}: sum {got:.4f} not above "
                             f"{floor_bound:.4f}")
    return PropertyCheck("reduction_group_sums", cases, tuple(fails))


@_chk("product_envelope")
def _chk_product_envelope(level: str) -> PropertyCheck:
    fails, cases = [], 0
    ns = (10, 100, 1000, 10000) if level == "full" else (10, 100, 1000)
    for n in ns:
        for j in range(0, n + 1, max(1, n // 100)):
            lo, exact, up = product_decay_bounds(j, n)
            cases += 1
            if not (lo <= exact + 1e-12 and exact <= up + 1e-12):
                fails.append(f"j={j} n={n}: envelope broken")
    return PropertyCheck("product_envelope", cases, tuple(fails))


@_chk("placement_ordering")
def _chk_placement_ordering(level: str) -> PropertyCheck:
    # bunched cuts hurt most, spread cuts least, random in between
    # (mini-ring model averages)
    fails, cases = [], 0
    ns = (12, 30, 64, 101) if level == "full" else (12, 30, 64)
    for n in ns:
        for nt in (2, 3, 5, min(8, n // 2)):
            adj = jammed_ring_ages(n, ring_adjacent(n, nt), model="miniring").average
            equ = jammed_ring_ages(n, ring_equidistant(n, nt), model="miniring").average
            for seed in (0, 1, 2):
                rnd = jammed_ring_ages(n, ring_random(n, nt, seed),
                                       model="miniring").average
                cases += 1
                if not (adj + 1e-9 >= rnd >= equ - 1e-9):
                    fails.append(f"n={n} nt={nt} seed={seed}: ordering broken")
    return PropertyCheck("placement_ordering", cases, tuple(fails))


@_chk("consolidation_dominance")
def _chk_consolidation(level: str) -> PropertyCheck:
    # one clique on the whole budget beats any split into equal cliques
    fails, cases = [], 0
    ns = (50, 200, 1000) if level == "full" else (50,)
    for n in ns:
        for k in range(3, 46):
            budget = math.comb(k, 2)
            for k_bar in range(2, k):
                small = math.comb(k_bar, 2)
                if budget % small:
                    continue
                m_bar = budget // small
                if m_bar < 2 or m_bar * k_bar > n or k > n:
                    continue
                single = clique_system_total(k, n)
                clustered = m_bar * n * harmonic(k_bar) + n * (n - m_bar * k_bar)
                cases += 1
                if single < clustered - 1e-9:
                    fails.append(f"n={n} k={k} k_bar={k_bar} m_bar={m_bar}: "
                                 f"cluster total exceeds single clique")
    return PropertyCheck("consolidation_dominance", cases, tuple(fails))


@_chk("single_cut_invariance")
def _chk_single_cut(level: str) -> PropertyCheck:
    fails, cases = [], 0
    for n in (6, 12, 25):
        base = sorted(jammed_ring_ages(n, [(1, 2)]).per_node)
        for cut in ((3, 4), (1, n)):
            cases += 1
            moved = sorted(jammed_ring_ages(n, [cut]).per_node)
            if any(abs(a - b) > 1e-10 for a, b in zip(base, moved)):
                fails.append(f"n={n} cut={cut}: ages depend on cut position")
        # end of the opened ring matches the path-end closed form
        cases += 1
        end = jammed_ring_ages(n, [(1, n)]).per_node[0]
        if abs(end - path_end_age(n, n)) > 1e-10 * max(1.0, end):
            fails.append(f"n={n}: open-end value differs from closed form")
    return PropertyCheck("single_cut_invariance", cases, tuple(fails))


@_chk("engine_agreement")
def _chk_engines(level: str) -> PropertyCheck:
    # subset engine vs interval/arc engines vs closed forms
    fails, cases = [], 0
    rng = np.random.default_rng(11)

    def close(a, b, what):
        nonlocal cases
        cases += 1
        if abs(a - b) > 1e-10 * max(1.0, abs(a), abs(b)):
            fails.append(f"{what}: {a} != {b}")

    for n in range(2, 13):
        rep = solve_subset_dp(build_ring(n))
        want = cycle_node_age(n, n)
        for v, age in enumerate(rep.per_node, start=1):
            close(age, want, f"ring n={n} node {v}")
    for n, cuts in ((6, [(1, 2)]), (9, [(1, 2), (4, 5)]),
                    (12, [(2, 3), (5, 6), (9, 10)])):
        net = apply_jammers(build_ring(n), JammerSet.of(cuts))
        dp = solve_subset_dp(net).per_node
        line = jammed_ring_ages(n, cuts, model="line").per_node
        for v in range(n):
            close(dp[v], line[v], f"jammed ring n={n} node {v + 1}")
    for d in range(1, 7):
        n = 10
        links = {}
        for leaf in range(2, d + 2):
            links[(1, leaf)] = 1.0 / n
            links[(leaf, 1)] = 1.0 / n
        star = GossipNetwork(n, 1.0, tuple([1.0 / n] * n), links)
        close(solve_subset_dp(star).per_node[0], star_hub_age(d, n),
              f"star hub d={d}")
    for k in range(2, 8):
        n = 10
        links = {(i, j): 1.0 / n
                 for i in range(1, k + 1) for j in range(1, k + 1) if i != j}
        net = GossipNetwork(n, 1.0, tuple([1.0 / n] * n), links)
        close(solve_subset_dp(net).per_node[0], clique_node_age(k, n),
              f"clique k={k}")
    for n0 in (2, 7, 23, 40):
        n = 2 * n0 + 1
        close(uniform_path_ages(n0, n)[0], path_end_age(n0, n),
              f"path end n0={n0}")
    # arbitrary-rate engines against the subset engine
    for trial in range(3):
        m = 9
        links = {}
        for p in range(1, m):
            links[(p, p + 1)] = float(rng.uniform(0.1, 0.6))
            links[(p + 1, p)] = float(rng.uniform(0.1, 0.6))
        src = tuple(float(v) for v in rng.uniform(0.05, 0.3, m))
        path_net = GossipNetwork(m, 1.0, src, links)
        dp = solve_subset_dp(path_net).per_node
        eng = path_component_ages(path_net, range(1, m + 1))
        for v in range(1, m + 1):
            close(dp[v - 1], eng[v], f"path engine trial {trial} node {v}")
        links = dict(links)
        links[(m, 1)] = float(rng.uniform(0.1, 0.6))
        links[(1, m)] = float(rng.uniform(0.1, 0.6))
        cyc_net = GossipNetwork(m, 1.0, src, links)
        dp = solve_subset_dp(cyc_net).per_node
        eng = cycle_component_ages(cyc_net, range(1, m + 1))
        for v in range(1, m + 1):
            close(dp[v - 1], eng[v], f"cycle engine trial {trial} node {v}")
    return PropertyCheck("engine_agreement", cases, tuple(fails))


@_chk("greedy_step_dominance")
def _chk_greedy_steps(level: str) -> PropertyCheck:
    # among all ways to add k links to a k-clique plus isolated nodes,
    # fanning them out of one fresh node maximizes the total age
    from itertools import combinations

    fails, cases = [], 0
    for n in (5, 6, 7):
        src = np.full(n, 1.0 / n)
        for k in range(2, min(4, n - 1) + 1):
            clique = {(i, j) for i in range(1, k + 1)
                      for j in range(i + 1, k + 1)}
            absent = [p for p in all_pairs(n) if p not in clique]
            best = -math.inf
            totals = {}
            for extra in combinations(absent, k):
                kept = clique | set(extra)
                _, total = _score_config(n, kept, 1.0 / n, src, 1.0)
                totals[extra] = total
                best = max(best, total)
            family = set()
            for v in range(k + 1, n + 1):
                family.add(tuple(sorted((min(u, v), max(u, v))
                                        for u in range(1, k + 1))))
            cases += 1
            winners = {e for e, t in totals.items() if t >= best - 1e-9}
            if not winners <= family or not winners & family:
                fails.append(f"n={n} k={k}: maximizers are not exactly the "
                             f"single-node attachments")
    return PropertyCheck("greedy_step_dominance", cases, tuple(fails))


@_chk("simulation_agreement")
def _chk_sim_agreement(level: str) -> PropertyCheck:
    fails, cases = [], 0
    rng = np.random.default_rng(23)
    nets = [
        ("fc2", build_fully_connected(2)),
        ("ring6", build_ring(6)),
        ("random5", random_connected_network(5, rng)),
    ]
    for name, net in nets:
        want = solve_subset_dp(net).average
        res = simulate(net, SimConfig(horizon=5e4, seed=1234, replications=10))
        cases += 1
        slack = 3.0 * res.average_std_error + 1e-6 * want
        if abs(res.average - want) > slack:
            fails.append(f"{name}: sim {res.average:.5f} vs exact {want:.5f} "
                         f"(allowed {slack:.5f})")
    return PropertyCheck("simulation_agreement", cases, tuple(fails))


_FAST_CHECKS: tuple[Callable[[str], PropertyCheck], ...] = (
    _chk_path_profile, _chk_sandwich, _chk_ring_total_gap, _chk_segment_split,
    _chk_link_addition, _chk_reduction_table, _chk_reduction_sums,
    _chk_product_envelope, _chk_placement_ordering, _chk_consolidation,
    _chk_single_cut, _chk_engines,
)
_FULL_CHECKS = _FAST_CHECKS + (_chk_greedy_steps, _chk_sim_agreement)


def verify_properties(level: str = "fast") -> VerificationReport:
    """Run the numeric invariant suite; full adds the exhaustive and
    simulation-backed checks."""
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    fns = _FULL_CHECKS if level == "full" else _FAST_CHECKS
    return VerificationReport(level, tuple(fn(level) for fn in fns))
