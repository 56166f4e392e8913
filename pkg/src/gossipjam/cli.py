"""Command-line interface.

Subcommands: solve, simulate, place, sweep-ring, sweep-fc, enumerate,
verify. Tables go to stdout or --out as CSV (fixed column order and
%.10g formatting, so identical runs produce identical bytes) or JSON;
--plot renders a PNG next to the delimited output. Exit codes: 0 on
success, 1 when an invariant or verification check fails, 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analytic import set_age, solve_structured
from .errors import GossipJamError
from .experiments import (
    SweepSpec,
    enumerate_n6,
    fc_trend_summary,
    sweep_fc,
    sweep_ring,
    verify_properties,
)
from .network import (
    GossipNetwork,
    JammerSet,
    apply_jammers,
    build_fully_connected,
    build_ring,
    network_from_dict,
    network_to_dict,
)
from .placement import (
    fc_clusters,
    fc_greedy,
    ring_adjacent,
    ring_equidistant,
    ring_random,
)
from .simulate import SimConfig, simulate, simulate_set_age

SWEEP_COLUMNS = ("n", "n_jammers", "strategy", "age_line", "age_miniring",
                 "age_sim", "sim_stderr", "lower_bound", "upper_bound", "seed")


# ---------------------------------------------------------------------------
# formatting and IO helpers
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return "%.10g" % v
    return str(v)


def _table_text(rows, columns) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(r.get(c)) for c in columns) for r in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _plot_path(out: str | None, default_stem: str) -> str:
    if out:
        return str(Path(out).with_suffix(".png"))
    return f"{default_stem}.png"


def _parse_pairs(spec: str) -> list[tuple[int, int]]:
    pairs = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, b = tok.split("-")
        pairs.append((int(a), int(b)))
    return pairs


def _parse_nodes(spec: str) -> list[int]:
    return [int(tok) for tok in spec.replace(";", ",").split(",") if tok.strip()]


def _scale_fields(rows, fields, ratio: float) -> None:
    if ratio == 1.0:
        return
    for r in rows:
        for f in fields:
            if r.get(f) is not None:
                r[f] = r[f] * ratio


# ---------------------------------------------------------------------------
# network construction from flags
# ---------------------------------------------------------------------------


def _placement(args, n: int) -> JammerSet:
    strat = args.strategy
    if strat in ("adjacent", "equidistant", "random"):
        if args.n_jammers is None:
            raise ValueError(f"strategy {strat!r} needs --n-jammers")
        if strat == "adjacent":
            return ring_adjacent(n, args.n_jammers)
        if strat == "equidistant":
            return ring_equidistant(n, args.n_jammers)
        return ring_random(n, args.n_jammers, args.seed)
    if strat == "greedy":
        if args.n_jammers is None:
            raise ValueError("strategy 'greedy' needs --n-jammers")
        _, jam = fc_greedy(n, args.n_jammers)
        return jam
    if strat == "clusters":
        if args.k_bar is None or args.m_bar is None:
            raise ValueError("strategy 'clusters' needs --k-bar and --m-bar")
        return fc_clusters(n, args.k_bar, args.m_bar)
    raise ValueError(f"unknown strategy {strat!r}")


def _network(args) -> GossipNetwork:
    if args.config:
        doc = json.loads(Path(args.config).read_text())
        net, jam = network_from_dict(doc)
        return apply_jammers(net, jam) if jam.size else net
    if not args.topology or args.n is None:
        raise ValueError("need either --config or --topology with --n")
    if args.topology == "ring":
        net = build_ring(args.n)
    else:
        net = build_fully_connected(args.n, denominator=args.denominator)
    if args.cuts and args.strategy:
        raise ValueError("--cuts and --strategy are mutually exclusive")
    if args.cuts:
        return apply_jammers(net, JammerSet.of(_parse_pairs(args.cuts)))
    if args.strategy:
        return apply_jammers(net, _placement(args, args.n))
    return net


def _add_network_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="network JSON document (with optional cuts)")
    p.add_argument("--topology", choices=("ring", "fc"))
    p.add_argument("--n", type=int, help="number of gossiping nodes")
    p.add_argument("--denominator", choices=("n", "n-1"), default="n",
                   help="per-link rate divisor for fc topologies")
    p.add_argument("--cuts", help="explicit cut pairs, e.g. '1-2,4-5'")
    p.add_argument("--strategy",
                   choices=("adjacent", "equidistant", "random", "greedy",
                            "clusters"))
    p.add_argument("--n-jammers", type=int)
    p.add_argument("--k-bar", type=int, help="cluster size for strategy=clusters")
    p.add_argument("--m-bar", type=int, help="cluster count for strategy=clusters")
    p.add_argument("--seed", type=int, default=0)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--lambda-ratio", type=float, default=1.0,
                   help="rescale output ages by lambda_s/lambda")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    net = _network(args)
    ratio = args.lambda_ratio
    if args.set:
        val = set_age(net, _parse_nodes(args.set), args.component_cap) * ratio
        if args.format == "json":
            _emit(_json_text({"nodes": _parse_nodes(args.set), "age": val}),
                  args.out)
        else:
            _emit("set,age\n%s,%s\n" % (";".join(args.set.split(",")), _fmt(val)),
                  args.out)
        return 0
    rep = solve_structured(net, args.component_cap)
    if args.format == "json":
        doc = rep.to_dict()
        doc["per_node"] = [v * ratio for v in doc["per_node"]]
        doc["total"] *= ratio
        doc["average"] *= ratio
        doc["network"] = network_to_dict(net)
        _emit(_json_text(doc), args.out)
    else:
        rows = [{"node_id": i + 1, "age": v * ratio}
                for i, v in enumerate(rep.per_node)]
        _emit(_table_text(rows, ("node_id", "age")), args.out)
    return 0


def _cmd_simulate(args) -> int:
    net = _network(args)
    cfg = SimConfig(horizon=args.horizon, warmup=args.warmup,
                    seed=args.seed, replications=args.reps)
    ratio = args.lambda_ratio
    if args.set:
        nodes = _parse_nodes(args.set)
        val = simulate_set_age(net, nodes, cfg) * ratio
        if args.format == "json":
            _emit(_json_text({"nodes": nodes, "age": val}), args.out)
        else:
            _emit("set,age\n%s,%s\n" % (";".join(map(str, nodes)), _fmt(val)),
                  args.out)
        return 0
    res = simulate(net, cfg)
    if args.format == "json":
        doc = res.to_dict()
        for key in ("per_node_time_avg", "std_error", "replication_averages"):
            doc[key] = [v * ratio for v in doc[key]]
        doc["average"] *= ratio
        doc["average_std_error"] *= ratio
        _emit(_json_text(doc), args.out)
    else:
        rows = [{"node_id": i, "mean_age": m * ratio, "std_error": s * ratio}
                for i, m, s in res.to_csv_rows()]
        _emit(_table_text(rows, ("node_id", "mean_age", "std_error")), args.out)
    return 0


def _cmd_place(args) -> int:
    if args.strategy is None:
        raise ValueError("place needs --strategy")
    jam = _placement(args, args.n)
    if args.format == "json":
        doc = {"n": args.n, "strategy": args.strategy,
               "n_jammers": jam.size,
               "cuts": [list(p) for p in jam.sorted_pairs()]}
        if args.strategy == "greedy":
            plan, _ = fc_greedy(args.n, args.n_jammers)
            doc["plan"] = {"k": plan.k, "c": plan.c, "steps": plan.steps}
        _emit(_json_text(doc), args.out)
    else:
        rows = [{"i": i, "j": j} for (i, j) in jam.sorted_pairs()]
        _emit(_table_text(rows, ("i", "j")), args.out)
    return 0


def _sweep_spec(args, strategy: str, rule: str = "power") -> SweepSpec:
    n_values = tuple(_parse_nodes(args.n_values)) if args.n_values else None
    return SweepSpec(
        strategy=strategy, alpha=args.alpha, c=args.c, n_values=n_values,
        n_max=args.n_max, engines=frozenset(args.engines.split(",")),
        seed=args.seed, horizon=args.horizon, warmup=args.warmup,
        replications=args.reps, sim_cap=args.sim_cap,
        sim_points=args.sim_points, rule=rule,
    )


_RING_AGE_FIELDS = ("age_line", "age_miniring", "age_sim", "sim_stderr",
                    "lower_bound", "upper_bound")


def _cmd_sweep_ring(args) -> int:
    spec = _sweep_spec(args, args.strategy)
    res = sweep_ring(spec, enforce_bounds=False)
    rows = [dict(r) for r in res.rows]
    _scale_fields(rows, _RING_AGE_FIELDS, args.lambda_ratio)
    if args.format == "json":
        _emit(_json_text({"rows": rows, "skipped": list(res.skipped),
                          "violations": list(res.violations)}), args.out)
    else:
        _emit(_table_text(rows, SWEEP_COLUMNS), args.out)
    for msg in res.skipped:
        print(f"skipped: {msg}", file=sys.stderr)
    if args.plot:
        from .plots import plot_ring_sweep
        plot_ring_sweep(rows, _plot_path(args.out, "sweep_ring"),
                        title=f"{args.strategy} cuts, alpha={args.alpha}")
    if res.violations:
        for msg in res.violations:
            print(f"bound violation: {msg}", file=sys.stderr)
        if not args.skip_bound_check:
            return 1
    return 0


def _cmd_sweep_fc(args) -> int:
    rule = args.rule
    spec = _sweep_spec(args, "greedy", rule=rule)
    res = sweep_fc(spec)
    rows = [dict(r) for r in res.rows]
    _scale_fields(rows, ("age_closed_form", "age_sim", "sim_stderr"),
                  args.lambda_ratio)
    trend = fc_trend_summary(res, rule) if rows else None
    if args.format == "json":
        _emit(_json_text({"rows": rows, "trend": trend,
                          "skipped": list(res.skipped)}), args.out)
    else:
        flat = [dict(r, age_line=r["age_closed_form"]) for r in rows]
        _emit(_table_text(flat, SWEEP_COLUMNS), args.out)
        if trend:
            print(f"trend: {json.dumps(trend)}", file=sys.stderr)
    for msg in res.skipped:
        print(f"skipped: {msg}", file=sys.stderr)
    if args.plot:
        from .plots import plot_fc_sweep
        plot_fc_sweep(rows, _plot_path(args.out, "sweep_fc"),
                      title=f"greedy consolidation, rule={rule}")
    return 0


def _cmd_enumerate(args) -> int:
    res = enumerate_n6()
    rows = [dict(r) for r in res.rows]
    _scale_fields(rows, ("total_age", "average_age"), args.lambda_ratio)
    if args.format == "json":
        doc = {
            "rows": [dict(r, links=[list(p) for p in r["links"]]) for r in rows],
            "greedy_by_budget": [dict(g) for g in res.greedy_by_budget],
            "total_configs": res.total_configs,
        }
        _emit(_json_text(doc), args.out)
    else:
        flat = [dict(r, links=";".join(f"{i}-{j}" for (i, j) in r["links"]))
                for r in rows]
        _emit(_table_text(flat, ("config_id", "links", "total_age",
                                 "average_age")), args.out)
    if args.plot:
        from .plots import plot_enumeration
        plot_enumeration(rows, res.greedy_by_budget,
                         _plot_path(args.out, "enumerate_n6"))
    bad = [g for g in res.greedy_by_budget if not g["is_max"]]
    if bad:
        for g in bad:
            print(f"greedy not maximal in budget group {g['n_links']}",
                  file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    report = verify_properties(args.level)
    if args.format == "json":
        _emit(_json_text(report.to_dict()), args.out)
    else:
        lines = []
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name}: {status} ({c.cases} cases)")
            lines.extend(f"  {f}" for f in c.failures[:10])
        lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gossipjam",
        description="version-age analysis of gossip networks under jamming")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact per-node ages")
    _add_network_flags(p)
    _add_output_flags(p)
    p.add_argument("--set", help="report the age of this node set, e.g. '1,2'")
    p.add_argument("--component-cap", type=int, default=20)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("simulate", help="Monte Carlo age estimates")
    _add_network_flags(p)
    _add_output_flags(p)
    p.add_argument("--set", help="estimate the age of this node set")
    p.add_argument("--horizon", type=float, default=1e5)
    p.add_argument("--warmup", type=float, default=None)
    p.add_argument("--reps", type=int, default=10)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("place", help="generate a jammer configuration")
    _add_network_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_place)

    p = sub.add_parser("sweep-ring", help="ring age vs size under a jammer rule")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=1024)
    p.add_argument("--n-values", help="explicit comma-separated sizes")
    p.add_argument("--strategy", default="equidistant",
                   choices=("adjacent", "equidistant", "random"))
    p.add_argument("--engines",
                   default="analytic_line,analytic_miniring,simulation,bounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--horizon", type=float, default=2e4)
    p.add_argument("--warmup", type=float, default=None)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--sim-cap", type=int, default=None)
    p.add_argument("--sim-points", type=int, default=8)
    p.add_argument("--skip-bound-check", action="store_true",
                   help="report bound violations without failing")
    p.add_argument("--plot", action="store_true")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sweep_ring)

    p = sub.add_parser("sweep-fc", help="consolidated-clique age vs size")
    p.add_argument("--rule", choices=("nlogn", "power"), default="nlogn")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=30000)
    p.add_argument("--n-values", help="explicit comma-separated sizes")
    p.add_argument("--engines",
                   default="analytic_line,analytic_miniring,simulation,bounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--horizon", type=float, default=2e4)
    p.add_argument("--warmup", type=float, default=None)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--sim-cap", type=int, default=None)
    p.add_argument("--sim-points", type=int, default=8)
    p.add_argument("--plot", action="store_true")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sweep_fc)

    p = sub.add_parser("enumerate", help="score all 6-node configurations")
    p.add_argument("--plot", action="store_true")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (GossipJamError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
