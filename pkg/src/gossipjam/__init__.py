"""Version age of gossip networks under link jamming.

The package models a source that timestamps updates and pushes them into
a network of gossiping nodes, some of whose links an adversary has cut.
It provides exact stationary age solvers (subset recursion plus fast
line/ring/star/clique engines), closed-form expressions and scaling
bounds, jammer placement strategies, an event-driven simulator, and
sweep/enumeration experiment drivers with a CLI front end.
"""

from .analytic import (
    AgeReport,
    clique_node_age,
    clique_system_total,
    cycle_component_ages,
    cycle_node_age,
    harmonic,
    hub_age_reduction,
    hub_reduction_coefficient,
    jammed_ring_ages,
    path_component_ages,
    path_end_age,
    product_decay_bounds,
    reduction_table,
    ring_scaling_bounds,
    set_age,
    solve_structured,
    solve_subset_dp,
    star_hub_age,
    uniform_path_ages,
)
from .errors import (
    ComponentTooLargeError,
    DegenerateNetworkError,
    GossipJamError,
    InvalidTopologyError,
    PlacementError,
    SimulationError,
    SweepBoundsError,
    WastedJammerWarning,
)
from .experiments import (
    EnumerationResult,
    SweepResult,
    SweepSpec,
    VerificationReport,
    enumerate_n6,
    fc_trend_summary,
    ring_grid,
    sweep_fc,
    sweep_ring,
    verify_properties,
)
from .network import (
    Component,
    Decomposition,
    GossipNetwork,
    JammerSet,
    apply_jammers,
    build_fully_connected,
    build_ring,
    decompose,
    network_from_dict,
    network_to_dict,
)
from .placement import (
    ClusterPlan,
    GreedyPlan,
    all_pairs,
    enumerate_configs,
    fc_clusters,
    fc_greedy,
    greedy_shape,
    kept_to_jammers,
    ring_adjacent,
    ring_equidistant,
    ring_pair_count,
    ring_random,
)
from .simulate import SimConfig, SimResult, simulate, simulate_set_age

__version__ = "0.1.0"

__all__ = [
    "AgeReport",
    "ClusterPlan",
    "Component",
    "ComponentTooLargeError",
    "Decomposition",
    "DegenerateNetworkError",
    "EnumerationResult",
    "GossipJamError",
    "GossipNetwork",
    "GreedyPlan",
    "InvalidTopologyError",
    "JammerSet",
    "PlacementError",
    "SimConfig",
    "SimResult",
    "SimulationError",
    "SweepBoundsError",
    "SweepResult",
    "SweepSpec",
    "VerificationReport",
    "WastedJammerWarning",
    "all_pairs",
    "apply_jammers",
    "build_fully_connected",
    "build_ring",
    "clique_node_age",
    "clique_system_total",
    "cycle_component_ages",
    "cycle_node_age",
    "decompose",
    "enumerate_configs",
    "enumerate_n6",
    "fc_clusters",
    "fc_greedy",
    "fc_trend_summary",
    "greedy_shape",
    "harmonic",
    "hub_age_reduction",
    "hub_reduction_coefficient",
    "jammed_ring_ages",
    "kept_to_jammers",
    "network_from_dict",
    "network_to_dict",
    "path_component_ages",
    "path_end_age",
    "product_decay_bounds",
    "reduction_table",
    "ring_adjacent",
    "ring_equidistant",
    "ring_grid",
    "ring_pair_count",
    "ring_random",
    "ring_scaling_bounds",
    "set_age",
    "simulate",
    "simulate_set_age",
    "solve_structured",
    "solve_subset_dp",
    "star_hub_age",
    "sweep_fc",
    "sweep_ring",
    "uniform_path_ages",
    "verify_properties",
]
