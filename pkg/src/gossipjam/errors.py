"""Exception hierarchy shared across the package."""


class GossipJamError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTopologyError(GossipJamError):
    """A network (or requested shape) does not satisfy structural preconditions."""


class PlacementError(GossipJamError):
    """A jammer placement request is infeasible for the given network."""


class ComponentTooLargeError(GossipJamError):
    """A connected component exceeds the exact-solver state budget."""


class DegenerateNetworkError(GossipJamError):
    """Rates make the requested quantity undefined (e.g. no source inflow)."""


class SimulationError(GossipJamError):
    """Invalid simulation configuration or a broken runtime invariant."""


class SweepBoundsError(GossipJamError):
    """One or more sweep rows violated an in-row bound assertion."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        head = "; ".join(self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"{len(self.violations)} sweep row(s) violated bounds: {head}{more}")


class WastedJammerWarning(UserWarning):
    """A cut pair does not match any live link; the jammer is spent for nothing."""
