"""Exception hierarchy shared by all venroute modules."""


class VenError(Exception):
    """Base class for all venroute errors."""


class StructuralError(VenError):
    """Malformed input structure (disconnected route, duplicate arc, ...)."""


class DomainError(VenError):
    """Argument outside the domain of an operation (unknown junction, s == t, ...)."""


class ConsistencyError(VenError):
    """Internal cross-referencing failure or a plan violating its own caps."""


class ScenarioFormatError(VenError):
    """Scenario file cannot be parsed; message carries line/field context."""


class EnumerationCapError(VenError):
    """Full path enumeration exceeded the configured safety cap."""


class SolverError(VenError):
    """The LP backend failed for a reason other than infeasibility."""
