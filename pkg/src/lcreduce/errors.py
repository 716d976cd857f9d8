"""Exception types raised across the package."""


class ReductionError(Exception):
    """Base class for all errors raised by lcreduce."""


class UnknownVertex(ReductionError, KeyError):
    pass


class UnknownEdge(ReductionError, KeyError):
    pass


class SearchSpaceTooLarge(ReductionError):
    pass


class Infeasible(ReductionError):
    """No feasible solution exists for the instance."""


class InfeasibleLabeling(ReductionError):
    pass


class MissingZeroCostArcs(ReductionError):
    pass


class RelationConstraint(ReductionError):
    """A reduction that needs projection constraints received a relation."""


class InvalidArity(ReductionError, ValueError):
    pass


class InfeasibleParameters(ReductionError, ValueError):
    pass


class FormatError(ReductionError, ValueError):
    """Malformed text input."""
