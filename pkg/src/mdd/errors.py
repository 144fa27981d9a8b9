"""Exception hierarchy shared by every module."""


class MddError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MddError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class GraphError(MddError, ValueError):
    """Raised when an edge list does not describe a valid host graph."""


class NotSimple(GraphError):
    pass


class NotBipartite(GraphError):
    pass


class Disconnected(GraphError):
    pass


class MalformedGraph6(MddError, ValueError):
    pass


class DefectNegative(MddError):
    """Order exceeds the Moore bipartite bound; indicates a bug upstream."""


class BudgetExceeded(MddError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StructureViolation(MddError):
    """A host graph contradicts a structural property of defect-4 graphs."""


class PartitionViolation(StructureViolation):
    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class PreconditionFailed(MddError, ValueError):
    pass


class OffsetParity(DomainError):
    pass


class DuplicateEdge(DomainError):
    pass


class NotPrime(DomainError):
    pass


class TargetTooLarge(MddError):
    pass


class CorruptCatalogue(MddError):
    pass
