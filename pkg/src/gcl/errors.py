"""Exception hierarchy shared by every module."""


class GCLError(Exception):
    """Base class for all library errors."""


class DuplicateLabel(GCLError):
    pass


class UnknownLabel(GCLError):
    pass


class ReservedLabel(GCLError):
    pass


class CycleDetected(GCLError):
    """The order relation closes up into a cycle (antisymmetry fails)."""


class EmptyPoset(GCLError):
    pass


class EmptyComplex(GCLError):
    pass


class NotMonotone(GCLError):
    pass


class NotAnInvolution(GCLError):
    pass


class WIAxiomViolation(GCLError):
    pass


class KindMismatch(GCLError):
    pass


class NotASubposet(GCLError):
    pass


class NotSimplicial(GCLError):
    pass


class NotEquivariant(GCLError):
    pass


class NoEdges(GCLError):
    pass


class UnknownVertex(GCLError):
    pass


class UnknownEdge(GCLError):
    pass


class EmptyFamily(GCLError):
    pass


class NotAutomorphism(GCLError):
    pass


class TooSmall(GCLError):
    pass


class GroundMismatch(GCLError):
    pass


class NotFree(GCLError):
    pass


class NotSemilattice(GCLError):
    pass


class DecompositionFailed(GCLError):
    pass


class PointwiseOrderViolated(GCLError):
    pass


class NotAFace(GCLError):
    pass


class BudgetExceeded(GCLError):
    pass


class ParseError(GCLError):
    pass
