"""Exception types shared across the package."""


class HHSError(Exception):
    """Base class for all package errors."""


class InvalidEdge(HHSError):
    """Edge with an out-of-range endpoint, nonpositive weight, self-loop, or duplicate."""


class DisconnectedGraph(HHSError):
    """The edge set does not connect all vertices."""


class EmptyTarget(HHSError):
    """Closest-point projection onto an empty vertex set."""


class SizeLimitExceeded(HHSError):
    """An O(n^3)/O(n^4) sweep or a product construction was refused; raise the cap to proceed."""


class GeodesicCapExceeded(HHSError):
    """Geodesic enumeration was truncated where completeness was required."""


class UnknownDomain(HHSError):
    """Domain id or name not present in the structure."""


class StructureInvalid(HHSError):
    """Eager construction failed; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class RelationConflict(StructureInvalid):
    """A pair of domains is both nested-comparable and orthogonal, or orthogonality is reflexive."""


class MissingRho(HHSError):
    """A transverse or strictly-nested pair has no rho entry (or an entry where none is allowed)."""


class DanglingReference(HHSError):
    """A table references a domain id or vertex that does not exist."""


class ValidationFirst(HHSError):
    """Axiom constants were requested on a structure that fails relation validation."""


class CombinatorialBlowup(HHSError):
    """The partial-realization tuple count exceeds the configured budget."""


class DegeneratePairs(HHSError):
    """Quasi-isometry fit requested on pairs that are all at distance zero."""


class ConfigValidation(HHSError):
    """A generator config produced an invalid space or structure."""


class ParseError(HHSError):
    """A JSON input file does not match the expected schema."""
