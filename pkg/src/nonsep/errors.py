"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called on an input violating its stated preconditions."""


class RootNotPermitted(PreconditionError):
    """The requested branching root is ruled out by the case analysis."""

    def __init__(self, root, allowed, reason):
        self.root = root
        self.allowed = allowed
        self.reason = reason
        super().__init__(f"root {root} not permitted ({reason}); allowed roots: {sorted(allowed)}")


class InvariantViolation(RuntimeError):
    """An internal invariant that the theory guarantees was found violated.

    Raised when a runtime re-check of a structural claim fails; this always
    indicates an implementation bug, never a property of the input.
    """


class NotGuaranteed(Exception):
    """The input is outside the regime where the construction is guaranteed.

    Callers may fall back to an exhaustive oracle.
    """


class BoundExceeded(ValueError):
    """An exhaustive oracle was asked to run beyond its configured size bound."""
