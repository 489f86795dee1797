"""Exception types shared across the package."""


class TorsionBoundError(Exception):
    """Base class for errors raised by torsionbound."""


class EnumerationCapExceeded(TorsionBoundError):
    """A group or orbit enumeration grew past its element cap."""

    def __init__(self, cap, partial):
        self.cap = cap
        self.partial = partial
        super().__init__(f"enumeration exceeded cap of {cap} elements (reached {partial})")


class ModulusMismatch(TorsionBoundError, ValueError):
    pass


class NotInvertible(TorsionBoundError, ValueError):
    pass


class UnsupportedSubgroup(TorsionBoundError, ValueError):
    pass


class HypothesisError(TorsionBoundError, ValueError):
    """Input violates a hypothesis of the statement being applied (e.g. a prime <= threshold)."""


class TailNotCertified(TorsionBoundError):
    pass


class SchemaError(TorsionBoundError, ValueError):
    pass
