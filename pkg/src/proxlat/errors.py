"""Exception types shared across the package."""


class ProxlatError(Exception):
    """Base class for every error raised by proxlat."""


class NotAPartialOrder(ProxlatError):
    pass


class NotALattice(ProxlatError):
    """Raised when an order has a pair without a meet or join.

    `witness` is the offending pair of element indices, `missing` is
    "meet" or "join".
    """

    def __init__(self, message, witness=None, missing=None):
        super().__init__(message)
        self.witness = witness
        self.missing = missing


class DimensionMismatch(ProxlatError):
    pass


class NotAProximityLattice(ProxlatError):
    """The relation violates idempotence or join/meet compatibility."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class InvalidRoundSubset(ProxlatError):
    pass


class NotAJMorphism(ProxlatError):
    pass


class NotAProximityMorphism(ProxlatError):
    pass


class TransposeError(ProxlatError):
    pass


class NotJoinStrong(ProxlatError):
    pass


class NotMeetStrong(ProxlatError):
    pass


class NotDoublyStrong(ProxlatError):
    pass


class NotDistributive(ProxlatError):
    pass


class NotT0(ProxlatError):
    pass


class KindMismatch(ProxlatError):
    pass


class ExtensionError(ProxlatError):
    """A canonical-extension input does not satisfy the checked contract."""


class InternalCheckError(ProxlatError):
    """A property that is a theorem for valid inputs failed; indicates a bug
    or a violated precondition. Carries the witness for debugging."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
