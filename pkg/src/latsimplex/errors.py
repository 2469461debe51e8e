"""Exception hierarchy shared by every module."""


class LatticeError(ValueError):
    """Base class for all errors raised by latsimplex."""


class SingularMatrix(LatticeError):
    pass


class DegenerateSimplex(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class InvalidParams(LatticeError):
    pass


class InvalidPrime(LatticeError):
    pass


class NotPPower(LatticeError):
    pass


class CapExceeded(LatticeError):
    """A configured work cap would be exceeded.

    ``cap`` names the offending setting so callers (and the CLI) can say
    which knob to raise.
    """

    def __init__(self, cap, limit, needed):
        self.cap = cap
        self.limit = limit
        self.needed = needed
        super().__init__(f"{cap} exceeded: need {needed}, limit is {limit}")


class OrderCapExceeded(CapExceeded):
    def __init__(self, limit, needed):
        super().__init__("order_cap", limit, needed)


class PermCapExceeded(CapExceeded):
    def __init__(self, limit, needed):
        super().__init__("perm_cap", limit, needed)
