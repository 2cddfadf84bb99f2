class MonoresError(Exception):
    pass


class DimensionError(MonoresError, ValueError):
    """Monomials or ideals living in rings with different variable counts."""


class ParseError(MonoresError, ValueError):
    pass


class InvalidComplexError(MonoresError):
    """A pair of consecutive maps does not compose to zero."""


class NotAcyclicError(MonoresError):
    pass


class TaylorSizeError(MonoresError):
    pass


class HypothesisError(MonoresError):
    """The disjoint-support hypothesis of the star-product resolution fails."""

    def __init__(self, shared):
        self.shared = tuple(shared)
        names = ", ".join(f"x{i}" for i in self.shared)
        super().__init__(f"generator supports overlap in: {names}")


class ConfigError(MonoresError, ValueError):
    pass
