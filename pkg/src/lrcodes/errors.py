"""Exception types."""


class LrcError(Exception):
    """Base class for library errors."""


class CapExceeded(LrcError):
    pass


class EnumerationInfeasible(LrcError):
    def __init__(self, rank, rank_limit, support_count, support_limit):
        self.rank = rank
        self.rank_limit = rank_limit
        self.support_count = support_count
        self.support_limit = support_limit
        super().__init__(
            f"dual-word enumeration infeasible: rank {rank} > {rank_limit} "
            f"and C(n, wmax) = {support_count} > {support_limit}"
        )


class PatternSpaceTooLarge(LrcError):
    pass


class MatrixFormatError(LrcError, ValueError):
    pass


class SpecParseError(LrcError, ValueError):
    pass


class UnknownFixture(SpecParseError):
    pass


class InfeasibleConstruction(LrcError):
    """Parameters are well-formed but no code of the family exists for them."""


class UnsupportedOrder(InfeasibleConstruction):
    pass


class TooManySquares(InfeasibleConstruction):
    pass


class InfeasibleDegreeSequence(InfeasibleConstruction):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class ParameterConstraint(InfeasibleConstruction):
    pass
