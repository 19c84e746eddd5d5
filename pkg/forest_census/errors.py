"""Exception hierarchy; the CLI maps every ForestCensusError to exit code 2."""


class ForestCensusError(Exception):
    pass


class InvalidInputError(ForestCensusError, ValueError):
    pass


class DomainError(ForestCensusError, ArithmeticError):
    """Zero raised to a negative exponent."""


class FormulaError(ForestCensusError, ArithmeticError):
    """A formula product came out non-integral or negative."""


class ResourceLimitError(ForestCensusError):
    pass


class UnsupportedInputError(ForestCensusError):
    pass


class DecompositionError(ForestCensusError):
    pass


class InvalidPlanError(DecompositionError):
    pass


class CycleRiskError(DecompositionError):
    pass


class IncompletePlanError(DecompositionError):
    pass
