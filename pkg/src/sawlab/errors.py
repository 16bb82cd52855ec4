"""Exception types raised across the package."""


class SawlabError(Exception):
    pass


class NonUnitStep(SawlabError, ValueError):
    def __init__(self, index):
        super().__init__(f"step {index} is not a unit lattice step")
        self.index = index


class RepeatedVertex(SawlabError, ValueError):
    def __init__(self, index):
        super().__init__(f"vertex {index} repeats an earlier vertex")
        self.index = index


class EmptySet(SawlabError, ValueError):
    pass


class InvalidPolygon(SawlabError, ValueError):
    pass


class OddPolygonLength(InvalidPolygon):
    pass


class NotClosing(SawlabError, ValueError):
    pass


class LengthTwoExcluded(NotClosing):
    pass


class BudgetExceeded(SawlabError, RuntimeError):
    pass


class InsufficientData(SawlabError, ValueError):
    pass


class ZeroCount(SawlabError, ValueError):
    pass


class FormatVersionMismatch(SawlabError, ValueError):
    pass


class ChecksumMismatch(SawlabError, ValueError):
    pass


class CountMismatch(SawlabError, ValueError):
    pass


class NotJoinPlaquette(SawlabError, ValueError):
    pass


class NotDisjoint(SawlabError, ValueError):
    pass


class VerticalEdgesNotSplit(SawlabError, ValueError):
    pass


class VerticalIntervalsDisjoint(SawlabError, ValueError):
    pass


class NotJoinable(SawlabError, ValueError):
    pass


class WrongClass(SawlabError, ValueError):
    pass


class ConstraintViolation(SawlabError, ValueError):
    pass


class NotRegulation(SawlabError, ValueError):
    pass


class NotExtendable(SawlabError, ValueError):
    pass


class InvalidParams(SawlabError, ValueError):
    pass


class HypothesisUnmet(SawlabError, ValueError):
    pass


class EmptyDomain(SawlabError, ValueError):
    pass


class AmbiguousComparison(SawlabError, ArithmeticError):
    pass
