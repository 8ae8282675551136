"""Exception hierarchy. The CLI prints the class name as the machine-readable error."""


class SchmidtError(ValueError):
    pass


class NegativeCoefficient(SchmidtError):
    pass


class NotNormalizable(SchmidtError):
    pass


class OutOfDomain(SchmidtError):
    pass


class WrongRank(SchmidtError):
    pass


class RankMismatch(SchmidtError):
    pass


class BoundaryCoefficient(SchmidtError):
    pass


class StepTooLarge(SchmidtError):
    pass


class NotConvertible(SchmidtError):
    pass


class EquivalentPair(SchmidtError):
    pass


class NoSolution(SchmidtError):
    pass


class TheoremViolation(SchmidtError):
    """A numerical result contradicts a proven statement; always a bug."""


class Infeasible(SchmidtError):
    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class NotRank3(WrongRank):
    pass


class ConvergenceFailure(SchmidtError):
    pass


class NoSharedCoefficient(SchmidtError):
    pass


class DegenerateKappa(SchmidtError):
    pass


class EmptyRange(SchmidtError):
    pass
