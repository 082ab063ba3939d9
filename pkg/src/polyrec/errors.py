"""Exception types raised across the package."""


class PolytopeError(ValueError):
    """Base class for every error raised by polyrec."""


class DegenerateInput(PolytopeError):
    pass


class NotPolytopal(PolytopeError):
    pass


class RankOutOfRange(PolytopeError):
    pass


class RankMismatch(PolytopeError):
    pass


class DegreeTooLow(PolytopeError):
    pass


class BadDimension(PolytopeError):
    pass


class BadIndex(PolytopeError):
    pass


class InvalidBase(PolytopeError):
    pass


class HypothesisViolated(PolytopeError):
    pass


class Unrecognized(PolytopeError):
    pass


class LemmaViolated(PolytopeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ExcessTooLarge(PolytopeError):
    pass


class InconsistentConstraints(PolytopeError):
    pass


class GraphMismatch(PolytopeError):
    pass


class RNotClique(PolytopeError):
    pass


class NotBalinski(PolytopeError):
    pass


class NotSimple(PolytopeError):
    pass


class CoreUnrecognized(PolytopeError):
    pass


class ValidationFailed(PolytopeError):
    pass


class InternalValidationFailed(ValidationFailed):
    pass


class NoCompletion(PolytopeError):
    pass


class AmbiguousCompletion(PolytopeError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class BudgetExceeded(PolytopeError):
    pass


class ParseError(PolytopeError):
    pass


class UnknownSuite(PolytopeError):
    pass


class UnknownFixture(PolytopeError):
    pass
