"""Exception hierarchy shared by every module."""


class APGError(Exception):
    pass


class NonPrime(APGError, ValueError):
    pass


class SizeExceeded(APGError, ValueError):
    pass


class DivisionByZero(APGError, ZeroDivisionError):
    pass


class WrongCharacteristic(APGError, ValueError):
    pass


class OrderCapExceeded(APGError):
    pass


class SearchBudgetExceeded(APGError):
    """Raised when a bounded search stops early.

    ``best`` carries whatever the search had found so far (may be None).
    """

    def __init__(self, msg, best=None, lower_bound=None):
        super().__init__(msg)
        self.best = best
        self.lower_bound = lower_bound


class BudgetExceeded(SearchBudgetExceeded):
    pass


class MalformedClaim(APGError, ValueError):
    pass


class CenterTrivial(APGError):
    pass


class EvenOrder(APGError):
    pass


class AnchorMismatch(APGError, ValueError):
    pass


class InvariantBroken(APGError):
    pass


class NotCommuting(APGError, ValueError):
    pass


class QuotientTooLarge(APGError):
    pass


class InvalidParams(APGError, ValueError):
    pass


class UnsupportedFamily(APGError):
    pass


class NotACGroup(APGError):
    pass


class CentralizerTooSmall(APGError):
    pass


class NotFrobenius(APGError):
    pass


class ComplementTooSmall(APGError):
    pass


class FactorOddOrder(APGError, ValueError):
    pass


class NotAProduct(APGError, ValueError):
    pass
