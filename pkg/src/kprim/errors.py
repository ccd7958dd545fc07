"""Exception hierarchy shared by all modules."""


class KPrimError(Exception):
    pass


class DomainError(KPrimError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class OutOfRangeError(KPrimError, IndexError):
    """Query exceeds the prime table; ``required_limit`` says how far to sieve."""

    def __init__(self, msg, required_limit=None):
        super().__init__(msg)
        self.required_limit = required_limit


class ResourceError(KPrimError):
    pass


class PoleError(DomainError):
    pass


class BracketError(KPrimError):
    pass


class SizeError(KPrimError):
    pass


class SmoothnessError(DomainError):
    pass


class InapplicableError(KPrimError):
    pass


class PreconditionError(KPrimError):
    pass


class ConsistencyError(KPrimError):
    """An asserted lemma conclusion failed: signals a bug, carries the counterexample."""

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample
