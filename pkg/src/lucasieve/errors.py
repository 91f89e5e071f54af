"""Exception hierarchy shared by every module."""


class LucasieveError(Exception):
    """Base class for all package errors."""


class ZeroEntry(LucasieveError, ValueError):
    pass


class NotCoprime(LucasieveError, ValueError):
    pass


class DegenerateRatio(LucasieveError, ValueError):
    pass


class DividesNorm(LucasieveError, ValueError):
    pass


class InvalidFrobeniusPair(LucasieveError, ValueError):
    pass


class DuplicatePrime(LucasieveError, ValueError):
    pass


class NotLevelPrime(LucasieveError, ValueError):
    pass


class TableInconsistency(LucasieveError):
    def __init__(self, row, message):
        super().__init__(f"{message}: {row}")
        self.row = row


class ExceptionalEll(LucasieveError, ValueError):
    pass


class DegreeTooSmall(LucasieveError, ValueError):
    pass


class UnsupportedWeight(LucasieveError, ValueError):
    pass


class BadReduction(LucasieveError, ValueError):
    pass


class TorsionHypothesisFails(LucasieveError):
    pass


class ScanViolation(LucasieveError):
    def __init__(self, report):
        super().__init__(f"series scan found violations on {report.curve}")
        self.report = report


class MalformedFile(LucasieveError, ValueError):
    pass


class ConsistencyFailure(LucasieveError, ValueError):
    pass
