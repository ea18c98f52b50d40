"""Exception hierarchy shared by every module.

Each error carries an ``exit_code`` so the CLI can map failures onto its
documented status codes without a lookup table.
"""


class BatchPairError(Exception):
    exit_code = 2


# -- input / usage errors (exit 2) ---------------------------------------

class UnsupportedSize(BatchPairError):
    pass


class DegreeMismatch(BatchPairError):
    pass


class ReducibleModulus(BatchPairError):
    pass


class ContextMismatch(BatchPairError):
    pass


class DivisionByZero(BatchPairError, ZeroDivisionError):
    pass


class VarSetMismatch(BatchPairError):
    pass


class UnknownVariable(BatchPairError, KeyError):
    pass


class ArityMismatch(BatchPairError):
    pass


class ZeroRequest(BatchPairError):
    pass


class SumNonzero(BatchPairError):
    pass


class NotAllEqual(BatchPairError):
    pass


class TooManyServers(BatchPairError):
    pass


# -- resource caps (exit 3) ----------------------------------------------

class ResourceCap(BatchPairError):
    exit_code = 3


class TermCapExceeded(ResourceCap):
    def __init__(self, count, cap):
        super().__init__(f"term count {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


# -- mathematical failures (exit 1) --------------------------------------

class CheckFailed(BatchPairError):
    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonzeroRemainder(CheckFailed):
    pass


class DependenceViolation(CheckFailed):
    pass
