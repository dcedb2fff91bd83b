"""Exception types; the CLI maps each to an exit code."""


class CorfunError(Exception):
    exit_code = 1


class ValidationError(CorfunError, ValueError):
    exit_code = 2


class NotALattice(ValidationError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class BudgetExceeded(CorfunError):
    exit_code = 3


class InvariantFailure(CorfunError, AssertionError):
    exit_code = 4
