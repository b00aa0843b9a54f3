"""Exception hierarchy shared by every structure in the package."""


class SuccinctError(Exception):
    pass


class RangeError(SuccinctError, IndexError):
    """A position, vertex or rectangle lies outside the structure's bounds."""


class NotFoundError(SuccinctError, LookupError):
    """select asked for an occurrence that does not exist."""


class ContractError(SuccinctError):
    """A query whose precondition on the stored data does not hold."""


class ValidationError(SuccinctError, ValueError):
    """Malformed or inconsistent input.

    ``line`` is the 1-based input line (None when not parsing text) and
    ``rule`` a short machine-readable name of the violated rule.
    """

    def __init__(self, message, rule="invalid", line=None):
        self.rule = rule
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message} [{rule}]")
