class RSPError(Exception):
    """Base class for solver errors."""


class InvalidInput(RSPError, ValueError):
    pass


class InstanceSyntaxError(InvalidInput):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GuardError(RSPError):
    """The joint cycle exceeds the configured cap."""


class BudgetExceeded(RSPError):
    def __init__(self, message, count=None):
        self.count = count
        super().__init__(message)
