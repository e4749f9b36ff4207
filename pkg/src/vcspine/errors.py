"""Exception types shared across the package."""


class VCSpineError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(VCSpineError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(VCSpineError, ValueError):
    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message)


class UnitError(VCSpineError, ValueError):
    pass


class DomainError(VCSpineError, ValueError):
    pass


class TransitionError(VCSpineError):
    def __init__(self, state, event, line=None):
        self.state = state
        self.event = event
        self.line = line
        msg = f"event {event} not allowed in state {state}"
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)


class IngestError(VCSpineError):
    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class FitError(VCSpineError):
    pass


class UnreachableError(VCSpineError):
    def __init__(self, message, best_residual):
        self.best_residual = best_residual
        super().__init__(f"{message} (best tip residual {best_residual * 1000:.4g} mm)")
