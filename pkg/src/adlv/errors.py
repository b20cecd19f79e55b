"""Exception types shared by every module."""


class _Payload:
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class DomainError(_Payload, ValueError):
    """Input is outside the mathematical domain of an operation."""


class SchemaError(_Payload, ValueError):
    """A serialized document or CLI argument is malformed."""


class InternalConsistencyError(_Payload, AssertionError):
    """A statement that should always hold failed; indicates a bug."""
