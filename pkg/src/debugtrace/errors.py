"""Exception hierarchy shared across the package.

Service-level errors carry a stable ``code`` string that the HTTP layer
maps to status codes and the CLI maps to exit codes.
"""


class DebugTraceError(Exception):
    """Base class for all errors raised by this package."""


class EmptySnapshot(DebugTraceError):
    """A snapshot must contain at least one file."""


class ParseError(DebugTraceError):
    """Syntax error in a logic-layer source file."""

    def __init__(self, message: str, line: int, col: int, offending_lexeme: str = ""):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.offending_lexeme = offending_lexeme


class LexError(ParseError):
    """Lexical error (unterminated string or block comment)."""


class TagError(DebugTraceError):
    """Malformed view-layer markup."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class BenchError(DebugTraceError):
    """The benchmark corpus failed to parse cleanly."""


class InconsistentScript(DebugTraceError):
    """An edit script does not transform its source tree into its target."""


class EmptySession(DebugTraceError):
    """The session has no Save events to analyze."""


class ReferenceUnparseable(DebugTraceError):
    """A reference snapshot's logic files must all parse."""


class KTooLarge(DebugTraceError):
    """Requested cluster count exceeds the number of sessions."""


class StoreError(DebugTraceError):
    """Base class for persistence failures."""


class StoreUnreadable(StoreError):
    """Store root missing, unreadable, or wrong format version."""


class CorruptBlob(StoreError):
    """A stored blob's bytes no longer hash to its filename digest."""


class CorruptLog(StoreError):
    """A complete log line failed to decode."""


class SequenceGap(StoreError):
    """Appended event id does not continue the stored sequence."""


class NotFound(StoreError):
    """Requested record does not exist."""


class ServiceError(DebugTraceError):
    """Request-level failure; ``code`` names the condition on the wire."""

    code = "ServiceError"
    http_status = 400

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class AuthFailed(ServiceError):
    code = "AuthFailed"
    http_status = 401


class AuthExpired(ServiceError):
    code = "AuthExpired"
    http_status = 401


class Forbidden(ServiceError):
    code = "Forbidden"
    http_status = 403


class NotOwner(ServiceError):
    code = "NotOwner"
    http_status = 403


class QuestionNotFound(ServiceError):
    code = "QuestionNotFound"
    http_status = 404


class SessionNotFound(ServiceError):
    code = "SessionNotFound"
    http_status = 404


class TicketNotFound(ServiceError):
    code = "TicketNotFound"
    http_status = 404


class SessionExists(ServiceError):
    code = "SessionExists"
    http_status = 409


class ResumeAvailable(ServiceError):
    code = "ResumeAvailable"
    http_status = 409


class SessionNotActive(ServiceError):
    code = "SessionNotActive"
    http_status = 409


class AlreadyEnded(ServiceError):
    code = "AlreadyEnded"
    http_status = 409


class NothingToResume(ServiceError):
    code = "NothingToResume"
    http_status = 409


class MissingSnapshot(ServiceError):
    code = "MissingSnapshot"
    http_status = 422


class NoSnapshotYet(ServiceError):
    code = "NoSnapshotYet"
    http_status = 409


class TicketNotOpen(ServiceError):
    code = "TicketNotOpen"
    http_status = 409


class NoSeededError(ServiceError):
    code = "NoSeededError"
    http_status = 422


class ReferenceUnparseableError(ServiceError):
    code = "ReferenceUnparseable"
    http_status = 422


class SessionNotEnded(DebugTraceError):
    """Per-session reports require an Ended session."""


class ServerUnreachable(DebugTraceError):
    """Load test got no successful response at all."""
