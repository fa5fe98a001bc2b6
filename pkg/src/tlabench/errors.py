"""Exception types shared across the toolchain."""


class TlabenchError(Exception):
    """Base class for all toolchain errors."""


class SubsetParseError(TlabenchError):
    """Source text is outside the accepted grammar. Carries the first offending span."""

    def __init__(self, message, line, col, end_line=None, end_col=None):
        super().__init__(f"line {line}, col {col}: {message}")
        self.reason = message
        self.line = line
        self.col = col
        self.end_line = end_line if end_line is not None else line
        self.end_col = end_col if end_col is not None else col


class SubsetViolationError(TlabenchError):
    """A program failed the static subset filters. Carries the Violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        super().__init__(f"{len(self.violations)} subset violation(s): {head}")


class InternalLoweringError(TlabenchError):
    """A node the frontend should have rejected reached the transform."""


class NameCollisionError(TlabenchError):
    """Fresh-name generation exhausted its suffix budget."""


class NoModuleHeaderError(TlabenchError):
    """TLA+ text lacks a ``---- MODULE name ----`` header."""


class UnbalancedDefinitionError(TlabenchError):
    """An operator definition runs past the module terminator."""


class DuplicateConstantError(TlabenchError):
    """A config binding collides with the reserved NONE/NULL model values."""


class ToolMissingError(TlabenchError):
    """An external executable (checker or interpreter) could not be started."""


class DumpFormatError(TlabenchError):
    """A state-dump record could not be parsed. Carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset


class EmptyOracleError(TlabenchError):
    """Similarity was requested against an empty oracle state set."""


class DomainError(TlabenchError):
    """Estimator arguments outside their precondition."""


class TransportError(TlabenchError):
    """Chat endpoint unreachable or protocol violation after retries."""


class QuotaError(TlabenchError):
    """Endpoint signalled quota/rate exhaustion; runs pause and resume on this."""


class MissingFixtureError(TlabenchError):
    """FakeLLM has no reply recorded for the outgoing conversation."""


class RewriteExhaustedError(TlabenchError):
    """All feature-rewrite attempts failed validation."""


class SchemaError(TlabenchError):
    """A dataset record violates the ingestion schema. Carries the line number."""

    def __init__(self, message, line_no):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ConsistencyError(TlabenchError):
    """A persisted summary disagrees with the summary recomputed from records."""
