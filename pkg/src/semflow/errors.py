"""Exception hierarchy shared across the toolkit.

Every module raises subclasses of SemflowError so callers (CLI, gateway)
can map failures to exit codes / HTTP statuses in one place.
"""


class SemflowError(Exception):
    """Base class for all toolkit errors."""


# --- RDF core ---------------------------------------------------------------

class UnboundVariable(SemflowError):
    """A filter or order-by variable never occurs in the query patterns."""


class NTriplesSyntaxError(SemflowError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- lifting ----------------------------------------------------------------

class MappingSyntaxError(SemflowError):
    """Mapping document is malformed (bad JSON, missing/ill-typed field)."""


class UnknownPrefix(SemflowError):
    def __init__(self, prefix: str):
        super().__init__(f"prefix {prefix!r} is not bound and is not a known IRI scheme")
        self.prefix = prefix


class DanglingJoin(SemflowError):
    """A join rule names an entity map that does not exist."""


class SourceSyntaxError(SemflowError):
    """Source bytes do not parse in the declared format."""


class IteratorNotFound(SemflowError):
    """The declared iterator path does not resolve in the source document."""


class SourceMissing(SemflowError):
    """lift() was called without bytes for one of the mapping's sources."""


class UnknownFunction(SemflowError):
    pass


class LookupTableMissing(SemflowError):
    pass


class ArityError(SemflowError):
    pass


class NonNumericOperand(SemflowError):
    pass


# --- graph operations -------------------------------------------------------

class AmbiguousKey(SemflowError):
    """Two canonical nodes carry the same fusion key value."""


class InvalidRange(SemflowError):
    """Temporal window or bounding box with inverted/unparseable bounds."""


# --- lowering ---------------------------------------------------------------

class TemplateSyntaxError(SemflowError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class UnknownQuery(SemflowError):
    pass


class UnboundTemplateVariable(SemflowError):
    pass


# --- catalogue --------------------------------------------------------------

class Forbidden(SemflowError):
    """Actor's role (or ownership) does not allow the operation."""


class SchemaViolation(SemflowError):
    def __init__(self, message: str, fields: list[str] | None = None):
        super().__init__(message)
        self.fields = fields or []


class IllegalTransition(SemflowError):
    pass


class NotFound(SemflowError):
    pass


class UnknownVocabularyTerm(SemflowError):
    pass


# --- gateway / collector ----------------------------------------------------

class IntegrationError(SemflowError):
    """Source binding violates an invariant (unknown record, bad TTL, ...)."""


class UpstreamUnavailable(SemflowError):
    pass


class PipelineError(SemflowError):
    def __init__(self, step: str, message: str):
        super().__init__(f"{step}: {message}")
        self.step = step
