"""Exception types shared across the package."""


class LeakLintError(Exception):
    """Base class for all leaklint-specific failures."""


class RegistryIOError(LeakLintError):
    """Registry file could not be read."""


class RegistryFormatError(LeakLintError):
    """Registry file is structurally malformed.

    ``locus`` names the offending entry or field when known.
    """

    def __init__(self, message: str, locus: str | None = None):
        self.locus = locus
        super().__init__(f"{message} (at {locus})" if locus else message)


class RegistryValidationError(LeakLintError):
    """Registry content violates an invariant (duplicates, empty signature lists)."""


class AmbiguousMatchError(LeakLintError):
    """Two resource specs match the same call site; the registry is misconfigured."""


class JavaSyntaxError(LeakLintError):
    """Unparseable Java source, with a line/column locus."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class MalformedIRError(LeakLintError):
    """Method IR violates its structural invariants."""


class AnalysisInternalError(LeakLintError):
    """The fixpoint engine exceeded its iteration guard; indicates a bug."""


class PathExplosionError(LeakLintError):
    """Acyclic path enumeration exceeded the configured bound."""


class InvalidPatternError(LeakLintError):
    """A mining removal pattern is not a valid regular expression."""


class MiningInputError(LeakLintError):
    """Commit history input could not be read."""


class ManifestFormatError(LeakLintError):
    """Manifest CSV is malformed; carries the offending row number."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class ManifestValidationError(LeakLintError):
    """Manifest rows violate an invariant (e.g. duplicate entries)."""
