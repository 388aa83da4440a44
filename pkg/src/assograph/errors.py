"""Exception types shared across the package."""


class AssographError(ValueError):
    """Base class for all domain errors raised by this package."""


class RecordParseError(AssographError):
    """A corpus input line could not be parsed.

    Carries the 1-based line number and, when known, the offending field.
    """

    def __init__(self, message: str, *, line: int, field: str | None = None):
        self.line = line
        self.field = field
        where = f"line {line}" if field is None else f"line {line}, field {field!r}"
        super().__init__(f"{where}: {message}")


class DuplicateDocumentError(AssographError):
    def __init__(self, doc_id: str, *, line: int):
        self.doc_id = doc_id
        self.line = line
        super().__init__(f"line {line}: duplicate document id {doc_id!r}")


class UnknownUnitError(AssographError, KeyError):
    pass


class UnknownDocumentError(AssographError, KeyError):
    pass


class UnknownClusterError(AssographError, KeyError):
    pass
