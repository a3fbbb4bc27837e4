"""Exception hierarchy shared by every module."""


class MoraError(Exception):
    """Base class for toolkit errors."""


class ParseError(MoraError):
    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ResolutionError(MoraError):
    """A subgraph call names a graph that is not registered."""

    def __init__(self, name, caller=None):
        self.name = name
        self.caller = caller
        msg = f"unresolved subgraph reference {name!r}"
        if caller:
            msg += f" (called from {caller!r})"
        super().__init__(msg)


class DomainError(MoraError):
    """An edit program cannot be applied to a lemma."""


class CompileError(MoraError):
    def __init__(self, message, missing=()):
        self.missing = tuple(missing)
        super().__init__(message)


class IntegrityError(MoraError):
    """A morpheme graph path carries contradictory feature values."""


class ValidationError(MoraError):
    """Gold annotations are inconsistent or misaligned."""
