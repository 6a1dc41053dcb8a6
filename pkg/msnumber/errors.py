"""Exception hierarchy shared by the library and the CLI."""

from typing import Optional


class MSNumberError(ValueError):
    """Base class for every error raised by the toolkit."""


class ParseError(MSNumberError):
    """Malformed textual input (graph6, edge list, polynomial, certificate)."""

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        location = []
        if line is not None:
            location.append(f"line {line}")
        if offset is not None:
            location.append(f"byte {offset}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.reason = message


class DimensionError(MSNumberError):
    """Operands with non-conforming shapes or lengths."""


class DomainError(MSNumberError):
    """An operation was called outside the domain it is defined on."""


class CapExceededError(MSNumberError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, value: int, cap: int, env_key: str):
        self.value = value
        self.cap = cap
        super().__init__(
            f"{what} refused: n={value} exceeds the cap of {cap} "
            f"(raise it with {env_key})"
        )
