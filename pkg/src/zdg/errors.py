"""Exception hierarchy shared by every zdg module."""

from __future__ import annotations


class ZdgError(Exception):
    """Base class for all errors raised by zdg."""


class InvalidParameterError(ZdgError, ValueError):
    pass


class InvalidElementError(ZdgError, IndexError):
    pass


class PresentationError(ZdgError, ValueError):
    """A structure-constant presentation violates a ring axiom."""

    def __init__(self, axiom: str, witness: tuple, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class PresentationFormatError(ZdgError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RingSyntaxError(ZdgError, ValueError):
    def __init__(self, offset: int, expected: list[str], text: str = ""):
        exp = ", ".join(expected)
        super().__init__(f"syntax error at offset {offset}: expected {exp}")
        self.offset = offset
        self.expected = expected
        self.text = text


class UnsupportedPresentationError(ZdgError, ValueError):
    pass


class EmptyGraphError(ZdgError, ValueError):
    pass


class GraphFormatError(ZdgError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
