"""Typed error hierarchy shared by all modules."""

from __future__ import annotations


class KnotfacetError(Exception):
    """Base class for all domain errors."""


class ValidationError(KnotfacetError):
    """A diagram failed a structural invariant."""


class NotQuadrivalent(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class SelfLoopEdge(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NonPlanar(ValidationError):
    pass


class CodecError(KnotfacetError):
    """Base for parse/serialize errors; carries a position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class PdSyntaxError(CodecError):
    pass


class GaussSyntaxError(CodecError):
    pass


class EdgeLabelArity(CodecError):
    pass


class UnrealizableGaussCode(CodecError):
    pass


class InconsistentSigns(CodecError):
    pass


class SchemaError(CodecError):
    pass


class NotAKnot(KnotfacetError):
    pass


class NotALink(KnotfacetError):
    pass


class UncoloredInput(KnotfacetError):
    pass


class BadSite(KnotfacetError):
    pass


class FaceNotOdd(KnotfacetError):
    pass


class FaceNotEven(KnotfacetError):
    pass


class FaceTooSmall(KnotfacetError):
    pass


class BadParameter(KnotfacetError):
    pass


class TooFewCopies(KnotfacetError):
    pass


class GridTooCoarse(KnotfacetError):
    def __init__(self, message: str, quad=None):
        self.quad = quad
        super().__init__(message)


class NoCompositionSite(KnotfacetError):
    pass


class DivisibilityViolation(KnotfacetError):
    def __init__(self, message: str, face_size: int | None = None):
        self.face_size = face_size
        super().__init__(message)


class NotAllEven(KnotfacetError):
    pass


class BudgetExceeded(KnotfacetError):
    def __init__(self, message: str, crossings: int | None = None, width: int | None = None):
        self.crossings = crossings
        self.width = width
        super().__init__(message)


class CapExceeded(KnotfacetError):
    pass


class CounterexampleFound(KnotfacetError):
    def __init__(self, message: str, canonical_code=None):
        self.canonical_code = canonical_code
        super().__init__(message)
