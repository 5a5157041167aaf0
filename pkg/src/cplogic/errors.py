"""Exception hierarchy.

Everything raised on bad input derives from :class:`CPLError`.  The CLI maps
:class:`ParseError` subclasses to exit status 2 and the remaining
:class:`ValidationError` subclasses to exit status 3.
"""


class CPLError(Exception):
    """Base class for all library errors."""


class ParseError(CPLError):
    """Malformed text or file input."""


class FormulaSyntaxError(ParseError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ValidationError(CPLError):
    """Well-formed input that violates a structural invariant."""


class UnknownId(ValidationError, LookupError):
    pass


class UnknownAgent(UnknownId):
    pass


class UnknownWorld(UnknownId):
    pass


class UnknownFacet(UnknownId):
    pass


class UnknownFace(UnknownId):
    pass


class UnknownAtom(UnknownId):
    pass


class UnknownPattern(UnknownId):
    pass


class UnknownFamily(UnknownId):
    pass


class EmptyGroup(ValidationError):
    pass


class PartitionError(ValidationError):
    pass


class LocalityError(ValidationError):
    def __init__(self, message, violation=None):
        self.violation = violation
        super().__init__(message)


class NotReflexive(ValidationError):
    pass


class AgentSetMismatch(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class SizeError(ValidationError):
    pass


class NotChromatic(ValidationError):
    pass


class NotPure(ValidationError):
    pass


class OrphanVertex(ValidationError):
    pass


class NonMaximalFacet(ValidationError):
    pass


class ValuationOwnerError(ValidationError):
    pass


class GraphNotInPattern(ValidationError):
    pass


class SignatureMismatch(ValidationError):
    pass


class BoundsError(ValidationError):
    pass


class ArePointsBisimilar(ValidationError):
    pass
