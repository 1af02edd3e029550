"""Exception hierarchy shared by every webcheck module."""


class WebcheckError(Exception):
    """Base class for all library errors."""


class InvalidInput(WebcheckError, ValueError):
    pass


class DomainError(WebcheckError, ValueError):
    pass


class SingularMap(WebcheckError):
    """The Jacobian of a plane map vanishes at the query point."""


class DegenerateWeb(WebcheckError):
    """Two web directions coincide at the query point."""


class DegenerateNormalization(WebcheckError):
    """The profile value S hits 0 or 1, where v3 is tangent to v1 or v2."""


class SymmetryTangent(WebcheckError):
    pass


class StationaryOrbit(WebcheckError):
    pass


class FlatWeb(WebcheckError):
    pass


class StationaryX(WebcheckError):
    pass


class SingularS(WebcheckError):
    pass


class SingularX(WebcheckError):
    pass


class SigmaLocus(WebcheckError):
    pass


class RhoLocus(WebcheckError):
    pass


class DegenerateLeadingCoeff(WebcheckError):
    pass


class InvalidParameters(WebcheckError, ValueError):
    pass


class EmptyFamily(WebcheckError):
    pass


class NoIntersection(WebcheckError):
    pass


class NotProvided(WebcheckError):
    pass


class InvalidSampling(WebcheckError, ValueError):
    pass


class UnsupportedExpression(WebcheckError, ValueError):
    pass


class ParseError(WebcheckError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
