"""Exception hierarchy shared by all modules."""


class SkewlabError(Exception):
    """Base class for every error raised by the package."""


class ParseError(SkewlabError):
    """Malformed text input (polynomials, matrices, ring files)."""


class MathError(SkewlabError):
    """A mathematical refusal: the request is well formed but cannot be served."""


class FieldMismatchError(MathError, TypeError):
    pass


class UnsupportedRingError(MathError):
    pass


class NotBijectiveError(MathError):
    pass


class InvalidMorphismError(MathError):
    pass


class InfeasibleError(MathError):
    pass


class WitnessCapExceeded(MathError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
