"""Exception types shared across the package."""


class QrefineError(Exception):
    """Base class for all qrefine errors."""


class DimensionMismatch(QrefineError):
    pass


class LengthMismatch(QrefineError):
    pass


class IndexOutOfRange(QrefineError):
    pass


class SingularMatrix(QrefineError):
    pass


class NotSymmetric(QrefineError):
    pass


class TooLarge(QrefineError):
    pass


class TooManyQubits(QrefineError):
    pass


class ParseError(QrefineError):
    pass
