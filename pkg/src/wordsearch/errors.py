"""Exception types shared across the package.

Each error carries an ``exit_code`` used by the command line front end.
"""


class WordSearchError(Exception):
    exit_code = 1


class TrivialWord(WordSearchError, ValueError):
    """Word is too short or uses a single distinct letter."""

    exit_code = 2


class ParseError(WordSearchError, ValueError):
    exit_code = 3


class CertificateInvalid(WordSearchError):
    exit_code = 4

    def __init__(self, message, condition=None, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


class BudgetExceeded(WordSearchError):
    """Search stopped early; ``best`` is a lower bound, not the optimum."""

    exit_code = 5

    def __init__(self, message, best=None, witness=None, nodes=0):
        super().__init__(message)
        self.best = best
        self.witness = witness
        self.nodes = nodes


class DimensionMismatch(WordSearchError, ValueError):
    exit_code = 6


class ShapeError(WordSearchError, ValueError):
    exit_code = 6


class ShapeMismatch(ShapeError):
    pass


class NotPeriodic(WordSearchError, ValueError):
    exit_code = 6


class IndexOutOfRange(WordSearchError, IndexError):
    exit_code = 6


class GcdError(WordSearchError, ValueError):
    exit_code = 6


class UnmappedLetter(WordSearchError, KeyError):
    exit_code = 6

    def __str__(self):
        return str(self.args[0]) if self.args else "unmapped letter"


class MixedParity(WordSearchError, ValueError):
    exit_code = 6


class DomainError(WordSearchError, ValueError):
    exit_code = 6


class EmptySupport(WordSearchError, ValueError):
    exit_code = 6


class DegenerateConstruction(WordSearchError, ValueError):
    exit_code = 6
