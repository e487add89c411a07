"""Exception types shared across the package."""


class QrandcertError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(QrandcertError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class NotPSD(QrandcertError):
    """Input matrix has an eigenvalue below the PSD tolerance."""


class NoConvergence(QrandcertError):
    """An iterative routine hit its iteration cap without converging."""


class DimensionMismatch(QrandcertError):
    """Operands have incompatible dimensions."""


class TraceNotOne(QrandcertError):
    """Candidate density matrix does not have unit trace."""


class OutOfRange(QrandcertError):
    """A scalar parameter lies outside its documented range."""


class InvalidWeights(QrandcertError):
    """Mixing weights are negative or do not sum to one."""


class BadRank(QrandcertError):
    """Requested rank is not between 1 and the dimension."""


class NotOrthonormal(QrandcertError):
    """Vectors fail the pairwise orthonormality check."""


class NotComplete(QrandcertError):
    """Vectors do not resolve the identity."""


class InfeasibleK(QrandcertError):
    """Family parameter k lies outside the feasibility window."""


class BadMap(QrandcertError):
    """Outcome grouping is not a valid map on the measurement outcomes."""


class NotRankOne(QrandcertError):
    """Operation requires a rank-one projective measurement."""


class NotFourDim(QrandcertError):
    """Product-basis search requires a two-qubit (dimension-4) state."""


class NoSuccess(QrandcertError):
    """Search exhausted its restarts; carries the best result found."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParseError(QrandcertError):
    """Input file is not valid JSON or does not match the schema."""


class BracketTooWide(UserWarning):
    """Primal-dual gap stayed above threshold; value is bracketed, not exact."""
