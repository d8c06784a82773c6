"""
Exceptions raised by :py:mod:`specden`.

Every exception carries a stable machine-readable ``code`` and a human
message. The command line converts them into the structured stderr payload
``{"code": ..., "message": ...}`` and an exit status taken from
``exit_code``.
"""


class SpecdenError(Exception):
    """
    Base class for every error raised by the library.
    It mirrors a message-object exception: the message is stored on ``msg``
    and returned by :py:meth:`__str__`, falling back to ``default_msg``.
    """

    code = "internal"
    exit_code = 1
    default_msg = "An internal error occurred."

    def __init__(self, msg=None):
        """
        Initialize the Exception and create a descriptive error message.

        Args:
            msg (str, optional): Add a message for the user. Defaults to :py:data:`None`.
        """
        Exception.__init__(self)
        self.msg = msg
        if self.msg is None:
            self.msg = self.default_msg

    def __str__(self):
        """
        Return the message.

        Returns:
            str: The message for the user.
        """
        return self.msg

    def as_dict(self):
        """
        Build the payload written to stderr by the command line.

        Returns:
            dict: ``{"code": ..., "message": ...}``.
        """
        return {"code": self.code, "message": self.msg}


class InvalidSpecError(SpecdenError):
    """An ensemble specification or command line flag is malformed."""

    code = "invalid_spec"
    exit_code = 2
    default_msg = "The ensemble specification is invalid."


class ZeroDenominatorError(SpecdenError):
    """A rational function was built with a zero denominator."""

    code = "zero_denominator"
    default_msg = "Denominator polynomial is zero."


class TruncationTooShortError(SpecdenError):
    """A truncated series is too short to yield any valid output term."""

    code = "truncation_too_short"
    default_msg = "Series truncation order is too short for this operation."


class UnsupportedBetaError(SpecdenError):
    """The (family, beta) pair is outside the operator catalog."""

    code = "unsupported_beta"
    exit_code = 2
    default_msg = "No differential operator is known for this (family, beta)."


class UnsupportedFamilyError(SpecdenError):
    """The ensemble family is not handled by the requested pipeline."""

    code = "unsupported_family"
    exit_code = 2
    default_msg = "This pipeline does not support the requested family."


class UnsupportedNError(SpecdenError):
    """A differential-difference system was requested for an unsupported size."""

    code = "unsupported_n"
    exit_code = 2
    default_msg = "Matrix systems are only available for n in {2, 4, 6}."


class StructureMismatchError(SpecdenError):
    """An algebraic object does not have the structure an algorithm relies upon."""

    code = "structure_mismatch"
    default_msg = "The input does not have the required algebraic structure."


class InsufficientMomentsError(SpecdenError):
    """Too few moments were supplied to reduce a resolvent equation."""

    code = "insufficient_moments"
    exit_code = 2
    default_msg = "Not enough initial moments were supplied."


class SingularSystemError(SpecdenError):
    """A triangular solve met a zero pivot."""

    code = "singular_system"
    default_msg = "The triangular system has a zero pivot."


class DivergentMomentError(SpecdenError):
    """A negative moment was requested outside its convergence range."""

    code = "divergent_moment"
    exit_code = 2
    default_msg = "The requested negative moment diverges (need |k| < a + 1)."


class RangeTooSmallError(SpecdenError):
    """A table does not cover the index range a check requires."""

    code = "range_too_small"
    exit_code = 2
    default_msg = "The table does not cover the index range required."


class ToleranceNotMetError(SpecdenError):
    """A numerical routine could not reach its accuracy target."""

    code = "tolerance_not_met"
    default_msg = "The numerical tolerance was not met."


class SeedUnstableError(SpecdenError):
    """The edge solution depends on the seeding point beyond tolerance."""

    code = "seed_unstable"
    default_msg = "Moving the seed point changes the solution beyond tolerance."


class SizeLimitError(SpecdenError):
    """A symbolic expansion grew past the configured bound."""

    code = "size_limit"
    exit_code = 2
    default_msg = "The symbolic expansion exceeds the configured size limit."


class DomainExceededError(SpecdenError):
    """A special function was evaluated outside its supported domain."""

    code = "domain_exceeded"
    exit_code = 2
    default_msg = "Argument outside the supported domain."


class NoHardEdgeError(SpecdenError):
    """A hard edge was requested for an ensemble without one."""

    code = "no_hard_edge"
    exit_code = 2
    default_msg = "The Gaussian ensemble has no hard edge."
