"""
Exception hierarchy. Failing identity checks are reported as data (CheckReport),
these exceptions cover precondition failures and pipeline aborts.
"""


class LoopConfError(Exception):
    """Base class for all errors raised by the package."""


class NotDivisible(LoopConfError):
    """Exact division failed; often witnesses a broken lemma hypothesis."""

    def __init__(self, dividend, divisor, message=None):
        self.dividend = dividend
        self.divisor = divisor
        super().__init__(message or f"{dividend} is not divisible by {divisor}")


class NotInvertible(LoopConfError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"{value} is not a unit")


class PolySyntaxError(LoopConfError):
    """Malformed polynomial text; position is a 0-based character offset."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class RegionExhausted(LoopConfError):
    """Truncation left no coefficients that can be trusted."""


class NotLocal(LoopConfError):
    pass


class WindowExceeded(LoopConfError):
    pass


class ZeroParameter(LoopConfError):
    pass


class BadSequence(LoopConfError):
    pass


class ZeroScale(LoopConfError):
    pass


class VerificationFailed(LoopConfError):
    pass


class NotShiftInvariant(LoopConfError):
    pass


class NoSolution(LoopConfError):
    pass


class DichotomyViolated(LoopConfError):
    def __init__(self, message, witnesses=None):
        self.witnesses = witnesses or []
        super().__init__(message)


class ShapeMismatch(LoopConfError):
    pass


class CocycleViolated(LoopConfError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class PipelineStepFailed(LoopConfError):
    """A classification step broke; lemma names the result being replayed."""

    def __init__(self, lemma, message):
        self.lemma = lemma
        super().__init__(f"[{lemma}] {message}")


class DocumentError(LoopConfError):
    pass


class ParseError(DocumentError):
    def __init__(self, message, position=None, entry=None):
        self.position = position
        self.entry = entry
        super().__init__(message)


class ValidationError(DocumentError):
    def __init__(self, message, entry=None):
        self.entry = entry
        super().__init__(message)


class UsageError(LoopConfError):
    pass


class UndetectedMutant(LoopConfError):
    def __init__(self, labels):
        self.witnesses = list(labels)
        super().__init__(f"{len(self.witnesses)} mutant(s) passed every checker: {', '.join(self.witnesses)}")
