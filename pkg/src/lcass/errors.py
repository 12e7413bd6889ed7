"""Exception hierarchy shared by all layers.

Every error carries a short machine-readable ``code`` so that reports and the
command line can classify failures without string matching.
"""


class LcassError(Exception):
    code = "error"


class MalformedInput(LcassError, ValueError):
    code = "malformed-input"


class ContextMismatch(LcassError, ValueError):
    code = "context-mismatch"


class UnsupportedField(LcassError):
    code = "unsupported-field"


class NotInMaximalIdeal(LcassError, ValueError):
    code = "not-in-m"


class NotLocal(LcassError, ValueError):
    code = "not-local"


class NoAvoider(LcassError):
    """Raised when an ideal lies inside one of the primes to be avoided."""

    code = "no-avoider"

    def __init__(self, msg, prime=None):
        super().__init__(msg)
        self.prime = prime


class FieldTooSmall(LcassError):
    code = "field-too-small"


class ExceedsDepth(LcassError):
    code = "exceeds-depth"


class NoTop(LcassError):
    code = "no-top"


class NotASequence(LcassError):
    code = "not-a-sequence"


class TooManyPermutations(LcassError):
    code = "too-many-permutations"


class Inconclusive(LcassError):
    code = "inconclusive"


class RankMismatch(LcassError, ValueError):
    code = "rank-mismatch"


class DecompositionFailure(LcassError):
    """Randomised decomposition did not certify within its retry budget."""

    code = "decomposition-failure"

