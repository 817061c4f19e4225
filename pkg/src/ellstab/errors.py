"""Exception classes shared across the package."""


class EllstabError(Exception):
    """Base class for all package errors."""


class InvalidCurve(EllstabError):
    """Pair (A, B) violates the curve invariants (singular or non-minimal)."""


class BadReduction(EllstabError):
    """Prime divides the discriminant; the curve has no good reduction there."""


class SingularReduction(EllstabError):
    """4r^3 + 27s^2 = 0 mod p; (r, s) does not define an elliptic curve."""


class InvalidDiscriminant(EllstabError):
    """Hurwitz class numbers are only defined for n > 0 with n = 0, 3 mod 4."""


class OutOfHasseRange(EllstabError):
    """Trace a with a^2 >= 4p has no associated curve count."""


class BudgetExceeded(EllstabError):
    """Exhaustive enumeration would exceed the configured size budget."""


class CorruptFile(EllstabError):
    """Trace cache file failed structural or checksum validation."""


class ConflictingEntry(EllstabError):
    """Two caches disagree on the trace of the same (A, B, p)."""


class ParseError(EllstabError):
    """Malformed row in an input CSV."""


class ConflictingRank(EllstabError):
    """Two rank rows for the same curve disagree."""
