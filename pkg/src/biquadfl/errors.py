"""Exception taxonomy.

Two broad families, matching the CLI exit-code contract:

* DomainError (exit 3): the input is outside the supported domain --
  wrong kind of algebra, unsupported rank, a split algebra where a field
  is required, and so on.  These are *your* fault.
* ComputeError (exit 4): the computation itself could not be certified --
  precision ran out, a depth cap was hit, a square root that must exist
  numerically failed to exist.  These are *our* fault (or a genuinely
  degenerate configuration).

ConfigError (exit 2) is for malformed configuration files / CLI misuse.
"""


class BiquadError(Exception):
    """Base class for everything raised on purpose by this package."""


class ConfigError(BiquadError):
    """Malformed configuration or CLI arguments (exit code 2)."""


class DomainError(BiquadError):
    """Input outside the supported mathematical domain (exit code 3)."""


class ComputeError(BiquadError):
    """Certified computation failed or was interrupted (exit code 4)."""


# --- domain errors -------------------------------------------------------

class NotQuadratic(DomainError):
    """Minimal polynomial is not of degree 2, or element not quadratic."""


class InseparablePolynomial(DomainError):
    """Defining polynomial is inseparable (char 2: T^2 - d is not etale)."""


class NotFree(DomainError):
    """A module expected to be free of the right rank is not (e.g. an
    embedding of a split algebra with unbalanced idempotent ranks)."""


class RamifiedCharacterUnsupported(DomainError):
    """The quadratic character of K/K3 is ramified; there is no unramified
    character to twist by.  (The associated twisted integrals vanish
    identically instead.)"""


class UnsupportedRank(DomainError):
    """Operation implemented only for h=1 (or another fixed rank)."""


class UnsupportedExtension(DomainError):
    """No exact Frobenius table for the requested unramified extension."""


class NoSplitRealization(DomainError):
    """No split-side realization with the requested invariant exists."""


class DivisionByZero(DomainError):
    """Division by a zero or non-invertible scalar/element."""


class NotARoot(DomainError):
    """Claimed image does not satisfy the required minimal polynomial."""


class DimensionMismatch(DomainError):
    """An algebra or module has the wrong dimension (presentation checks)."""


class StructurallyOpaque(DomainError):
    """Split algebra classified exactly, but its idempotents are not
    rational, so componentwise operations are unavailable."""


# --- compute errors ------------------------------------------------------

class PrecisionExhausted(ComputeError):
    """A capped-precision value is indistinguishable from zero at its
    recorded precision, so its valuation cannot be certified."""


class NotASquare(ComputeError):
    """Reduced characteristic polynomial admits no monic square root."""


class NoConjugatorFound(ComputeError):
    """No invertible intertwiner between the two induced embeddings."""


class SingularGradingPart(ComputeError):
    """The graded part c+ - c- of a conjugator is not invertible."""


class NotRegularSemisimple(ComputeError):
    """Operation requires a regular semisimple pair."""


class VanishingFailed(ComputeError):
    """A quantity that must vanish identically did not."""


class DepthCapReached(ComputeError):
    """Stratified integration hit its depth cap with unresolved classes.

    Carries the partial result so callers can inspect how much volume is
    still unaccounted for.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
