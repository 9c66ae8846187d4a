"""Exception types shared across the library.

The CLI maps these onto exit codes: load/validation problems exit 2,
mathematical refusals (quantities the formulas need to be integers, or
inadmissible parameter combinations) exit 3, inconsistency findings exit 4.
"""


class WittenformError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(WittenformError):
    """Vector or matrix sizes do not match the ambient lattice rank."""


class UnimodularityError(WittenformError):
    """A Gram matrix is not symmetric unimodular."""


class TruncationError(WittenformError):
    """A coefficient or congruence was requested beyond a degree cap.

    Values of degree >= cap were dropped by truncation, so the answer is
    unknowable, not zero.
    """


class NonCharacteristicError(WittenformError):
    """A sign exponent came out half-integral: some class that the data
    promised to be characteristic is not. Treat as data corruption."""


class NonIntegralError(WittenformError):
    """A quantity the formulas require to be an integer is not.

    The library refuses rather than extending 2**(2-c) or congruences
    mod 4 to non-integral exponents.
    """


class InadmissibleDeltaError(WittenformError):
    """The requested degree violates the mod-4 admissibility congruence."""


class LevelError(WittenformError):
    """The level index is not a non-negative integer."""

    def __init__(self, reason, value):
        super().__init__(f"{reason} level: {value}")
        self.reason = reason  # "non-integral" or "negative"
        self.value = value


class LoadError(WittenformError):
    """A data file failed to parse or validate."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        loc = ""
        if path is not None:
            loc = f"{path}:"
            if line is not None:
                loc += f"{line}:"
            loc += " "
        elif line is not None:
            loc = f"line {line}: "
        super().__init__(loc + message)
