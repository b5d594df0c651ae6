"""Exception types shared across the package.

The CLI maps these onto exit codes, so the split matters: input-shaped
problems (bad literals, bad files, mismatched carriers) are distinct from
violated preconditions (infeasible witness, exhaustive-scan cap) and from
the internal "theorem violation" diagnostic, which should never fire unless
a carrier law or the engine itself is broken.
"""

from __future__ import annotations


class PairboundError(Exception):
    """Base class for all errors raised by this package."""


class CarrierMismatchError(PairboundError, ValueError):
    """Operands (or a bound) do not share one carrier."""


class DomainError(PairboundError, ValueError):
    """A value lies outside its carrier's domain (wrong type, sign, or dimension)."""


class ElementParseError(PairboundError, ValueError):
    """A textual element literal does not match the carrier's grammar."""


class MatchingError(PairboundError, ValueError):
    """Pairs do not form a perfect matching of {1..2n}, or a matching literal is malformed."""


class IngestError(PairboundError, ValueError):
    """A dataset file or inline value list could not be read.

    Carries the 1-based position of the offending token where known:
    ``line`` is the file line, ``column`` is the cell index (CSV) or the
    character offset (bracketed lines / inline values).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleWitnessError(PairboundError, ValueError):
    """The supplied witness matching does not satisfy the strict bound."""


class CapExceededError(PairboundError, ValueError):
    """An exhaustive scan was requested above the configured cap."""


class CertificateFormatError(PairboundError, ValueError):
    """A certificate document cannot be converted to typed form."""


class TheoremViolationError(PairboundError, RuntimeError):
    """An exchange step failed a check that the bounding theorems guarantee.

    This is a hard diagnostic, not a recoverable condition: it can only
    arise from a broken carrier law or a defect in the engine. ``state``
    holds a full dump of the instance and the step under construction.
    """

    def __init__(self, message: str, state: dict | None = None):
        self.state = dict(state or {})
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if not self.state:
            return base
        lines = [base, "state dump:"]
        lines += [f"  {key}: {value}" for key, value in self.state.items()]
        return "\n".join(lines)
