from typing import Optional, Sequence


class ToricError(Exception):
    """Root of every error raised by the toric toolkit."""

    def __init__(self, message: str, witness: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.witness = tuple(witness) if witness else ()

    def __str__(self) -> str:
        base = super().__str__()
        if self.witness:
            return f"{base} (witness: {', '.join(self.witness)})"
        return base


class InputError(ToricError):
    """Malformed poset or polynomial file."""


# --- poset-core ---

class CycleDetected(ToricError):
    pass


class MultipleMinima(ToricError):
    pass


class NoMinimum(ToricError):
    pass


class NoRank(ToricError):
    pass


class RankMismatch(ToricError):
    pass


class NotGraded(ToricError):
    pass


class NotComparable(ToricError):
    pass


class NotEulerian(ToricError):
    pass


class NotLowerEulerian(ToricError):
    pass


class NotSimplicial(ToricError):
    pass


class NotDualSimplicial(ToricError):
    pass


class ParameterOutOfRange(ToricError):
    pass


class IndexOutOfRange(ToricError):
    pass


class UnknownFamily(ToricError):
    pass


# --- polynomials ---

class EvalAtZeroWithNegativeExponents(ToricError):
    pass


class NegativeExponentPresent(ToricError):
    pass


class NotMultSymmetric(ToricError):
    pass


class NotAddSymmetric(ToricError):
    pass


class UnexpectedParity(ToricError):
    pass


# --- flag vectors and noncommutative indices ---

class KindMismatch(ToricError):
    pass


class AlphabetMismatch(ToricError):
    pass


class OddEWordPresent(ToricError):
    """A ce-word whose e-positions are not an even set: the source is not Eulerian."""


# --- dual simplicial ---

class ConsecutiveDescents(ToricError):
    pass


class AsymmetricHVector(ToricError):
    pass


class DecompositionMismatch(ToricError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class NonIntegralCoefficient(ToricError):
    """A coefficient table entry that should be an integer came out fractional."""
