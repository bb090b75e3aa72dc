"""Exception hierarchy shared by every stage of the pipeline."""


class EDSError(Exception):
    """Base class for all errors raised by :mod:`edslab`."""


class InputRejected(EDSError):
    """Input does not satisfy a precondition (CLI exit code 2)."""


class NotDivisible(InputRejected):
    """The initial quadruple violates W2 | W4."""


class InvalidInitial(InputRejected):
    """W1 is not a unit, or a literal could not be parsed."""


class DegenerateSequence(InputRejected):
    """W2*W3 == 0, or a zero term blocks the requested computation."""


class SingularSequence(InputRejected):
    """The sequence has vanishing discriminant or a zero initial term."""


class SingularCurve(InputRejected):
    """The Weierstrass model has zero discriminant."""


class FormMismatch(InputRejected):
    """Curve or point is not in the shape an operation requires."""


class TorsionPoint(InputRejected):
    """A multiple of the point is the identity (bounded sequence)."""


class DegenerateInput(InputRejected):
    """Analytic data sits on a rational (torsion) value of beta."""


class EvenTerm(InputRejected):
    """A term required to be odd (2-power subsequence) is even."""


class PrecisionExhausted(EDSError):
    """Working precision is too small to decide a floor or a bit (exit code 3)."""


class InternalInconsistency(EDSError):
    """A recursion or exactness check failed (exit code 4)."""


class InexactDivision(InternalInconsistency):
    """An exact division left a remainder."""


class RecursionFailure(InternalInconsistency):
    """A signed sequence fails the EDS recursion."""


class NoWitnessFound(EDSError):
    """No violation of the realizability criterion below the search bound."""

    def __init__(self, bound: int):
        super().__init__(f"no realizability violation found for n <= {bound}")
        self.bound = bound
