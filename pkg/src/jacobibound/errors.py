"""Exception hierarchy shared by all modules.

Every error derives from ``ValueError`` so callers that only care about
"bad input" can catch that; the CLI maps :class:`Infeasible` subclasses to
exit status 2 and everything else to exit status 1.
"""


class JacobiError(ValueError):
    """Base class of the package's errors."""


class Infeasible(JacobiError):
    """The requested object does not exist for this input."""


class InfeasibleCanon(Infeasible):
    """No canon exists: the tropical determinant is -inf or a row is empty."""


class NotMaximalFamily(Infeasible):
    """The given transversal family does not realise a maximal transversal sum."""


class NoSuchCanon(Infeasible):
    """No canon satisfies the prescribed maxima / lower bounds."""


class NotACanon(JacobiError):
    """The supplied increments (or maxima) do not form a canon."""


class NotACover(JacobiError):
    """Some entry exceeds μ_i + ν_j."""


class NotMinimal(JacobiError):
    """The cover is valid but its total exceeds the tropical determinant."""


class ShiftTooLarge(JacobiError):
    """The requested cover shift exceeds the admissible bound."""


class NegativeCycle(Infeasible):
    """A negative cycle makes shortest distances undefined.

    ``cycle`` lists the vertices of a witness cycle (first vertex repeated
    at the end).
    """

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"negative cycle: {' -> '.join(map(str, self.cycle))}")


class NonLinearSystem(JacobiError):
    """A polynomial is not linear homogeneous in the derivatives."""


class NonConstantCoefficients(JacobiError):
    """A derivative is multiplied by another unknown."""


class ParseError(JacobiError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
