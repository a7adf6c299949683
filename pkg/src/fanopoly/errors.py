"""Exception hierarchy shared by all modules."""


class FanoError(Exception):
    """Base class for every error raised by fanopoly."""


class LatticeError(FanoError, ValueError):
    """Invalid input to an exact linear-algebra routine."""


class SingularMatrixError(LatticeError):
    pass


class PolytopeError(FanoError, ValueError):
    """A vertex list that does not describe a valid lattice polytope."""


class NotFullDimensionalError(PolytopeError):
    """All points lie on a common hyperplane.

    ``normal`` and ``rhs`` describe a witness hyperplane
    ``<normal, x> = rhs`` containing every point.
    """

    def __init__(self, message, normal=None, rhs=None):
        super().__init__(message)
        self.normal = normal
        self.rhs = rhs


class PreconditionError(FanoError, ValueError):
    """An operation was called on a polytope outside its supported class."""


class NotSimplicialError(PreconditionError):
    pass


class NotReflexiveError(PreconditionError):
    pass


class OriginNotInteriorError(PreconditionError):
    pass


class UnsupportedClassError(PreconditionError):
    """Canonical forms need a facet whose vertices form a lattice basis."""


class InconsistencyError(FanoError, RuntimeError):
    """An internal consistency check failed (a proven statement was violated)."""


class ClassificationError(InconsistencyError):
    """A generated catalog does not have the expected number of classes."""

    def __init__(self, message, collisions=None):
        super().__init__(message)
        self.collisions = collisions or []


class ParseError(FanoError, ValueError):
    """Malformed polytope file. ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", token {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
