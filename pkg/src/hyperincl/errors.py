"""Exception hierarchy shared by the kernel, the matrix layer and the CLI."""


class HyperInclError(Exception):
    """Base class for all library errors."""


class ScalarOverflowError(HyperInclError, OverflowError):
    def __init__(self, op, x, y):
        super().__init__(f"{op}({x!r}, {y!r}) overflowed")
        self.op = op
        self.operands = (x, y)


class DivisionByZeroError(HyperInclError, ZeroDivisionError):
    pass


class PreconditionError(HyperInclError, ValueError):
    pass


class DimensionError(HyperInclError, ValueError):
    pass


class EmptyIntersectionError(HyperInclError, ValueError):
    """Raised when an intersection step produces an empty interval.

    ``index`` is the offending ``(i, j)`` entry when the failure happened
    inside a matrix, ``step`` the iteration index when raised by a driver.
    """

    def __init__(self, message, index=None, step=None):
        super().__init__(message)
        self.index = index
        self.step = step


class NoInitialEnclosureError(HyperInclError):
    pass


class NoConvergenceError(HyperInclError):
    pass


class ConvergenceConditionError(HyperInclError):
    """The sufficient convergence condition could not be verified in strict mode."""


class ParseError(HyperInclError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
