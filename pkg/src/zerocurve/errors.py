"""Exception types shared by the symbolic and numeric engines."""


class ZeroCurveError(Exception):
    """Base class for every error raised by this package."""


class MissingFlowAssignment(ZeroCurveError, KeyError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no time-derivative rule for field symbol {symbol!r}")

    def __str__(self):
        return self.args[0]


class NotExactDerivative(ZeroCurveError, ValueError):
    """The expression has no differential-polynomial antiderivative."""


class DegreeTooLow(ZeroCurveError, ValueError):
    pass


class DegenerateDeterminant(ZeroCurveError, ValueError):
    """det H <= 0 at some grid points; ``indices`` lists them."""

    def __init__(self, indices, message=None):
        self.indices = [int(i) for i in indices]
        if message is None:
            shown = ", ".join(str(i) for i in self.indices[:20])
            more = "" if len(self.indices) <= 20 else f", ... ({len(self.indices)} total)"
            message = f"det H <= 0 at grid indices [{shown}{more}]"
        super().__init__(message)


class SolverOverflow(ZeroCurveError, ArithmeticError):
    pass


class OutOfWindow(ZeroCurveError, ValueError):
    pass


class StepUnderflow(ZeroCurveError, ArithmeticError):
    pass


class NonZeroTrace(ZeroCurveError, ValueError):
    pass


class CutoffTooSmall(ZeroCurveError, ValueError):
    pass


class CFLViolation(ZeroCurveError, ValueError):
    pass


class WindowTooSmall(ZeroCurveError, ValueError):
    pass
