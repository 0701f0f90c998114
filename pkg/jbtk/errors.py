class JbtkError(Exception):
    """
    Base class for every error raised by jbtk
    """


class SpaceMismatchError(JbtkError):
    """
    Operands live in different triple spaces, or a block has the wrong shape
    """


class NumericalError(JbtkError):
    """
    A decomposition failed, or a computed object misses its defining identity
    """
    def __init__(self, message, block=None, residual=None):
        """
        Args:
            message: Human-readable description
            block: (Optional) Index of the offending block
            residual: (Optional) The residual that exceeded tolerance
        """
        JbtkError.__init__(self, message)
        self.block = block
        self.residual = residual


class NotTripotentError(JbtkError):
    """
    An element failed tripotent validation
    """
    def __init__(self, message, residual=None):
        JbtkError.__init__(self, message)
        self.residual = residual


class NotInvertibleError(JbtkError):
    """
    A Jordan inverse was requested for a non-invertible element
    """


class InapplicableError(JbtkError):
    """
    The hypotheses of a check are not met; neither a pass nor a failure
    """


class ConsistencyError(JbtkError):
    """
    Two characterizations of the same property disagree
    """
    def __init__(self, message, checks=None):
        """
        Args:
            message: Human-readable description
            checks: (Optional) Map of characterization name to its verdict
        """
        JbtkError.__init__(self, message)
        self.checks = checks or {}


class InfeasibleRecipeError(JbtkError):
    """
    A generator recipe cannot be realized in the requested spaces
    """


class InputError(JbtkError):
    """
    Malformed input file or document
    """
    def __init__(self, message, line=None, column=None):
        JbtkError.__init__(self, message)
        self.line = line
        self.column = column
