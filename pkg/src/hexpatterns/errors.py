"""Exception hierarchy for hexpatterns."""


class HexPatternError(Exception):
    """Base class for all errors raised by this package."""


# -- geometry ---------------------------------------------------------------

class IndeterminateRatio(HexPatternError):
    """Multi-ratio has a cancelling 0/0 or inf/inf factor pattern."""


class DegenerateMap(HexPatternError):
    """Moebius coefficients with vanishing determinant."""


class DuplicatePoints(HexPatternError):
    """Circle construction received coincident points."""


# -- field propagation ------------------------------------------------------

class ZeroEdge(HexPatternError):
    """An edge difference of u or v vanishes."""


class DegenerateTriangle(HexPatternError):
    """Triangle similarity residual has a vanishing denominator."""


class SplitPointsCoincide(HexPatternError):
    """Fourth-point step impossible: the two split values coincide."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class PropagationError(HexPatternError):
    """A solver step failed; carries the failing cell coordinates."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class PathDependent(HexPatternError):
    """Edge-wise integration does not close around a triangle."""


class InconsistentAroundVertex(HexPatternError):
    """Companion-field propagation disagrees around an interior vertex."""


# -- transition matrices ----------------------------------------------------

class TripleNotUnit(HexPatternError):
    """Edge triple violates f*g*h = 1."""


class DisconnectedPath(HexPatternError):
    """Transport path contains a non-neighbor step."""


class ShapeViolation(HexPatternError):
    """Wave-function derivative is not of the expected cyclic shape."""


class NotFlat(HexPatternError):
    """Square factorisations disagree: L1*L2 != L3*L4."""


class NotInClass(HexPatternError):
    """Extracted square matrix is not of the unipotent three-band form."""


# -- constrained solutions --------------------------------------------------

class SingularDenominator(HexPatternError):
    """A star denominator f_j*g_j + g_j*f_{j+3} + f_{j+3}*g_{j+3} vanishes."""


class SingularStep(HexPatternError):
    """Axis recurrence denominator vanished at step k."""

    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class PoleAt(HexPatternError):
    """Closed-form product has a vanishing factor for this parameter."""

    def __init__(self, message, alpha=None, k=None):
        super().__init__(message)
        self.alpha = alpha
        self.k = k


# -- patterns ---------------------------------------------------------------

class CircularityViolation(HexPatternError):
    """A generated hexagon is not concyclic within tolerance."""

    def __init__(self, message, cell=None, deviation=None):
        super().__init__(message)
        self.cell = cell
        self.deviation = deviation


class CircleConstructionFailure(HexPatternError):
    """Row propagation could not construct a next-row circle."""


class SeamMismatch(HexPatternError):
    """Rotated sector copies do not agree on their shared boundary."""


# -- persistence / rendering ------------------------------------------------

class SchemaVersionMismatch(HexPatternError):
    """Document schema version is not supported."""


class ParseError(HexPatternError):
    """Document is malformed; message names the offending key."""


class NothingToRender(HexPatternError):
    """Document contains no finite renderable geometry."""
