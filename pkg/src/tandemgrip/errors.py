"""Exception hierarchy for the gripper toolkit.

Every domain failure raises a subclass of ToolkitError so callers (and the
CLI) can separate usage problems from geometry/numerical ones.
"""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class GeometryInfeasible(ToolkitError):
    """Linkage or track geometry cannot be assembled at the requested input."""


class NegativeY(GeometryInfeasible):
    """Nut travel x at or beyond the pivot (y = p_y - l_n - x <= 0)."""


class DenominatorNonpositive(ToolkitError):
    """Lead-screw torque denominator pi*d_m - mu*l*sec(phi) <= 0."""


class SynthesisFailed(ToolkitError):
    """No cam control-point placement satisfied the requested constraints."""

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        msg = f"cam synthesis failed: {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PoseUnsolvable(ToolkitError):
    """No inner-path point lies at pin separation from the outer pin."""

    def __init__(self, u: float, detail: str = ""):
        self.u = u
        msg = f"finger pose unsolvable at u={u!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class OffsetExceedsRadius(ToolkitError):
    """Fruit offset larger than the fruit radius."""


class LpNumericalFailure(ToolkitError):
    """The LP solver did not converge; message carries the basis state."""


class CalibrationDiverged(ToolkitError):
    """No parameter set achieved mean relative error below 50%."""


class ParseError(ToolkitError):
    """CSV/JSON input could not be parsed; carries row/column location."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        self.row = row
        self.column = column
        loc = ""
        if row is not None:
            loc += f" row {row}"
        if column is not None:
            loc += f" column {column!r}"
        super().__init__(message + loc)
