"""Exception hierarchy shared by all geoflow modules."""

from __future__ import annotations


class GeoflowError(Exception):
    """Base class. ``module`` names the subsystem that raised."""

    module = "geoflow"


class SpeedSyntaxError(GeoflowError, ValueError):
    """Malformed speed expression. ``offset`` is a UTF-8 byte offset."""

    module = "symfun"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SpeedEvaluationError(GeoflowError, ArithmeticError):
    module = "symfun"


class TubeDomainError(GeoflowError, ValueError):
    module = "tube"


class IntegrationError(GeoflowError, RuntimeError):
    """Integrator failure; ``state`` holds the last good (t, r) if any."""

    module = "radial_flow"

    def __init__(self, message: str, state: tuple[float, float] | None = None):
        super().__init__(message if state is None else f"{message}; last good state t={state[0]!r}, r={state[1]!r}")
        self.state = state


class ClassificationError(GeoflowError, RuntimeError):
    module = "classify"


class DegenerateSpeedError(ClassificationError):
    """Speed non-positive or non-finite where a lifetime needs it positive."""


class SurfaceError(GeoflowError, ValueError):
    module = "gb2d"
