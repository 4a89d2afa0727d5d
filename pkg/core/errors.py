# core/errors.py
"""Error hierarchy shared by every hyloc package.

Each error carries a stable code so CLI diagnostics stay machine-grepable:

    E-CONFIG scenarios/lab.yaml:12: missing section: anchors
"""

from typing import Optional


class HylocError(Exception):
    """Base class. `source` is a file path, `line` a 1-based line/row number."""

    code = "E-HYLOC"

    def __init__(self, message: str, *, source: Optional[str] = None, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.source = source
        self.line = line

    def at(self, source: Optional[str] = None, line: Optional[int] = None) -> "HylocError":
        """Return a copy of this error anchored to a file location."""
        return type(self)(
            self.message,
            source=source if source is not None else self.source,
            line=line if line is not None else self.line,
        )

    def __str__(self) -> str:
        where = ""
        if self.source is not None:
            where = f"{self.source}:{self.line}: " if self.line is not None else f"{self.source}: "
        elif self.line is not None:
            where = f"line {self.line}: "
        return f"{self.code} {where}{self.message}"


class ConfigurationError(HylocError):
    code = "E-CONFIG"


class DataError(HylocError):
    code = "E-DATA"


class OrderingError(HylocError):
    code = "E-ORDER"


class SingularityError(HylocError):
    code = "E-SINGULAR"


class SensorRangeError(HylocError):
    code = "E-RANGE"


class FitError(HylocError):
    code = "E-FIT"


class UsageError(HylocError):
    code = "E-USAGE"
