"""Shared exception types.

Every domain failure raised by the engine derives from SimulationError and
carries a short machine-readable ``code`` so callers (CLI exit paths, the HTTP
gateway, the board UI) can react without parsing prose.
"""

from __future__ import annotations

import time


class SimulationError(ValueError):
    """Base class for physics/contract violations."""

    code = "simulation-error"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class LayoutError(SimulationError):
    code = "invalid-layout"


class StateFormatError(SimulationError):
    code = "invalid-state-string"


class PhotonNumberError(SimulationError):
    code = "photon-number-mismatch"


class PauliExclusionError(SimulationError):
    code = "fermionic-multi-occupation"


class UnitarityError(SimulationError):
    code = "not-unitary"

    def __init__(self, message: str, *, max_deviation: float | None = None):
        super().__init__(message)
        self.max_deviation = max_deviation


class FileFormatError(SimulationError):
    """Malformed on-disk input. Carries enough position info to point at the cell."""

    code = "file-format"

    def __init__(self, message: str, *, path: str | None = None,
                 row: int | None = None, column: str | None = None):
        where = []
        if path is not None:
            where.append(str(path))
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.path = path
        self.row = row
        self.column = column


class BudgetExceededError(SimulationError):
    """Raised when a computation exceeds the caller-supplied time budget."""

    code = "budget-exceeded"


def check_deadline(deadline: float | None) -> None:
    """Raise once time.monotonic() passes the caller's absolute deadline.

    Long-running loops call this between independent work items; None
    disables the budget entirely.
    """
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError("computation exceeded its time budget")
