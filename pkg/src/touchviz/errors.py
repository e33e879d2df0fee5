"""Exception types shared across the package.

Every error carries a stable ``code`` (its class name) so the engine can
surface it on the wire without leaking tracebacks to renderers.
"""


class TouchVizError(Exception):
    """Base class for all package errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class SpecError(TouchVizError):
    """Chart spec / schema / encoding mismatch."""


class EmptyDomain(TouchVizError):
    """Scale requested over an empty value list."""


class EmptyDataset(TouchVizError):
    """Data file contained a header but no rows (or nothing at all)."""


class ParseError(TouchVizError):
    """An input file cell could not be parsed; names the row and column."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class ProtocolError(TouchVizError):
    """Raw input stream violated touch protocol (orphan pointer, time regression)."""

    def __init__(self, message: str, pointer_id: int | None = None):
        super().__init__(message)
        self.pointer_id = pointer_id


class EmptySteps(TouchVizError):
    """Even-step mapping requested with zero steps."""


class InspectionUnavailable(TouchVizError):
    """Inspection cannot run on this scene/axis (no marks, or bar-chart y axis)."""


class NoTarget(TouchVizError):
    """Selection op invoked on a position/category that hits nothing selectable."""


class FocusRequiresSelection(TouchVizError):
    """Focus (double tap) invoked with an empty selection."""


class RemoveWouldEmptyView(TouchVizError):
    """Removing the selection would leave zero visible rows."""


class AggregateRequiresSelection(TouchVizError):
    """Aggregate menu command invoked with no active selection."""


class NothingToUndo(TouchVizError):
    """Undo with an empty past stack."""


class NothingToRedo(TouchVizError):
    """Redo with an empty future stack."""


class ReplayError(TouchVizError):
    """Trace replay halted; names the offending event index."""

    def __init__(self, message: str, event_index: int | None = None):
        super().__init__(message)
        self.event_index = event_index
