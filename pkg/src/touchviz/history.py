"""Bounded undo/redo/reset stack over ViewState snapshots.

Full-state snapshots beat command/inverse pairs here: states are small row-id
sets plus domains, and snapshot equality keeps the replay tests trivial.
"""

from __future__ import annotations

from .errors import NothingToRedo, NothingToUndo
from .state import ViewState

DEFAULT_CAP = 100


class History:
    def __init__(self, initial: ViewState, cap: int = DEFAULT_CAP):
        if cap < 1:
            raise ValueError("history cap must be >= 1")
        self.initial = initial
        self.current = initial
        self.past: list[ViewState] = []
        self.future: list[ViewState] = []
        self.cap = cap

    def can_undo(self) -> bool:
        return bool(self.past)

    def can_redo(self) -> bool:
        return bool(self.future)

    def push(self, state: ViewState) -> None:
        """Make `state` current. Rejecting no-op pushes is the caller's job."""
        if state == self.current:
            raise ValueError("refusing a no-op push; caller must guard")
        self.past.append(self.current)
        self.current = state
        self.future.clear()
        if len(self.past) > self.cap:
            # Evict the oldest entry, but never the session's initial state.
            drop = 1 if self.past[0] == self.initial else 0
            del self.past[drop]

    def undo(self) -> ViewState:
        if not self.past:
            raise NothingToUndo("no earlier state")
        self.future.append(self.current)
        self.current = self.past.pop()
        return self.current

    def redo(self) -> ViewState:
        if not self.future:
            raise NothingToRedo("no later state")
        self.past.append(self.current)
        self.current = self.future.pop()
        return self.current

    def reset(self) -> ViewState:
        """Return to the initial state; the jump itself is undoable."""
        if self.current != self.initial:
            self.push(self.initial)
        return self.current
