"""
Discrete, recoverable state: undo, redo, and shake-to-reset
===========================================================

Every state-changing interaction pushes exactly one history entry, selection
toggles included, so a fat-finger mistake is always one undo away. Shaking
resets to the initial view; the reset itself is undoable.
"""

from touchviz.demo import load_demo
from touchviz.engine import Session
from touchviz.gesture import DoubleTap, MenuCommand, Shake, Tap

spec, schema, data = load_demo("population")
session = Session(spec, data)
initial = session.snapshot()

session.dispatch(Tap(session.scene.marks[3].center))      # select a bar
session.dispatch(Tap(session.scene.marks[7].center))      # add another
session.dispatch(DoubleTap((0.0, 0.0)))                   # focus on the pair
print("pushes so far:", len(session.history.past))
print("visible bars:", len(session.scene.marks))

session.dispatch(MenuCommand("history.undo"))
print("after undo, visible bars:", len(session.scene.marks))
session.dispatch(MenuCommand("history.redo"))
print("after redo, visible bars:", len(session.scene.marks))

session.dispatch(Shake())                                 # reset view
print("reset matches initial snapshot:", session.snapshot() == initial)
session.dispatch(MenuCommand("history.undo"))             # resets are undoable
print("undo after reset restores the focus:", len(session.scene.marks) == 2)
