"""Deterministic touch/motion gesture recognition.

The recognizer is a pure function of event timestamps: it never reads a wall
clock, so replaying a recorded stream (flush events included) reproduces the
exact same gesture sequence. Taps are deferred by the double-tap gap and
released when a later timestamp proves the gap expired; a qualifying second
tap inside the gap turns into a DoubleTap and suppresses both Taps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ProtocolError


@dataclass(frozen=True)
class GestureConfig:
    tap_max_ms: float = 300.0
    tap_slop_dip: float = 10.0
    double_tap_gap_ms: float = 300.0
    double_tap_radius_dip: float = 24.0
    swipe_min_velocity_dip_per_s: float = 800.0
    swipe_max_duration_ms: float = 250.0
    swipe_min_distance_dip: float = 60.0
    shake_threshold_mps2: float = 20.0
    shake_min_samples: int = 3
    shake_window_ms: float = 500.0
    shake_debounce_ms: float = 1000.0
    gravity_alpha: float = 0.8

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if v <= 0:
                raise ValueError(f"gesture config {name} must be positive")


class RawKind(str, Enum):
    TOUCH_DOWN = "touchDown"
    TOUCH_MOVE = "touchMove"
    TOUCH_UP = "touchUp"
    MOTION_SAMPLE = "motionSample"
    MENU_COMMAND = "menuCommand"
    JOYSTICK_TOGGLE = "joystickToggle"
    FLUSH = "flush"


@dataclass(frozen=True)
class RawInputEvent:
    t: float  # milliseconds, non-decreasing within a stream
    kind: RawKind
    pointer_id: int | None = None
    pos: tuple[float, float] | None = None
    accel: tuple[float, float, float] | None = None
    command: str | None = None


def touch_down(t: float, pointer_id: int, x: float, y: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.TOUCH_DOWN, pointer_id=pointer_id, pos=(x, y))


def touch_move(t: float, pointer_id: int, x: float, y: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.TOUCH_MOVE, pointer_id=pointer_id, pos=(x, y))


def touch_up(t: float, pointer_id: int, x: float, y: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.TOUCH_UP, pointer_id=pointer_id, pos=(x, y))


def motion_sample(t: float, ax: float, ay: float, az: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.MOTION_SAMPLE, accel=(ax, ay, az))


def menu_command(t: float, command: str) -> RawInputEvent:
    return RawInputEvent(t, RawKind.MENU_COMMAND, command=command)


def joystick_toggle(t: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.JOYSTICK_TOGGLE)


def flush_event(t: float) -> RawInputEvent:
    return RawInputEvent(t, RawKind.FLUSH)


class DragClass(str, Enum):
    LASSO = "lasso"
    SWIPE = "swipe"


@dataclass(frozen=True)
class Tap:
    pos: tuple[float, float]


@dataclass(frozen=True)
class DoubleTap:
    pos: tuple[float, float]


@dataclass(frozen=True)
class DragStart:
    pointer_id: int
    pos: tuple[float, float]  # the touch-down position


@dataclass(frozen=True)
class DragMove:
    pointer_id: int
    pos: tuple[float, float]
    path: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class DragEnd:
    pointer_id: int
    path: tuple[tuple[float, float], ...]
    mean_velocity: float  # dip/s over the full path
    classification: DragClass


@dataclass(frozen=True)
class Shake:
    pass


@dataclass(frozen=True)
class MenuCommand:
    command: str


@dataclass(frozen=True)
class JoystickToggle:
    pass


GestureEvent = Tap | DoubleTap | DragStart | DragMove | DragEnd | Shake | MenuCommand | JoystickToggle

MAX_TRACKED_POINTERS = 2  # Table-level interactions need at most two fingers


@dataclass
class _Track:
    down_t: float
    down_pos: tuple[float, float]
    path: list[tuple[float, float]] = field(default_factory=list)
    max_disp: float = 0.0
    dragging: bool = False


@dataclass
class _PendingTap:
    pos: tuple[float, float]
    up_t: float

    def deadline(self, cfg: GestureConfig) -> float:
        return self.up_t + cfg.double_tap_gap_ms


class GestureRecognizer:
    """Streaming classifier over RawInputEvents. One instance per session."""

    def __init__(self, config: GestureConfig | None = None):
        self.config = config or GestureConfig()
        self._now = -math.inf
        self._tracks: dict[int, _Track] = {}
        self._ignored: set[int] = set()
        self._pending: _PendingTap | None = None
        self._hold_pid: int | None = None  # touch that may complete a double tap
        self._gravity = (0.0, 0.0, 0.0)
        self._shake_times: list[float] = []
        self._last_shake_t: float | None = None

    # ------------------------------------------------------------- feeding

    def feed(self, e: RawInputEvent) -> list[GestureEvent]:
        self._validate(e)
        out: list[GestureEvent] = []
        self._advance(e.t, out)
        handler = {
            RawKind.TOUCH_DOWN: self._on_down,
            RawKind.TOUCH_MOVE: self._on_move,
            RawKind.TOUCH_UP: self._on_up,
            RawKind.MOTION_SAMPLE: self._on_motion,
            RawKind.MENU_COMMAND: self._on_menu,
            RawKind.JOYSTICK_TOGGLE: self._on_joystick,
            RawKind.FLUSH: lambda e, out: None,
        }[e.kind]
        handler(e, out)
        return out

    def flush(self, t: float) -> list[GestureEvent]:
        """Advance the clock to t, releasing any deferred tap whose gap expired."""
        return self.feed(flush_event(t))

    # ---------------------------------------------------------- validation

    def _validate(self, e: RawInputEvent) -> None:
        if e.t < self._now:
            raise ProtocolError(f"timestamp regression: {e.t} after {self._now}")
        if e.kind in (RawKind.TOUCH_MOVE, RawKind.TOUCH_UP):
            pid = e.pointer_id
            if pid not in self._tracks and pid not in self._ignored:
                raise ProtocolError(f"{e.kind.value} for pointer {pid} without touchDown",
                                    pointer_id=pid)
        elif e.kind is RawKind.TOUCH_DOWN:
            if e.pointer_id in self._tracks or e.pointer_id in self._ignored:
                raise ProtocolError(f"touchDown for already-active pointer {e.pointer_id}",
                                    pointer_id=e.pointer_id)

    def _advance(self, t: float, out: list[GestureEvent]) -> None:
        self._now = max(self._now, t)
        if self._hold_pid is not None:
            holder = self._tracks.get(self._hold_pid)
            # A held second touch that can no longer qualify as a tap gives up
            # its claim on the pending tap.
            if holder is None or t - holder.down_t > self.config.tap_max_ms:
                self._hold_pid = None
        if self._pending is not None and self._hold_pid is None:
            if t >= self._pending.deadline(self.config):
                out.append(Tap(self._pending.pos))
                self._pending = None

    # ------------------------------------------------------------- touches

    def _on_down(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        pid = e.pointer_id
        assert pid is not None and e.pos is not None
        if len(self._tracks) >= MAX_TRACKED_POINTERS:
            self._ignored.add(pid)
            return
        self._tracks[pid] = _Track(down_t=e.t, down_pos=e.pos, path=[e.pos])
        if self._pending is not None and self._hold_pid is None:
            gap = e.t - self._pending.up_t
            radius = _dist(e.pos, self._pending.pos)
            if 0 <= gap <= self.config.double_tap_gap_ms and radius <= self.config.double_tap_radius_dip:
                self._hold_pid = pid

    def _on_move(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        pid = e.pointer_id
        if pid in self._ignored:
            return
        track = self._tracks[pid]
        assert e.pos is not None
        track.path.append(e.pos)
        track.max_disp = max(track.max_disp, _dist(e.pos, track.down_pos))
        if not track.dragging and track.max_disp > self.config.tap_slop_dip:
            track.dragging = True
            if self._hold_pid == pid:
                # The candidate second tap became a drag; release the held Tap.
                self._hold_pid = None
                if self._pending is not None:
                    out.append(Tap(self._pending.pos))
                    self._pending = None
            out.append(DragStart(pointer_id=pid, pos=track.down_pos))
        if track.dragging:
            out.append(DragMove(pointer_id=pid, pos=e.pos, path=tuple(track.path)))

    def _on_up(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        pid = e.pointer_id
        if pid in self._ignored:
            self._ignored.discard(pid)
            return
        track = self._tracks.pop(pid)
        assert e.pos is not None
        track.path.append(e.pos)
        track.max_disp = max(track.max_disp, _dist(e.pos, track.down_pos))
        duration = e.t - track.down_t

        if track.dragging:
            length = _path_length(track.path)
            velocity = length / (duration / 1000.0) if duration > 0 else math.inf
            cfg = self.config
            is_swipe = (duration <= cfg.swipe_max_duration_ms
                        and length >= cfg.swipe_min_distance_dip
                        and velocity >= cfg.swipe_min_velocity_dip_per_s)
            out.append(DragEnd(pointer_id=pid, path=tuple(track.path), mean_velocity=velocity,
                               classification=DragClass.SWIPE if is_swipe else DragClass.LASSO))
            return

        qualifies = duration <= self.config.tap_max_ms and track.max_disp <= self.config.tap_slop_dip
        if self._hold_pid == pid:
            self._hold_pid = None
            if qualifies and self._pending is not None:
                out.append(DoubleTap(self._pending.pos))
                self._pending = None
                return
            if self._pending is not None:
                out.append(Tap(self._pending.pos))
                self._pending = None
        if qualifies:
            if self._pending is not None:
                # A non-matching tap supersedes the old pending one.
                out.append(Tap(self._pending.pos))
            self._pending = _PendingTap(pos=track.down_pos, up_t=e.t)

    # -------------------------------------------------------------- motion

    def _on_motion(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        assert e.accel is not None
        a = e.accel
        alpha = self.config.gravity_alpha
        g = tuple(alpha * gi + (1 - alpha) * ai for gi, ai in zip(self._gravity, a))
        self._gravity = g  # type: ignore[assignment]
        linear = math.sqrt(sum((ai - gi) ** 2 for ai, gi in zip(a, g)))
        if linear < self.config.shake_threshold_mps2:
            return
        if self._last_shake_t is not None and e.t < self._last_shake_t + self.config.shake_debounce_ms:
            return
        self._shake_times = [t for t in self._shake_times if t >= e.t - self.config.shake_window_ms]
        self._shake_times.append(e.t)
        if len(self._shake_times) >= self.config.shake_min_samples:
            out.append(Shake())
            self._last_shake_t = e.t
            self._shake_times = []

    # ----------------------------------------------------------- passthrough

    def _on_menu(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        assert e.command is not None
        out.append(MenuCommand(e.command))

    def _on_joystick(self, e: RawInputEvent, out: list[GestureEvent]) -> None:
        out.append(JoystickToggle())


def _dist(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _path_length(path: list[tuple[float, float]]) -> float:
    return sum(_dist(path[i], path[i + 1]) for i in range(len(path) - 1))
