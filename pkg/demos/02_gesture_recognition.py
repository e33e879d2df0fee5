"""
Gesture recognition from raw touch and motion events
====================================================

The recognizer is a pure function of event timestamps. Taps defer until the
double-tap window closes, drags split into lasso vs swipe by speed, and the
motion channel strips gravity with a high-pass filter before shake detection.
"""

from touchviz import GestureRecognizer
from touchviz.gesture import motion_sample, touch_down, touch_move, touch_up

rec = GestureRecognizer()

# A quick press is a Tap, but it only surfaces once the double-tap gap expires.
print(rec.feed(touch_down(0, 1, 100, 100)))      # []
print(rec.feed(touch_up(90, 1, 102, 101)))       # [] (deferred)
print(rec.flush(600))                            # [Tap(pos=(100, 100))]

# Two quick taps in place collapse into a DoubleTap and suppress both Taps.
for e in [touch_down(1000, 1, 50, 50), touch_up(1060, 1, 50, 50),
          touch_down(1200, 1, 50, 50)]:
    rec.feed(e)
print(rec.feed(touch_up(1300, 1, 50, 50)))       # [DoubleTap(pos=(50, 50))]

# A 200-dip flick in 150 ms classifies as a swipe (>= 800 dip/s, <= 250 ms).
out = []
for e in [touch_down(2000, 1, 100, 300), touch_move(2075, 1, 200, 300),
          touch_up(2150, 1, 300, 300)]:
    out += rec.feed(e)
print(out[-1])

# Constant gravity never shakes; an energetic alternating burst does.
for i in range(20):
    assert rec.feed(motion_sample(3000 + 50 * i, 0.0, 0.0, 9.81)) == []
shakes = []
for i, ax in enumerate((35.0, -35.0, 35.0)):
    shakes += rec.feed(motion_sample(5000 + 80 * i, ax, 0.0, 0.0))
print(shakes)                                    # [Shake()]
