"""Generate a smooth-turn mobility trace and check its flight rules.

Writes smooth_turn_trace.csv next to this script: columns
time_s,uav_id,x_m,y_m,z_m,state,cx_m,cy_m,r_m,heading_rad,speed_mps.
"""

import math
import os

from uavllt import Arena, SmoothTurnConfig, position_at, velocity_heading
from uavllt.mobility import generate_trace, write_trace_csv

arena = Arena(0, 5000, 0, 5000, buffer_width=500)
config = SmoothTurnConfig(radius_min=100, radius_max=800,
                          speed_min=25, speed_max=55,
                          wait_min=5, wait_max=20)

rows, segments = generate_trace(count=8, arena=arena, config=config,
                                duration=300.0, seed=2024, sample_dt=1.0)

out = os.path.join(os.path.dirname(__file__), "smooth_turn_trace.csv")
write_trace_csv(out, rows)
print(f"wrote {len(rows)} trace rows to {out}")

changes = sum(len(segs) - 1 for segs in segments)
print(f"{changes} trajectory changes across {len(segments)} UAVs")

worst_gap = 0.0
worst_turn = 0.0
for segs in segments:
    for prev, nxt in zip(segs, segs[1:]):
        dt = nxt.epoch - prev.epoch
        p_end = position_at(prev, dt)
        p_new = position_at(nxt, 0.0)
        worst_gap = max(worst_gap, math.hypot(p_end.x - p_new.x, p_end.y - p_new.y))
        h_gap = abs(math.remainder(velocity_heading(prev, dt)
                                   - velocity_heading(nxt, 0.0), 2 * math.pi))
        worst_turn = max(worst_turn, h_gap)
    states = [s.movement_state for s in segs]
    assert all({u, v} != {"CW", "CCW"} for u, v in zip(states, states[1:]))

print(f"largest position jump at a change: {worst_gap:.2e} m")
print(f"largest heading jump at a change:  {worst_turn:.2e} rad")
print("no clockwise <-> counter-clockwise reversal without a straight leg")
