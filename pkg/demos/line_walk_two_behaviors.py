"""Line walk: one walker, two personalities.

With right-hop sin(theta)|-><-| + |+><+| and left-hop cos(theta)|-><-|
(here cos(theta) = 4/5), a maximally mixed walker started at the origin
splits into a deterministic right-mover pinned to |+> and a diffusive
left-drifting packet living on |->. This script evolves the walk and
prints both parts after 10, 20, 50 and 100 steps.
"""

import numpy as np

from oqwalk import build_line_walk, internal_sector_occupation, occupation, position_moments, run
from oqwalk.linalg import KET_MINUS, KET_PLUS

theta = np.arccos(0.8)

for n_steps in (10, 20, 50, 100):
    spec, initial = build_line_walk(theta, window=n_steps)
    state = run(spec, initial, n_steps)[-1][1]

    occ = occupation(state)
    soliton = internal_sector_occupation(state, KET_PLUS)
    packet = internal_sector_occupation(state, KET_MINUS)
    mean, var = position_moments(packet)

    print(f"--- after {n_steps} steps ---")
    print(f"rightmost site {n_steps}: occupation {occ[n_steps]:.6f} "
          f"(|+> soliton carries {soliton[n_steps]:.6f})")
    print(f"|-> packet: mean position {mean:+.3f} "
          f"(drift {mean / n_steps:+.4f}/step, expected -0.28), "
          f"std {np.sqrt(var):.3f}")

print()
print("occupation profile after 20 steps (site: probability):")
spec, initial = build_line_walk(theta, window=20)
state = run(spec, initial, 20)[-1][1]
for site in sorted(occupation(state)):
    prob = occupation(state)[site]
    if prob > 5e-4:
        bar = "#" * max(1, int(120 * prob))
        print(f"  {site:+4d}: {prob:.4f} {bar}")
