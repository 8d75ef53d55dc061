"""Five capacities against the Renyi radius of a channel.

At orders >= 1 the input-to-output capacities and J all equal the radius;
the two reversed ones bracket it.  For orders in [1/2, 1) J still meets the
radius.  Run: python demos/capacities.py
"""

import numpy as np

from renyi_lab import capacity, instances
from renyi_lab.mutual_information import SolverConfig

cfg = SolverConfig(seed=0)
ch = instances.channel_from_rows([[0.7, 0.2, 0.1], [0.1, 0.3, 0.6], [0.3, 0.4, 0.3]])

for a in (1.0, 2.0, 4.0):
    rep = capacity.capacity_equalities_check(ch, a, cfg, strict=False)
    v = rep.values
    print(f"alpha={a}: radius {v['radius']:.6f}  status {rep.status}")
    for f in capacity.FUNCTIONALS:
        print(f"    C_{f:<5} {v[f]:.6f}  (diff {v[f] - v['radius']:+.2e})")

print("\nBelow order one, J against the radius on a 2x3 channel:")
two = instances.random_channel(np.random.default_rng(5), 2, 3)
for a in (0.5, 0.7, 0.9):
    rep = capacity.lp_capacity_radius_check(two, a, cfg, strict=False)
    print(f"  alpha={a}: C_J {rep.values['J']:.6f}  radius {rep.values['radius']:.6f}")

r = capacity.renyi_radius(ch, 2.0, cfg)
print("\nRadius center at order 2:", r.center.masses.round(6), " certificate gap", f"{r.certificate_gap:.1e}")
