"""How the reference weights change entropies, and which quantities ignore them.

Run: python demos/reference_weights.py
"""

import math

import numpy as np

from renyi_lab import entropy, instances
from renyi_lab import mutual_information as mi

joint = instances.joint_from([0.75, 0.25], instances.bsc(0.1))
heavy = joint.with_references(gamma_x=[4.0, 1.0])

print("Same law, two references on X: counting, and (4, 1).")
print(f"{'alpha':>6} {'h(X) count':>12} {'h(X) (4,1)':>12} {'h(X|Y) count':>13} {'h(X|Y) (4,1)':>13}")
for a in (0.0, 0.5, 1.0, 2.0, math.inf):
    print(
        f"{a:>6} {entropy.renyi_entropy(joint.marginal_x(), a):12.6f} "
        f"{entropy.renyi_entropy(heavy.marginal_x(), a):12.6f} "
        f"{entropy.conditional_renyi_entropy(joint, a):13.6f} "
        f"{entropy.conditional_renyi_entropy(heavy, a):13.6f}"
    )

# Arimoto's information moves with the reference; Sibson's does not.
print("\nInformation at order 2 under both references:")
for name, j in (("counting", joint), ("(4, 1)", heavy)):
    print(f"  {name:>9}: Arimoto {mi.arimoto_mi(j, 2):.6f}  Sibson {mi.sibson_mi(j, 2).value:.6f}")

# Using P_X itself as the reference turns Arimoto's quantity into Sibson's.
ref = mi.sibson_reference_joint(joint)
print(f"\nArimoto with reference P_X: {mi.arimoto_mi(ref, 2):.12f}")
print(f"Sibson:                     {mi.sibson_mi(joint, 2).value:.12f}")

# Average of slice entropies against the conditional entropy.
rng = np.random.default_rng(1)
j = instances.random_joint(rng, 3, 3)
print("\nConditional vs averaged slice entropy on a random 3x3 joint:")
for a in (0.5, 2.0):
    print(f"  alpha={a}: h={entropy.conditional_renyi_entropy(j, a):.6f}  "
          f"avg={entropy.average_conditional_renyi_entropy(j, a):.6f}")
