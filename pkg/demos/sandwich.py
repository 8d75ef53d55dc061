"""Sibson (I), Augustin-Csiszar (K) and Lapidoth-Pfister (J) across orders.

Above order one K <= J <= I; below it the outer two swap and J <= I <= K.
Run: python demos/sandwich.py
"""

from renyi_lab import instances
from renyi_lab import mutual_information as mi

joint = instances.joint_from([0.6, 0.4], instances.channel_from_rows([[0.8, 0.15, 0.05], [0.1, 0.3, 0.6]]))

print(f"{'alpha':>6} {'K':>10} {'J':>10} {'I':>10}  order")
for a in (0.3, 0.5, 0.7, 0.9, 1.0, 1.5, 2.0, 4.0, 8.0):
    I = mi.sibson_mi(joint, a).value
    K = mi.augustin_csiszar_mi(joint, a).value
    J = mi.lapidoth_pfister_mi(joint, a).value
    chain = "K <= J <= I" if K <= J + 1e-9 and J <= I + 1e-9 else "J <= I <= K" if J <= I + 1e-9 <= K + 2e-9 else "?"
    print(f"{a:>6} {K:10.6f} {J:10.6f} {I:10.6f}  {chain}")

res = mi.lapidoth_pfister_mi(joint, 2.0)
print("\nJ at order 2 is attained by a product measure:")
print("  mu =", res.optimizer_mu.masses.round(6), " nu =", res.optimizer_nu.masses.round(6))
