"""Empirical dependence tails against the exponential bound, written as CSV.

For each (t, alpha) the row holds the P_Y-probability that a conditional
P_{X|Y=y} sits within t of P_X, in the sense
D_alpha(P_{X|Y=y} || gamma) - D_alpha(P_X || gamma) < t, next to the bound
exp(beta t - beta I) with beta = (1 - alpha) / alpha and I Arimoto's information.
Run: python demos/tail_bound.py > tail.csv
"""

import csv
import sys

import numpy as np

from renyi_lab import instances
from renyi_lab import mutual_information as mi

joint = instances.random_joint(np.random.default_rng(7), 3, 4)
out = csv.writer(sys.stdout)
out.writerow(["t", "alpha", "empirical", "bound"])
for t in np.linspace(0.05, 1.5, 8):
    for a in (0.1, 0.3, 0.5, 0.7, 0.9):
        tb = mi.dependence_tail_bound(joint, a, float(t))
        out.writerow([f"{t:.4f}", a, f"{tb.empirical:.6f}", f"{tb.bound:.6f}"])
