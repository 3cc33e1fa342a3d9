"""Weighted L^p norms, rearrangements, and weak majorization.

Walks through the substrate everything else is built on: a finite probability
measure, the weighted p-norms it induces (with p = inf meaning the plain
maximum), and the submajorization order that controls every symmetric norm at
once.
"""

import math

import numpy as np

from leibnizlab import (
    ProbVector,
    center,
    downward_rearrange,
    expectation,
    lp_norm,
    weak_majorizes,
)

mu = ProbVector([1 / 6, 9 / 12, 1 / 12])
f = np.array([-11 / 15, 1 / 15, 13 / 15])

print("measure        :", mu.to_list())
print("f              :", f)
print("E f            :", expectation(f, mu))
print("f - Ef         :", center(f, mu))

print("\nweighted norms of f:")
for p in (1.0, 2.0, 4.0, math.inf):
    print(f"  ||f||_{p:<4} = {lp_norm(f, mu, p):.6f}")
print("norms grow with p on probability spaces (Jensen).")

x = np.array([0.5, -1.5, 0.25, 1.0])
print("\nx              :", x)
print("|x| decreasing :", downward_rearrange(np.abs(x)))

# (2, 0) spreads more mass to the top than (1, 1): it weakly majorizes
print("\n(1,1) <_w (2,0):", weak_majorizes([2.0, 0.0], [1.0, 1.0]))
print("(2,0) <_w (1,1):", weak_majorizes([1.0, 1.0], [2.0, 0.0]))

# majorization controls every symmetric norm simultaneously
y = np.array([1.1, -0.4, 0.8, -0.2])
z = 0.9 * y
print("\n|0.9 y| <_w |y|:", weak_majorizes(np.abs(y), np.abs(z)))
uniform = ProbVector.uniform(4)
for p in (1.0, 2.0, math.inf):
    print(f"  ||0.9y||_{p} = {lp_norm(z, uniform, p):.4f} <= ||y||_{p} = {lp_norm(y, uniform, p):.4f}")
