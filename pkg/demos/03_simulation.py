"""
Density-matrix simulation
=========================

Evolve the maximally mixed initial state and watch the survival probability
settle at the trapped weight, whatever the percolation probability.
"""

import numpy as np

from grovertrap import average_atp, projector, simulate, sr_trapped_basis
from grovertrap import families
from grovertrap.simulator import maximally_mixed

inst = families.star(4, 1)
q = average_atp(projector(sr_trapped_basis(inst), inst.dim), inst.initial)
rho0 = maximally_mixed(inst.dim, inst.initial)

for pi in (0.2, 0.5, 0.8):
    traj = simulate(rho0, inst, pi)
    print(f"pi={pi}: {traj.steps} steps, Tr rho = {traj.limit:.6f}, 1 - q = {1 - float(q):.6f}")

# Monte Carlo over sampled configurations agrees within its error bars
exact = simulate(rho0, inst, 0.5, steps=20)
mc = simulate(rho0, inst, 0.5, steps=20, mode="mc", samples=2000, seed=1)
z = np.abs(mc.traces - exact.traces)[1:] / mc.errors[1:]
print(f"largest Monte Carlo deviation: {z.max():.2f} standard errors")
