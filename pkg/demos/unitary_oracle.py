"""The partial swap as a real two-particle unitary.

For every level pair the exchange Hamiltonian generates a rotation between
|ij> and |ji>; tracing out either particle leaves a convex mix of the two
inputs with weight sin^2(phi). Here the full unitary is checked against the
population rule, and the correlations the collision leaves behind are shown.
"""
import numpy as np

from swapengine import BathSpec, collide, collision_correlations, multilevel_swap_unitary, population_swap
from swapengine.collision import collide_populations, uniform_phi
from swapengine.statekit import gibbs_population

n = 3
p1 = gibbs_population(BathSpec([0, 0.8, 2.1], 1.5))
p2 = gibbs_population(BathSpec([0, 1.3, 1.9], 0.4))

for phi in np.linspace(0, np.pi / 2, 7):
    u = multilevel_swap_unitary(n, uniform_phi(n, phi))
    a, b = collide_populations(u, p1, p2)
    ea, eb = population_swap(np.sin(phi) ** 2, p1, p2)
    _, _, joint = collide(u, np.diag(p1), np.diag(p2))
    mi = collision_correlations(joint)["mutual_information"]
    print(f"phi={phi:5.3f}  x={np.sin(phi)**2:5.3f}  |unitary - rule|={max(abs(a - ea).max(), abs(b - eb).max()):.1e}  I={mi:.4f}")

# mutual information vanishes at both ends: nothing happens, or a clean exchange
