"""
The S-J state on the sphere and torus is not Hadamard
=====================================================

A state that is Hadamard would make a certain mode sum finite.  Here we add up
the sum level by level and watch the partial sums grow linearly with the cutoff.
"""

import math

from sjslab import build_sphere_spectrum, nec_series, torus_incommensurability

spectrum = build_sphere_spectrum(1.0, 2.0, 1000)
nec_c, nec_s = nec_series(spectrum, math.pi / 2, level_max=1000)
for rep in (nec_c, nec_s):
    print(f"{rep.name}: partial sum at J=500 {rep.partial_sums[500]:.4e}, "
          f"at J=1000 {rep.partial_sums[1000]:.4e}, ratio {rep.growth_ratio:.4f}, "
          f"verdict {rep.verdict.outcome.value}")

# With mR = 1 and tau = pi/2 every delta_j vanishes, so nothing is left to sum.
zero_c, _ = nec_series(build_sphere_spectrum(1.0, 1.0, 1000), math.pi / 2)
print("mR=1:", zero_c.verdict.outcome.value)

# On the torus, tau = L/4 kills the axis modes (r,0,0) but not the diagonal (r,r,0).
rep = torus_incommensurability(1.0, 0.25, 500, mass=1.0)
ev = rep.verdict.evidence
print(f"torus tau=L/4: axis tail {ev['tail_sup_axis']:.2e}, diagonal tail {ev['tail_sup_diagonal']:.4f}")
