"""
Disjointness of S-J states
==========================

Two quasifree states are unitarily equivalent only if a mode sum of their
differences converges.  We check the S-J state against the ground state, and
two S-J states built on different slabs against each other.
"""

from sjslab import build_sphere_spectrum, sj_hadamard_disjointness, sj_sj_disjointness

spectrum = build_sphere_spectrum(1.0, 1.0, 1000)

vs_ground = sj_hadamard_disjointness(spectrum, 1.0, level_max=1000)
print(f"S-J vs ground state: growth ratio {vs_ground.growth_ratio:.4f} "
      f"-> {vs_ground.verdict.outcome.value}")

# The S-J state on (-1, 1) against the one on (-0.5, 0.5).
two_slabs = sj_sj_disjointness(spectrum, 1.0, 0.5, level_max=1000)
print(f"S-J(1) vs S-J(0.5): oscillation tail sup {two_slabs.tail.sup:.4f}, "
      f"growth ratio {two_slabs.growth_ratio:.4f} -> {two_slabs.verdict.outcome.value}")

# The CSV table has one row per level with the running sum.
print("\n".join(two_slabs.to_csv().splitlines()[:4]))
