"""
Spatial spectra of the sphere and the flat torus
================================================

Every quantity in the package is a sum over spatial modes, so the first thing to
build is the list of frequencies ``omega_j`` and their multiplicities.
"""

import math

from sjslab import build_sphere_spectrum, build_torus_spectrum

# On the unit sphere the levels are j(j+2) with multiplicity (j+1)^2.
sphere = build_sphere_spectrum(R=1.0, m=2.0, level_max=5)
for level in sphere.levels:
    print(f"sphere j={level.level_index}  omega={level.omega:.6f}  mult={level.multiplicity}")

# With mR = 1 the frequencies are exactly integers: omega_j = j + 1.
print([float(w) for w in build_sphere_spectrum(1.0, 1.0, 6).omegas])

# On the torus a level n collects all integer vectors with |k|^2 = n.
# Some n (7, 15, 23, ...) have no lattice points and are skipped.
torus = build_torus_spectrum(L=1.0, m=1.0, norm2_max=8)
print("torus levels n:", torus.indices.tolist())
print("multiplicities:", torus.multiplicities.tolist())
print("omega for n=1:", torus.omegas[1], "expected", math.sqrt((2 * math.pi) ** 2 + 1))

# Spectra serialise to JSON and come back unchanged.
again = type(sphere).from_json(sphere.to_json())
print("round trip ok:", again.omegas.tolist() == sphere.omegas.tolist())
