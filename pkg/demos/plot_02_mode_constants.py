"""
Per-mode constants of the S-J construction
==========================================

For a single mode of frequency ``omega`` on the slab ``(-tau, tau)`` the S-J state is
fixed by the norms of ``cos`` and ``sin`` on the time interval.  Their ratio gives
the deviation ``delta`` from the ground state.
"""

import math

import numpy as np

from sjslab import mode_arrays, mode_constants

mc = mode_constants(omega=1.0, tau=1.0)
print(f"||C||^2 = {mc.normC2:.12f}   ||S||^2 = {mc.normS2:.12f}")
print(f"delta   = {mc.delta:.12f}   lambda+ = {mc.lambda_plus:.12f}")

# When 2 omega tau is a multiple of pi the two norms agree and delta vanishes exactly.
print("delta at omega tau = pi/2:", mode_constants(math.pi / 2, 1.0).delta)

# For large omega tau, delta is close to -sinc(2 omega tau), with a second-order error.
x = np.geomspace(10, 1e4, 7)
arr = mode_arrays(x, 1.0)
for wt, d, s in zip(x, arr.delta, arr.sinc2wt):
    print(f"omega tau={wt:9.2f}  delta={d: .3e}  (delta+sinc)*(omega tau)^2={(d + s) * wt ** 2: .4f}")
