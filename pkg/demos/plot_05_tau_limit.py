"""
Stretching the slab: the tau to infinity limit
==============================================

As the slab gets longer the S-J state of a single mode approaches the ground
state.  We smear the normal-ordered kernel against a fixed bump and follow it.
"""

import numpy as np

from sjslab import bump
from sjslab.oracle import dominated_convergence_bound, limit_tau_check

f = bump(1.0)
rep = limit_tau_check(1.0, f, [2, 5, 10, 20, 50, 100])
for tau, value in zip(rep.taus, rep.kernel_values):
    print(f"tau={tau:6.1f}   :W:(f,f) = {value: .6e}")
print("closed form agrees with convention:", rep.matching_convention)

# The transforms of f decay fast enough to dominate the mode sum uniformly in tau.
bound = dominated_convergence_bound(f, 1.0, np.linspace(0, 80, 161), np.linspace(0, 300, 601))
print(f"|Cf(w)| <= {bound['const']:.1f} / (w^2 + 1)^2 on the check grid: {bound['holds']}")
