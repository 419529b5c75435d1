"""
Brute-force check of the closed forms
=====================================

The single-mode operator ``A_j`` is an integral operator on ``L^2(-tau, tau)``.
Discretising it with Gauss-Legendre nodes gives a Hermitian matrix whose
extreme eigenvalues and positive part can be compared with the closed forms.
"""

from sjslab import mode_constants
from sjslab.oracle import aj_oracle_report, run_validation_suite, saturation_purity_check

rep = aj_oracle_report(1.0, 1.0, 401)
print(f"eigenvalues {rep['eig_plus']:.12f}, {rep['eig_minus']:.12f}; exact +-{rep['exact']:.12f}")
print(f"rank check sigma3/sigma1 = {rep['rank_ratio']:.2e}")
print(f"positive part vs closed-form kernel: {rep['positive_part_deviation']:.2e}")

# The state of one mode is pure: the saturation defect is at rounding level.
print("saturation defect:", saturation_purity_check(mode_constants(2.3, 0.7)))

for rec in run_validation_suite(N=200)[:4]:
    print(rec)
