"""Sorkin-Johnston states of the Klein-Gordon field on ultrastatic slabs.

Per-mode closed forms, smeared two-point functions, summability diagnostics
for the Hadamard and disjointness criteria, and brute-force oracles.
"""

from .errors import (AccuracyError, DegenerateCaseError, DomainError, InvalidParameterError,
                     NearZeroOverlapError, SJSlabError, ValidationError)
from .spectral_geometry import (SpatialSpectrum, SpectrumLevel, build_custom_spectrum,
                                build_sphere_spectrum, build_torus_spectrum)
from .slab_modes import (ModeConstants, aj_eigensystem, aj_plus_kernel, ah_kernel,
                         mode_arrays, mode_constants, normord_kernel, stable_sinc,
                         tj_eigenvalues)
from .smearing import (TemporalTestFunction, bump, cosine_transform, mode_test_function,
                       normalize_eta_hadamard, normalize_eta_sj, sine_transform)
from .two_point import (ElementKind, ModeMatrixElement, assemble_diagonal, normord_element,
                        wh_element, wsj_element)
from .diagnostics import (Outcome, SeriesReport, Thresholds, Verdict, nec_series,
                          sin_tail_analysis, sj_hadamard_disjointness, sj_sj_disjointness,
                          sphere_asymptotic_check, sphere_candidate_taus, tau_scan,
                          torus_incommensurability)

__version__ = "0.1.0"
