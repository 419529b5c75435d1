"""Closed-form per-mode quantities on L^2(-tau, tau).

For a single spatial mode of frequency ``omega`` the commutator operator
restricted to the slab acts on the span of ``C(t) = cos(omega t)`` and
``S(t) = sin(omega t)``. Everything here is expressed through

    s      = sinc(2 omega tau)
    |C|^2  = tau (1 + s)
    |S|^2  = tau (1 - s)
    delta  = 1 - |C|/|S|

Phases ``2 omega tau`` are reduced in units of pi, so that slabs with
``2 omega tau`` an exact integer multiple of pi (e.g. the unit sphere with
``m R = 1`` and ``tau = pi/2``) produce ``s = 0`` and ``delta = 0`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, InvalidParameterError

__all__ = [
    "sinpi",
    "sin_2wt",
    "stable_sinc",
    "sinc_2wt",
    "delta_from_sinc",
    "ModeConstants",
    "ModeArrays",
    "mode_constants",
    "mode_arrays",
    "AjEigensystem",
    "aj_eigensystem",
    "aj_plus_kernel",
    "ah_kernel",
    "normord_kernel",
    "tj_eigenvalues",
    "tj_eigenvalues_array",
]

_SERIES_CUTOFF = 1e-4


def sinpi(x):
    """``sin(pi x)`` with exact argument reduction modulo 2.

    Integer arguments give exactly 0.
    """
    x = np.asarray(x, dtype=float)
    r = np.fmod(x, 2.0)  # exact in binary floating point
    r = np.where(r > 1.0, r - 2.0, r)
    r = np.where(r < -1.0, r + 2.0, r)
    # fold into [-1/2, 1/2] using sin(pi r) = sin(pi (1 - r))
    r = np.where(r > 0.5, 1.0 - r, r)
    r = np.where(r < -0.5, -1.0 - r, r)
    out = np.sin(np.pi * r)
    return out if out.ndim else float(out)


def sin_2wt(omega, tau):
    """``sin(2 omega tau)`` evaluated as ``sinpi(omega * (2 tau / pi))``."""
    return sinpi(np.asarray(omega, dtype=float) * (2.0 * np.asarray(tau, dtype=float) / np.pi))


def stable_sinc(x):
    """``sin(x)/x`` with the Taylor series ``1 - x^2/6 + x^4/120`` near 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(xs) / xs)
    return out if out.ndim else float(out)


def sinc_2wt(omega, tau):
    """``sinc(2 omega tau)`` using the pi-reduced sine for the numerator."""
    x = 2.0 * np.asarray(omega, dtype=float) * np.asarray(tau, dtype=float)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0,
                   np.asarray(sin_2wt(omega, tau)) / xs)
    return out if out.ndim else float(out)


def delta_from_sinc(s):
    """``1 - sqrt((1+s)/(1-s))`` in cancellation-free form.

    Uses ``delta = (-2s/(1-s)) / (1 + sqrt((1+s)/(1-s)))``.
    """
    s = np.asarray(s, dtype=float)
    # adding 0.0 turns the -0.0 produced at s = 0 into a plain zero
    out = (-2.0 * s / (1.0 - s)) / (1.0 + np.sqrt((1.0 + s) / (1.0 - s))) + 0.0
    return out if out.ndim else float(out)


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not (np.isfinite(value) and value > 0):
            raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class ModeConstants:
    """Scalars describing one mode of frequency ``omega`` on ``(-tau, tau)``."""

    omega: float
    tau: float
    sinc2wt: float
    normC2: float
    normS2: float
    delta: float
    lambda_plus: float

    @property
    def normC(self) -> float:
        return float(np.sqrt(self.normC2))

    @property
    def normS(self) -> float:
        return float(np.sqrt(self.normS2))

    @property
    def ratio_SC(self) -> float:
        """``|S|/|C| = 1/(1 - delta)``, the prefactor of the S-J kernel times ``2 omega``."""
        return 1.0 / (1.0 - self.delta)

    @property
    def operator_norm(self) -> float:
        """Exact ``||A_j|| = |S||C|/omega``."""
        return self.lambda_plus

    @property
    def norm_bound(self) -> float:
        """The cruder uniform bound ``2 tau/omega``."""
        return 2.0 * self.tau / self.omega


@lru_cache(maxsize=65536)
def _mode_constants(omega: float, tau: float) -> ModeConstants:
    s = sinc_2wt(omega, tau)
    normC2 = tau * (1.0 + s)
    normS2 = tau * (1.0 - s)
    lam = tau * np.sqrt((1.0 - s) * (1.0 + s)) / omega
    return ModeConstants(float(omega), float(tau), float(s), float(normC2),
                         float(normS2), float(delta_from_sinc(s)), float(lam))


def mode_constants(omega: float, tau: float) -> ModeConstants:
    """Per-mode constants for frequency ``omega`` on the slab ``(-tau, tau)``."""
    _check_positive(omega=omega, tau=tau)
    return _mode_constants(float(omega), float(tau))


@dataclass(frozen=True)
class ModeArrays:
    """Vectorised counterpart of :class:`ModeConstants` for many frequencies."""

    omega: np.ndarray
    tau: float
    sinc2wt: np.ndarray
    sin2wt: np.ndarray
    normC2: np.ndarray
    normS2: np.ndarray
    delta: np.ndarray
    lambda_plus: np.ndarray


def mode_arrays(omegas, tau: float) -> ModeArrays:
    omegas = np.asarray(omegas, dtype=float)
    _check_positive(tau=tau)
    if np.any(~(omegas > 0)):
        raise InvalidParameterError("all frequencies must be positive")
    s = np.asarray(sinc_2wt(omegas, tau), dtype=float)
    return ModeArrays(
        omega=omegas,
        tau=float(tau),
        sinc2wt=s,
        sin2wt=np.asarray(sin_2wt(omegas, tau), dtype=float),
        normC2=tau * (1.0 + s),
        normS2=tau * (1.0 - s),
        delta=np.asarray(delta_from_sinc(s), dtype=float),
        lambda_plus=tau * np.sqrt((1.0 - s) * (1.0 + s)) / omegas,
    )


@dataclass(frozen=True)
class AjEigensystem:
    """Eigen-data of the rank-2 block ``A_j``.

    ``coeffs_*`` are coefficients on the ``(C, S)`` basis; ``exp_coeffs_*`` on
    ``(exp(-i omega t), exp(+i omega t))``.
    """

    eigenvalue_plus: float
    eigenvalue_minus: float
    coeffs_plus: tuple[complex, complex]
    coeffs_minus: tuple[complex, complex]
    exp_coeffs_plus: tuple[complex, complex]
    exp_coeffs_minus: tuple[complex, complex]
    norm2: float


def aj_eigensystem(mc: ModeConstants) -> AjEigensystem:
    """Eigenvalues ``+-|S||C|/omega`` and eigenvectors ``C -+ i (|C|/|S|) S``."""
    r = 1.0 - mc.delta
    d = mc.delta
    return AjEigensystem(
        eigenvalue_plus=mc.lambda_plus,
        eigenvalue_minus=-mc.lambda_plus,
        coeffs_plus=(1.0 + 0j, -1j * r),
        coeffs_minus=(1.0 + 0j, 1j * r),
        # phi^+ = (1 - d/2) e^{-iwt} + (d/2) e^{iwt}; phi^- is its complex conjugate
        exp_coeffs_plus=(1.0 - d / 2.0 + 0j, d / 2.0 + 0j),
        exp_coeffs_minus=(d / 2.0 + 0j, 1.0 - d / 2.0 + 0j),
        norm2=2.0 * mc.normC2,
    )


def _check_times(tau, *ts):
    for t in ts:
        if np.any(np.abs(t) > tau * (1.0 + 1e-12)):
            raise DomainError(f"time argument outside [-{tau}, {tau}]")


def aj_plus_kernel(mc: ModeConstants, t, t2):
    """Integral kernel of the positive part ``A_j^+``."""
    _check_times(mc.tau, t, t2)
    w, d = mc.omega, mc.delta
    t = np.asarray(t, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    left = np.exp(-1j * w * t) + 1j * d * np.sin(w * t)
    right = np.exp(1j * w * t2) - 1j * d * np.sin(w * t2)
    return mc.ratio_SC / (2.0 * w) * left * right


def ah_kernel(omega: float, t, t2):
    """Rank-one ground-state kernel ``exp(-i omega (t - t2)) / (2 omega)``."""
    t = np.asarray(t, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    return np.exp(-1j * omega * t) * np.exp(1j * omega * t2) / (2.0 * omega)


def normord_kernel(mc: ModeConstants, t, t2):
    """Normal-ordered kernel ``A_j^+ - A_j^(H)``; real valued."""
    _check_times(mc.tau, t, t2)
    w, d = mc.omega, mc.delta
    t = np.asarray(t, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    den = 4.0 * w * (1.0 - d)
    return (d * d * np.cos(w * (t - t2)) + d * (2.0 - d) * np.cos(w * (t + t2))) / den


def tj_eigenvalues(mc_tau: ModeConstants, tau_inner: float) -> tuple[float, float]:
    """Eigenvalues of the differentiated normal-ordered block on ``(-tau', tau')``.

    ``delta`` comes from ``mc_tau``; ``|C|`` and ``|S|`` are recomputed on the
    inner interval. Returns ``(-w d |C|^2/2, w d |S|^2 / (2(1-d)))``.
    """
    _check_positive(tau_inner=tau_inner)
    if tau_inner >= mc_tau.tau:
        raise InvalidParameterError("tau_inner must be smaller than tau")
    inner = mode_constants(mc_tau.omega, tau_inner)
    w, d = mc_tau.omega, mc_tau.delta
    return (-w * d * inner.normC2 / 2.0, w * d * inner.normS2 / (2.0 * (1.0 - d)))


def tj_eigenvalues_array(omegas, tau: float, tau_inner: float):
    """Vectorised :func:`tj_eigenvalues` over a frequency array."""
    _check_positive(tau=tau, tau_inner=tau_inner)
    if tau_inner >= tau:
        raise InvalidParameterError("tau_inner must be smaller than tau")
    outer = mode_arrays(omegas, tau)
    inner = mode_arrays(omegas, tau_inner)
    w, d = outer.omega, outer.delta
    return -w * d * inner.normC2 / 2.0, w * d * inner.normS2 / (2.0 * (1.0 - d))
