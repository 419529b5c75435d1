"""Temporal test functions and their cosine/sine transforms.

Test functions are scaled, shifted copies of the standard mollifier

    f(t) = amplitude * exp(-a^2 / (a^2 - (t - center)^2)),   |t - center| < a,

which is smooth with all derivatives vanishing at the support endpoints.
Transforms are computed by Gauss-Legendre quadrature over the support with
node doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError, InvalidParameterError, NearZeroOverlapError
from .slab_modes import ModeConstants

__all__ = [
    "TemporalTestFunction",
    "bump",
    "from_config",
    "gauss_legendre",
    "integrate",
    "cosine_transform",
    "sine_transform",
    "l1_norm",
    "l2_norm",
    "normalize_eta_hadamard",
    "normalize_eta_sj",
    "default_width",
    "mode_test_function",
    "N_START",
    "N_MAX",
    "RTOL",
]

N_START = 16
N_MAX = 4096
RTOL = 1e-10
# absolute floor, in units of the L1 norm, below which differences are rounding noise
NOISE_FLOOR = 64 * np.finfo(float).eps
OVERLAP_FLOOR = 1e-8


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on ``[-1, 1]`` (read-only, cached)."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@dataclass(frozen=True)
class TemporalTestFunction:
    """A bump of half-width ``a`` centred at ``center``."""

    a: float
    amplitude: float = 1.0
    center: float = 0.0
    family: str = "bump"

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0):
            raise InvalidParameterError(f"support half-width must be positive, got {self.a!r}")
        if self.family != "bump":
            raise InvalidParameterError(f"unknown test function family {self.family!r}")

    @property
    def symmetric(self) -> bool:
        return self.center == 0.0

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.a, self.center + self.a)

    def shape(self, t):
        """Unit-amplitude profile."""
        u = (np.asarray(t, dtype=float) - self.center) / self.a
        inside = np.abs(u) < 1.0
        us = np.where(inside, u, 0.0)
        out = np.where(inside, np.exp(-1.0 / (1.0 - us * us)), 0.0)
        return out if out.ndim else float(out)

    def __call__(self, t):
        return self.amplitude * self.shape(t)

    def scaled(self, factor: float) -> "TemporalTestFunction":
        return replace(self, amplitude=self.amplitude * factor)

    def check_support(self, tau: float):
        """Raise :class:`DomainError` unless the support lies in ``[-tau, tau]``."""
        lo, hi = self.support
        tol = 1e-12 * tau
        if lo < -tau - tol or hi > tau + tol:
            raise DomainError(f"support [{lo}, {hi}] not contained in (-{tau}, {tau})")

    def nodes(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes and weights on the support."""
        x, w = gauss_legendre(n)
        return self.center + self.a * x, self.a * w

    def to_config(self) -> dict:
        return {"family": self.family, "a": self.a, "amplitude": self.amplitude,
                "center": self.center}


def bump(a: float, amplitude: float = 1.0, center: float = 0.0) -> TemporalTestFunction:
    """Standard mollifier ``amplitude * exp(-a^2/(a^2 - t^2))`` on ``|t| < a``."""
    return TemporalTestFunction(float(a), float(amplitude), float(center))


def from_config(doc: dict) -> TemporalTestFunction:
    """Build a test function from ``{"family": "bump", "a": ..., "amplitude": ...}``."""
    if doc.get("family", "bump") != "bump":
        raise InvalidParameterError(f"unknown test function family {doc.get('family')!r}")
    return bump(doc["a"], doc.get("amplitude", 1.0), doc.get("center", 0.0))


def _adaptive(f: TemporalTestFunction, weight, scale: float):
    """Integrate ``shape * weight`` with node doubling; returns the unit-amplitude value."""
    prev = None
    n = N_START
    atol = NOISE_FLOOR * scale
    while n <= N_MAX:
        t, w = f.nodes(n)
        cur = float(np.dot(w, f.shape(t) * weight(t)))
        if prev is not None and abs(cur - prev) <= RTOL * abs(cur) + atol:
            return cur
        prev = cur
        n *= 2
    raise AccuracyError(f"quadrature did not converge with {N_MAX} nodes",
                        estimates=(prev, cur))


@lru_cache(maxsize=None)
def _shape_l1(a: float) -> float:
    probe = TemporalTestFunction(a)
    return _adaptive(probe, lambda t: np.ones_like(t), 0.0)


def integrate(f: TemporalTestFunction) -> float:
    """``int f(t) dt``."""
    return f.amplitude * _shape_l1(f.a)


def l1_norm(f: TemporalTestFunction) -> float:
    return abs(f.amplitude) * _shape_l1(f.a)


def l2_norm(f: TemporalTestFunction) -> float:
    unit = TemporalTestFunction(f.a, center=f.center)
    val = _adaptive(unit, unit.shape, 0.0)
    return abs(f.amplitude) * math.sqrt(val)


def cosine_transform(f: TemporalTestFunction, omega: float) -> float:
    """``int f(t) cos(omega t) dt``, relative tolerance 1e-10."""
    val = _adaptive(f, lambda t: np.cos(omega * t), _shape_l1(f.a))
    return f.amplitude * val


def sine_transform(f: TemporalTestFunction, omega: float) -> float:
    """``int f(t) sin(omega t) dt``; exactly 0 for symmetric ``f``."""
    if f.symmetric:
        return 0.0
    val = _adaptive(f, lambda t: np.sin(omega * t), _shape_l1(f.a))
    return f.amplitude * val


def _normalize(f: TemporalTestFunction, omega: float, target: float) -> TemporalTestFunction:
    c = cosine_transform(f, omega)
    if abs(c) < OVERLAP_FLOOR * l1_norm(f):
        raise NearZeroOverlapError(
            f"cosine overlap {c!r} at omega={omega!r} is numerically zero; reshape the bump")
    return f.scaled(target / c)


def normalize_eta_hadamard(f: TemporalTestFunction, omega: float) -> TemporalTestFunction:
    """Rescale so that ``(1/(2 omega)) (int f cos(omega t) dt)^2 = 1``.

    The positive root ``int f cos(omega t) dt = sqrt(2 omega)`` is chosen.
    """
    return _normalize(f, omega, math.sqrt(2.0 * omega))


def normalize_eta_sj(f: TemporalTestFunction, mc: ModeConstants) -> TemporalTestFunction:
    """Rescale so that ``(|S|/(2 omega |C|)) (int f cos(omega t) dt)^2 = 1``."""
    return _normalize(f, mc.omega, math.sqrt(2.0 * mc.omega * (1.0 - mc.delta)))


def default_width(omega: float, tau: float) -> float:
    return min(0.8 * tau, math.pi / (2.0 * omega))


def mode_test_function(omega: float, tau: float, normalization: str = "hadamard",
                       mc: ModeConstants | None = None, max_halvings: int = 6) -> TemporalTestFunction:
    """Symmetric bump on ``(-tau, tau)`` normalised against one mode.

    Starts from :func:`default_width` and halves the width (at most
    ``max_halvings`` times) while the cosine overlap is numerically zero.
    ``normalization`` is ``'hadamard'`` or ``'sj'``; the latter needs ``mc``.
    """
    if normalization not in ("hadamard", "sj"):
        raise InvalidParameterError(f"unknown normalization {normalization!r}")
    if normalization == "sj" and mc is None:
        raise InvalidParameterError("S-J normalization requires ModeConstants")
    a = default_width(omega, tau)
    for _ in range(max_halvings + 1):
        try:
            if normalization == "hadamard":
                return normalize_eta_hadamard(bump(a), omega)
            return normalize_eta_sj(bump(a), mc)
        except NearZeroOverlapError:
            a /= 2.0
    raise NearZeroOverlapError(f"no admissible bump width found for omega={omega!r}")
