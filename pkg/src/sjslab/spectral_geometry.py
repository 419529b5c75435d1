"""Spectra of K = -Laplacian + m^2 on compact spatial sections.

Levels are stored with explicit multiplicities: every quantity built on top
of a spectrum depends on a mode only through its frequency, so a degenerate
level is represented once and weighted by its multiplicity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import InvalidParameterError, ValidationError

__all__ = [
    "SpectrumLevel",
    "SpatialSpectrum",
    "build_sphere_spectrum",
    "build_torus_spectrum",
    "build_custom_spectrum",
    "lattice_counts",
]


class SpectrumLevel(NamedTuple):
    level_index: int
    omega: float
    multiplicity: int


def _readonly(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SpatialSpectrum:
    """Ordered eigenfrequencies with multiplicities.

    Parameters
    ----------
    indices : array of int
        Level labels. ``j`` for the sphere, ``n = |k|^2`` for the torus,
        the position for custom spectra.
    omegas : array of float
        Strictly increasing frequencies, all ``>= mass``.
    multiplicities : array of int
        Degeneracy of each level.
    mass : float
    geometry : {'sphere', 'torus', 'custom'}
    params : dict
        Geometry parameters (``radius`` or ``period``).
    """

    indices: np.ndarray
    omegas: np.ndarray
    multiplicities: np.ndarray
    mass: float
    geometry: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "indices", _readonly(np.asarray(self.indices, dtype=np.int64)))
        object.__setattr__(self, "omegas", _readonly(np.asarray(self.omegas, dtype=float)))
        object.__setattr__(self, "multiplicities", _readonly(np.asarray(self.multiplicities, dtype=np.int64)))
        object.__setattr__(self, "params", dict(self.params))
        n = len(self.omegas)
        if len(self.indices) != n or len(self.multiplicities) != n:
            raise ValidationError("indices, omegas and multiplicities must have equal length")
        if n and np.any(np.diff(self.omegas) <= 0):
            raise ValidationError("levels must be strictly increasing in omega")

    def __len__(self):
        return len(self.omegas)

    def __iter__(self):
        return iter(self.levels)

    @property
    def levels(self) -> list[SpectrumLevel]:
        return [SpectrumLevel(int(i), float(w), int(d))
                for i, w, d in zip(self.indices, self.omegas, self.multiplicities)]

    def truncate(self, count: int) -> "SpatialSpectrum":
        """Return the first ``count`` levels."""
        if count < 0:
            raise InvalidParameterError("count must be nonnegative")
        return SpatialSpectrum(self.indices[:count], self.omegas[:count],
                               self.multiplicities[:count], self.mass,
                               self.geometry, self.params)

    def to_dict(self) -> dict:
        doc = {"geometry": self.geometry, "mass": self.mass}
        doc.update(self.params)
        doc["levels"] = [{"index": lv.level_index, "omega": lv.omega,
                          "multiplicity": lv.multiplicity} for lv in self.levels]
        return doc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> "SpatialSpectrum":
        levels = doc["levels"]
        params = {k: v for k, v in doc.items() if k not in ("geometry", "mass", "levels")}
        return cls([lv["index"] for lv in levels],
                   [lv["omega"] for lv in levels],
                   [lv["multiplicity"] for lv in levels],
                   float(doc["mass"]), doc["geometry"], params)

    @classmethod
    def from_json(cls, text: str) -> "SpatialSpectrum":
        return cls.from_dict(json.loads(text))


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not (np.isfinite(value) and value > 0):
            raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")


def build_sphere_spectrum(R: float, m: float, level_max: int) -> SpatialSpectrum:
    """Spectrum on the round 3-sphere of radius ``R``.

    Level ``j`` has ``omega_j = sqrt(j(j+2)/R^2 + m^2)`` and multiplicity
    ``(j+1)^2``, for ``j = 0, ..., level_max``.
    """
    _check_positive(R=R, m=m)
    if level_max < 0:
        raise InvalidParameterError("level_max must be >= 0")
    j = np.arange(level_max + 1, dtype=np.int64)
    jf = j.astype(float)
    # (j(j+2) + (mR)^2) / R^2 keeps omega = (j+1)/R exact when mR = 1
    omegas = np.sqrt(jf * (jf + 2.0) + (m * R) ** 2) / R
    return SpatialSpectrum(j, omegas, (j + 1) ** 2, float(m), "sphere", {"radius": float(R)})


def lattice_counts(norm2_max: int) -> np.ndarray:
    """Number of ``k in Z^3`` with ``|k|^2 = n`` for ``n = 0..norm2_max``.

    Brute force over the lattice cube, one ``k1`` slab at a time.
    """
    if norm2_max < 0:
        raise InvalidParameterError("norm2_max must be >= 0")
    kmax = math.isqrt(norm2_max)
    k = np.arange(-kmax, kmax + 1, dtype=np.int64)
    plane = (k[:, None] ** 2 + k[None, :] ** 2).ravel()
    counts = np.zeros(norm2_max + 1, dtype=np.int64)
    for k1 in k:
        n = plane + k1 * k1
        n = n[n <= norm2_max]
        counts += np.bincount(n, minlength=norm2_max + 1)
    return counts


def build_torus_spectrum(L: float, m: float, norm2_max: int) -> SpatialSpectrum:
    """Spectrum on the flat 3-torus ``R^3/(L Z)^3``.

    One level per achievable ``n = |k|^2 <= norm2_max`` with frequency
    ``sqrt((2 pi/L)^2 n + m^2)``; non-representable ``n`` give no level.
    """
    _check_positive(L=L, m=m)
    counts = lattice_counts(norm2_max)
    n = np.nonzero(counts)[0]
    omegas = np.sqrt((2.0 * np.pi / L) ** 2 * n + m * m)
    return SpatialSpectrum(n, omegas, counts[n], float(m), "torus", {"period": float(L)})


def build_custom_spectrum(entries: Iterable[tuple[float, int]], m: float) -> SpatialSpectrum:
    """Validated spectrum from ``(omega, multiplicity)`` pairs.

    Entries are sorted by frequency and exactly equal frequencies are merged
    by adding their multiplicities.
    """
    _check_positive(m=m)
    entries = list(entries)
    if not entries:
        raise ValidationError("custom spectrum needs at least one entry")
    merged: dict[float, int] = {}
    for omega, mult in entries:
        omega = float(omega)
        if not np.isfinite(omega) or omega <= 0:
            raise ValidationError(f"omega must be positive, got {omega!r}")
        if omega < m:
            raise ValidationError(f"omega={omega!r} is below the mass gap m={m!r}")
        if int(mult) != mult or mult < 1:
            raise ValidationError(f"multiplicity must be a positive integer, got {mult!r}")
        merged[omega] = merged.get(omega, 0) + int(mult)
    omegas = sorted(merged)
    return SpatialSpectrum(np.arange(len(omegas)), omegas, [merged[w] for w in omegas],
                           float(m), "custom")
