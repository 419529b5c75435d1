"""Smeared two-point values for mode-separable test functions.

A spacetime test function ``f(t) psi_j(x)`` pairs only with mode ``j``, so
every two-point function reduces to a product of temporal transforms. With
``Cf = int f cos(omega t)`` and ``Sf = int f sin(omega t)``:

    W_SJ(f, h)  = (Cf - i(1-d) Sf)(Ch + i(1-d) Sh) / (2 omega (1-d))
    W_H(f, h)   = (Cf - i Sf)(Ch + i Sh) / (2 omega)
    :W_SJ:(f,h) = [d^2 (CfCh + SfSh) + d(2-d)(CfCh - SfSh)] / (4 omega (1-d))

where the last line integrates the normal-ordered kernel term by term.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

from .slab_modes import ModeConstants, mode_constants
from .smearing import TemporalTestFunction, cosine_transform, sine_transform
from .spectral_geometry import SpatialSpectrum

__all__ = [
    "ElementKind",
    "ModeMatrixElement",
    "wsj_element",
    "wh_element",
    "normord_element",
    "commutator_element",
    "assemble_diagonal",
    "elements_to_csv",
    "ELEMENT_CSV_COLUMNS",
]


class ElementKind(str, enum.Enum):
    SJ = "SJ"
    H = "H"
    NORMORD = "NORMORD"


@dataclass(frozen=True)
class ModeMatrixElement:
    level_index: int
    omega: float
    multiplicity: int
    kind: ElementKind
    value: complex


def _transforms(f: TemporalTestFunction, omega: float, tau: float):
    f.check_support(tau)
    return cosine_transform(f, omega), sine_transform(f, omega)


def wsj_element(mc: ModeConstants, f: TemporalTestFunction, h: TemporalTestFunction) -> complex:
    """S-J two-point value ``W_SJ(f psi_j, h psi_j)``."""
    cf, sf = _transforms(f, mc.omega, mc.tau)
    ch, sh = _transforms(h, mc.omega, mc.tau)
    r = 1.0 - mc.delta
    return complex((cf - 1j * r * sf) * (ch + 1j * r * sh) / (2.0 * mc.omega * r))


def wh_element(omega: float, f: TemporalTestFunction, h: TemporalTestFunction,
               tau: float | None = None) -> complex:
    """Ground-state two-point value ``W_H(f psi_j, h psi_j)``.

    ``tau`` is only used to validate the supports.
    """
    if tau is not None:
        f.check_support(tau)
        h.check_support(tau)
    cf, sf = cosine_transform(f, omega), sine_transform(f, omega)
    ch, sh = cosine_transform(h, omega), sine_transform(h, omega)
    return complex((cf - 1j * sf) * (ch + 1j * sh) / (2.0 * omega))


def normord_element(mc: ModeConstants, f: TemporalTestFunction, h: TemporalTestFunction) -> complex:
    """Normal-ordered value ``:W_SJ:(f psi_j, h psi_j)``; real for real ``f, h``."""
    cf, sf = _transforms(f, mc.omega, mc.tau)
    ch, sh = _transforms(h, mc.omega, mc.tau)
    d = mc.delta
    cc, ss = cf * ch, sf * sh
    val = (d * d * (cc + ss) + d * (2.0 - d) * (cc - ss)) / (4.0 * mc.omega * (1.0 - d))
    return complex(val)


def commutator_element(omega: float, f: TemporalTestFunction, h: TemporalTestFunction) -> float:
    """``E(f, h) = int int f(t) sin(omega (t' - t))/omega h(t') dt dt'``."""
    cf, sf = cosine_transform(f, omega), sine_transform(f, omega)
    ch, sh = cosine_transform(h, omega), sine_transform(h, omega)
    return (cf * sh - sf * ch) / omega


def assemble_diagonal(spectrum: SpatialSpectrum, tau: float, f: TemporalTestFunction,
                      kind: ElementKind | str) -> list[ModeMatrixElement]:
    """Diagonal values ``X(f psi_j, f psi_j)`` for every level, ascending."""
    kind = ElementKind(kind)
    f.check_support(tau)
    out = []
    for level in spectrum.levels:
        if kind is ElementKind.H:
            value = wh_element(level.omega, f, f)
        else:
            mc = mode_constants(level.omega, tau)
            value = wsj_element(mc, f, f) if kind is ElementKind.SJ else normord_element(mc, f, f)
        out.append(ModeMatrixElement(level.level_index, level.omega, level.multiplicity, kind, value))
    return out


ELEMENT_CSV_COLUMNS = ("level", "omega", "multiplicity", "kind", "re", "im")


def elements_to_csv(elements, fmt: str = ".17g") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ELEMENT_CSV_COLUMNS)
    for e in elements:
        writer.writerow([e.level_index, format(e.omega, fmt), e.multiplicity, e.kind.value,
                         format(e.value.real, fmt), format(e.value.imag, fmt)])
    return buf.getvalue()
