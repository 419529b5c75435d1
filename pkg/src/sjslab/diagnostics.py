"""Finite-truncation diagnostics for the Hadamard and disjointness criteria.

Each criterion is a statement about the tail of an infinite series over the
spectrum. A truncated series is summarised by

* the per-level terms (multiplicity weighted) and their compensated running
  sums, in ascending level order;
* a tail statistic: sup and mean of a sequence that must tend to zero for
  the series to converge, over a trailing window of levels;
* the growth ratio ``P(K) / P(K // 2)`` of partial sums, which is close to 2
  for linear divergence and close to 1 for a convergent series.

A :class:`Verdict` is a deterministic function of this evidence and of the
recorded thresholds. Only necessary conditions are tested, so a passing
verdict reads "consistent with summable", never "is Hadamard".
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateCaseError, InvalidParameterError
from .slab_modes import mode_arrays, sinpi, tj_eigenvalues_array
from .spectral_geometry import SpatialSpectrum

__all__ = [
    "Outcome",
    "Thresholds",
    "TailStatistic",
    "Verdict",
    "SeriesReport",
    "TorusReport",
    "ScanReport",
    "compensated_sum",
    "compensated_cumsum",
    "nec_series",
    "sin_tail_analysis",
    "sphere_candidate_taus",
    "sphere_asymptotic_check",
    "torus_incommensurability",
    "sj_hadamard_disjointness",
    "sj_sj_disjointness",
    "tau_scan",
    "SERIES_CSV_COLUMNS",
]


class Outcome(str, enum.Enum):
    CONSISTENT_WITH_SUMMABLE = "CONSISTENT_WITH_SUMMABLE"
    DIVERGENCE_INDICATED = "DIVERGENCE_INDICATED"
    EXACT_ZERO = "EXACT_ZERO"


@dataclass(frozen=True)
class Thresholds:
    tail: float = 0.05
    growth_low: float = 1.8
    growth_high: float = 2.2


@dataclass(frozen=True)
class TailStatistic:
    sequence: str
    window: int
    sup: float
    mean: float


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    evidence: dict
    thresholds: Thresholds

    def to_dict(self) -> dict:
        return {"outcome": self.outcome.value, "evidence": self.evidence,
                "thresholds": asdict(self.thresholds)}


def compensated_sum(values) -> float:
    """Neumaier (improved Kahan) summation in the given order."""
    return float(compensated_cumsum(values)[-1]) if len(values) else 0.0


def compensated_cumsum(values) -> np.ndarray:
    """Running sums with Neumaier compensation, strictly sequential."""
    out = np.empty(len(values))
    s = 0.0
    c = 0.0
    for i, x in enumerate(np.asarray(values, dtype=float).tolist()):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return out


def growth_ratio(partial_sums: np.ndarray) -> float:
    """``P(K) / P(K // 2)``; NaN when ``P(K // 2) == 0``."""
    k = len(partial_sums) - 1
    if k < 1:
        return math.nan
    base = partial_sums[k // 2]
    return float(partial_sums[k] / base) if base != 0 else math.nan


def _tail(sequence_name: str, values: np.ndarray, window: int) -> TailStatistic:
    if window < 1 or window > len(values):
        raise InvalidParameterError(f"window must be in [1, {len(values)}], got {window}")
    tail = np.abs(values[-window:])
    return TailStatistic(sequence_name, int(window), float(tail.max()), float(tail.mean()))


def _judge(terms: np.ndarray, ratio: float, tail: TailStatistic, th: Thresholds) -> Verdict:
    evidence = {"growth_ratio": ratio, "tail_sequence": tail.sequence, "tail_sup": tail.sup,
                "tail_mean": tail.mean, "tail_window": tail.window,
                "linear_growth": bool(th.growth_low <= ratio <= th.growth_high)}
    if not np.any(terms):
        outcome = Outcome.EXACT_ZERO
    elif ratio >= th.growth_low or tail.sup >= th.tail:
        outcome = Outcome.DIVERGENCE_INDICATED
    else:
        outcome = Outcome.CONSISTENT_WITH_SUMMABLE
    return Verdict(outcome, evidence, th)


def _fmt(x, fmt=".17g"):
    return format(float(x), fmt)


@dataclass(frozen=True)
class SeriesReport:
    """Truncated series with its evidence and verdict."""

    name: str
    level_indices: np.ndarray
    omegas: np.ndarray
    multiplicities: np.ndarray
    terms: np.ndarray
    partial_sums: np.ndarray
    tail: TailStatistic
    growth_ratio: float
    verdict: Verdict
    params: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "params": self.params, "levels": len(self.terms),
                "total": float(self.partial_sums[-1]), "growth_ratio": self.growth_ratio,
                "tail": asdict(self.tail), "verdict": self.verdict.to_dict()}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SERIES_CSV_COLUMNS)
        for i, om, d, t, p in zip(self.level_indices, self.omegas, self.multiplicities,
                                  self.terms, self.partial_sums):
            w.writerow([int(i), _fmt(om), int(d), _fmt(t), _fmt(p)])
        return buf.getvalue()


SERIES_CSV_COLUMNS = ("level", "omega", "multiplicity", "term", "partial_sum")


def _levels(spectrum: SpatialSpectrum, level_max: int | None) -> SpatialSpectrum:
    if level_max is None:
        return spectrum
    if level_max < 0 or level_max >= len(spectrum):
        raise InvalidParameterError(
            f"level_max={level_max} outside the spectrum extent 0..{len(spectrum) - 1}")
    return spectrum.truncate(level_max + 1)


def _default_window(n: int) -> int:
    return max(1, min(200, n // 5))


def _report(name, spec, terms, tail_name, tail_values, window, thresholds, params, aux=None):
    window = _default_window(len(terms)) if window is None else window
    partial = compensated_cumsum(terms)
    ratio = growth_ratio(partial)
    tail = _tail(tail_name, np.asarray(tail_values, dtype=float), window)
    params = dict(params, window=window)
    return SeriesReport(name, spec.indices, spec.omegas, spec.multiplicities, terms, partial,
                        tail, ratio, _judge(terms, ratio, tail, thresholds), params, aux or {})


def nec_series(spectrum: SpatialSpectrum, tau: float, level_max: int | None = None,
               tau_inner: float | None = None, window: int | None = None,
               thresholds: Thresholds = Thresholds()) -> tuple[SeriesReport, SeriesReport]:
    """The two square sums of eigenvalues of the differentiated normal-ordered kernel.

    Terms are ``d_j (w delta |C|^2 / 2)^2`` and
    ``d_j (w delta |S|^2 / (2(1 - delta)))^2`` with ``delta`` at ``tau`` and
    norms on ``(-tau_inner, tau_inner)`` (default ``tau / 2``). Both must be
    finite if the state is Hadamard.
    """
    spec = _levels(spectrum, level_max)
    tau_inner = tau / 2.0 if tau_inner is None else tau_inner
    lam_c, lam_s = tj_eigenvalues_array(spec.omegas, tau, tau_inner)
    mult = spec.multiplicities.astype(float)
    sin_tail = mode_arrays(spec.omegas, tau).sin2wt
    params = {"tau": tau, "tau_inner": tau_inner, "geometry": spectrum.geometry,
              "mass": spectrum.mass, **spectrum.params}
    rc = _report("nec_C", spec, mult * lam_c ** 2, "sin(2 omega tau)", sin_tail, window,
                 thresholds, params)
    rs = _report("nec_S", spec, mult * lam_s ** 2, "sin(2 omega tau)", sin_tail, window,
                 thresholds, params)
    return rc, rs


def sin_tail_analysis(spectrum: SpatialSpectrum, tau: float, window: int) -> TailStatistic:
    """Sup and mean of ``|sin(2 omega_j tau)|`` over the last ``window`` levels."""
    return _tail("sin(2 omega tau)", mode_arrays(spectrum.omegas, tau).sin2wt, window)


def sphere_candidate_taus(R: float, k_max: int) -> list[float]:
    """The only half-widths ``k pi R / 2`` for which ``sin(2 omega_j tau)`` can tend to 0."""
    if not R > 0:
        raise InvalidParameterError("R must be positive")
    return [k * math.pi * R / 2.0 for k in range(1, k_max + 1)]


def sphere_asymptotic_check(R: float, m: float, k: int, levels: Sequence[int]) -> np.ndarray:
    """Ratios ``sin^2(2 omega_j tau) / (((mR)^2 - 1) pi k / (2 j))^2`` at ``tau = k pi R/2``.

    They tend to 1 as ``j`` grows.
    """
    if not (R > 0 and m > 0 and k >= 1):
        raise InvalidParameterError("need R > 0, m > 0, k >= 1")
    mr2 = (m * R) ** 2
    if mr2 == 1.0:
        raise DegenerateCaseError("mR = 1: sin(2 omega_j tau) vanishes identically, "
                                  "use the exact-zero pathway")
    j = np.asarray(levels, dtype=float)
    if np.any(j < 1):
        raise InvalidParameterError("the asymptotic ratio is defined for j >= 1 only")
    # 2 omega_j tau / pi = k R omega_j = k sqrt(j(j+2) + (mR)^2)
    s = sinpi(k * np.sqrt(j * (j + 2.0) + mr2))
    model = (mr2 - 1.0) * math.pi * k / (2.0 * j)
    return np.asarray(s, dtype=float) ** 2 / model ** 2


@dataclass(frozen=True)
class TorusReport:
    verdict: Verdict
    r: np.ndarray
    phase_axis: np.ndarray
    phase_diagonal: np.ndarray
    exact_axis: np.ndarray | None = None
    exact_diagonal: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.to_dict(), "r_min": int(self.r[0]), "r_max": int(self.r[-1])}


def torus_incommensurability(L: float, tau: float, r_max: int, mass: float | None = None,
                             r_min: int | None = None,
                             thresholds: Thresholds = Thresholds()) -> TorusReport:
    """Tails of ``sin 2 omega tau`` along the lattice rays ``(r,0,0)`` and ``(r,r,0)``.

    The leading-order phases are ``sin(4 pi r tau / L)`` and
    ``sin(4 sqrt2 pi r tau / L)``; they can only both tend to zero if
    ``4 tau/L`` and ``4 sqrt2 tau/L`` are both integers, which is impossible.
    Tails are taken over ``r_min <= r <= r_max`` (default ``r_min`` is
    ``ceil(0.6 r_max)``). When ``mass`` is given, tails of the exact
    frequencies are reported too; they differ from the leading-order phases by
    ``O(m^2 L / r)``.
    """
    if not (L > 0 and tau > 0 and r_max >= 1):
        raise InvalidParameterError("need L > 0, tau > 0, r_max >= 1")
    r_min = math.ceil(0.6 * r_max) if r_min is None else r_min
    if not 1 <= r_min <= r_max:
        raise InvalidParameterError("need 1 <= r_min <= r_max")
    r = np.arange(r_min, r_max + 1)
    x_axis = 4.0 * tau / L
    x_diag = 4.0 * math.sqrt(2.0) * tau / L
    ph_a = np.asarray(sinpi(r * x_axis), dtype=float)
    ph_d = np.asarray(sinpi(r * x_diag), dtype=float)
    ta = _tail("sin(4 pi r tau/L)", ph_a, len(r))
    td = _tail("sin(4 sqrt2 pi r tau/L)", ph_d, len(r))
    evidence = {
        "4tau/L": x_axis, "4sqrt2tau/L": x_diag,
        "dist_axis_to_integer": abs(x_axis - round(x_axis)),
        "dist_diagonal_to_integer": abs(x_diag - round(x_diag)),
        "tail_sup_axis": ta.sup, "tail_sup_diagonal": td.sup,
        "tail_mean_axis": ta.mean, "tail_mean_diagonal": td.mean,
        "r_min": int(r_min), "r_max": int(r_max),
    }
    ex_a = ex_d = None
    if mass is not None:
        k = 2.0 * math.pi / L
        w_a = np.sqrt((k * r) ** 2 + mass ** 2)
        w_d = np.sqrt(2.0 * (k * r) ** 2 + mass ** 2)
        ex_a = np.asarray(sinpi(w_a * (2.0 * tau / math.pi)), dtype=float)
        ex_d = np.asarray(sinpi(w_d * (2.0 * tau / math.pi)), dtype=float)
        evidence["exact_tail_sup_axis"] = float(np.abs(ex_a).max())
        evidence["exact_tail_sup_diagonal"] = float(np.abs(ex_d).max())
    if ta.sup == 0.0 and td.sup == 0.0:
        outcome = Outcome.EXACT_ZERO
    elif ta.sup >= thresholds.tail or td.sup >= thresholds.tail:
        outcome = Outcome.DIVERGENCE_INDICATED
    else:
        outcome = Outcome.CONSISTENT_WITH_SUMMABLE
    return TorusReport(Verdict(outcome, evidence, thresholds), r, ph_a, ph_d, ex_a, ex_d)


def sj_hadamard_disjointness(spectrum: SpatialSpectrum, tau: float, level_max: int | None = None,
                             window: int | None = None,
                             thresholds: Thresholds = Thresholds()) -> SeriesReport:
    """Square sum of ``:W_SJ:(e_j, e_j) = delta_j/(1 - delta_j)`` over a ground-state orthonormal system.

    Divergence rules out unitary equivalence of the S-J and ground-state
    representations.
    """
    spec = _levels(spectrum, level_max)
    ma = mode_arrays(spec.omegas, tau)
    val = ma.delta / (1.0 - ma.delta)
    terms = spec.multiplicities * val ** 2
    params = {"tau": tau, "geometry": spectrum.geometry, "mass": spectrum.mass, **spectrum.params}
    return _report("sj_hadamard", spec, terms, "sin(2 omega tau)", ma.sin2wt, window,
                   thresholds, params, {"values": val})


def sj_sj_disjointness(spectrum: SpatialSpectrum, tau: float, tau_prime: float,
                       level_max: int | None = None, window: int | None = None,
                       thresholds: Thresholds = Thresholds()) -> SeriesReport:
    """Square sum of ``mu_tau(e_j,e_j) - mu_tau'(e_j,e_j)`` for S-J states at two half-widths.

    With ``e_j`` normalised in the S-J state at ``tau`` the per-level value is
    ``|C|(delta - delta')/(|S|(1-delta)(1-delta'))`` with ``|C|, |S|`` at
    ``tau``, i.e. ``(delta - delta')/(1 - delta')``. The tail statistic is
    taken on ``(tau'/tau) sin(2 omega tau) - sin(2 omega tau')``.
    """
    if not (0 < tau_prime < tau):
        raise InvalidParameterError("need 0 < tau_prime < tau")
    spec = _levels(spectrum, level_max)
    ma = mode_arrays(spec.omegas, tau)
    mp = mode_arrays(spec.omegas, tau_prime)
    ratio_cs = np.sqrt(ma.normC2 / ma.normS2)
    val = ratio_cs * (ma.delta - mp.delta) / ((1.0 - ma.delta) * (1.0 - mp.delta))
    terms = spec.multiplicities * val ** 2
    seq = (tau_prime / tau) * ma.sin2wt - mp.sin2wt
    params = {"tau": tau, "tau_prime": tau_prime, "geometry": spectrum.geometry,
              "mass": spectrum.mass, **spectrum.params}
    return _report("sj_sj", spec, terms, "(tau'/tau) sin(2 omega tau) - sin(2 omega tau')", seq,
                   window, thresholds, params, {"values": val})


@dataclass(frozen=True)
class ScanReport:
    taus: np.ndarray
    tail_sup: np.ndarray
    tail_mean: np.ndarray
    window: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("tau", "tail_sup", "tail_mean"))
        for t, s, m in zip(self.taus, self.tail_sup, self.tail_mean):
            w.writerow([_fmt(t), _fmt(s), _fmt(m)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"window": self.window, "taus": self.taus.tolist(),
                "tail_sup": self.tail_sup.tolist(), "tail_mean": self.tail_mean.tolist()}


def tau_scan(spectrum: SpatialSpectrum | Callable[[], SpatialSpectrum], taus,
             window: int) -> ScanReport:
    """Sin-tail statistic at every ``tau`` of a grid."""
    spec = spectrum() if callable(spectrum) else spectrum
    taus = np.asarray(list(taus), dtype=float)
    sups = np.empty(len(taus))
    means = np.empty(len(taus))
    for i, tau in enumerate(taus):
        st = sin_tail_analysis(spec, float(tau), window)
        sups[i], means[i] = st.sup, st.mean
    return ScanReport(taus, sups, means, int(window))
