"""Command-line front end: ``sjslab <subcommand> [options]``.

Every subcommand writes plot-ready CSV tables and/or a JSON report. JSON
reports embed the full run configuration. Exit status: 0 success, 2
validation error, 3 accuracy error, 64 usage error (bad flags or an
unreadable config file).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import diagnostics as dg
from .errors import AccuracyError, SJSlabError
from .oracle import limit_tau_check, run_validation_suite
from .slab_modes import mode_arrays
from .smearing import bump
from .spectral_geometry import (SpatialSpectrum, build_custom_spectrum, build_sphere_spectrum,
                                build_torus_spectrum)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ACCURACY = 3
EXIT_USAGE = 64

SUBCOMMANDS = ("spectrum", "modes", "hadamard", "disjoint", "limit", "oracle", "scan")
FLOAT_FMT = ".17g"

MODES_CSV_COLUMNS = ("level", "omega", "multiplicity", "sinc2wt", "normC2", "normS2", "delta",
                     "lambda_plus")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    geometry: str = "sphere"
    radius: float = 1.0
    period: float = 1.0
    custom_file: str | None = None
    mass: float = 1.0
    tau: float = 1.0
    tau_prime: float | None = None
    levels: int = 1000
    window: int | None = None
    tail_threshold: float = 0.05
    growth_low: float = 1.8
    growth_high: float = 2.2
    r_max: int = 500
    omega: float = 1.0
    bump_a: float = 1.0
    taus: list = field(default_factory=lambda: [2.0, 5.0, 10.0, 20.0, 50.0, 100.0])
    tau_min: float = 0.3
    tau_max: float = 2.0
    tau_step: float = 0.01
    oracle_n: int = 401
    out: str | None = None
    formats: list = field(default_factory=lambda: ["csv", "json"])

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @property
    def thresholds(self) -> dg.Thresholds:
        return dg.Thresholds(self.tail_threshold, self.growth_low, self.growth_high)


def _f(x) -> str:
    return format(float(x), FLOAT_FMT)


def build_spectrum(cfg: RunConfig) -> SpatialSpectrum:
    if cfg.geometry == "sphere":
        return build_sphere_spectrum(cfg.radius, cfg.mass, cfg.levels)
    if cfg.geometry == "torus":
        return build_torus_spectrum(cfg.period, cfg.mass, cfg.levels)
    if cfg.geometry == "custom":
        if not cfg.custom_file:
            raise UsageError("custom geometry needs --custom-file")
        try:
            doc = json.loads(Path(cfg.custom_file).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read custom spectrum: {exc}") from exc
        entries = [(lv["omega"], lv["multiplicity"]) for lv in doc["levels"]]
        return build_custom_spectrum(entries, cfg.mass)
    raise UsageError(f"unknown geometry {cfg.geometry!r}")


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _spectrum(cfg):
    spec = build_spectrum(cfg)
    table = _rows_csv(("level", "omega", "multiplicity"),
                      [(lv.level_index, _f(lv.omega), lv.multiplicity) for lv in spec.levels])
    return {"spectrum": spec.to_dict()}, {"spectrum": table}


def _modes(cfg):
    spec = build_spectrum(cfg)
    ma = mode_arrays(spec.omegas, cfg.tau)
    rows = []
    for i in range(len(spec)):
        rows.append((int(spec.indices[i]), _f(ma.omega[i]), int(spec.multiplicities[i]),
                     _f(ma.sinc2wt[i]), _f(ma.normC2[i]), _f(ma.normS2[i]), _f(ma.delta[i]),
                     _f(ma.lambda_plus[i])))
    doc = {"modes": [dict(zip(MODES_CSV_COLUMNS, r)) for r in rows]}
    return doc, {"modes": _rows_csv(MODES_CSV_COLUMNS, rows)}


def _hadamard(cfg):
    spec = build_spectrum(cfg)
    rc, rs = dg.nec_series(spec, cfg.tau, window=cfg.window, thresholds=cfg.thresholds)
    doc = {"nec_C": rc.to_dict(), "nec_S": rs.to_dict()}
    if cfg.geometry == "sphere":
        k = 2.0 * cfg.tau / (math.pi * cfg.radius)
        special = {"candidate_taus": dg.sphere_candidate_taus(cfg.radius, 4),
                   "2tau/(pi R)": k}
        mr2 = (cfg.mass * cfg.radius) ** 2
        if abs(k - round(k)) < 1e-12 and round(k) >= 1 and mr2 != 1.0:
            j = np.array([cfg.levels // 2, cfg.levels]) if cfg.levels >= 2 else np.array([1])
            special["asymptotic_ratio"] = dict(zip(map(str, j.tolist()),
                                                   dg.sphere_asymptotic_check(
                                                       cfg.radius, cfg.mass, int(round(k)), j).tolist()))
        doc["sphere"] = special
    elif cfg.geometry == "torus":
        doc["torus"] = dg.torus_incommensurability(cfg.period, cfg.tau, cfg.r_max, mass=cfg.mass,
                                                   thresholds=cfg.thresholds).to_dict()
    return doc, {"hadamard_C": rc.to_csv(), "hadamard_S": rs.to_csv()}


def _disjoint(cfg):
    spec = build_spectrum(cfg)
    rh = dg.sj_hadamard_disjointness(spec, cfg.tau, window=cfg.window, thresholds=cfg.thresholds)
    doc = {"sj_hadamard": rh.to_dict()}
    tables = {"disjoint_sj_hadamard": rh.to_csv()}
    if cfg.tau_prime is not None:
        rr = dg.sj_sj_disjointness(spec, cfg.tau, cfg.tau_prime, window=cfg.window,
                                   thresholds=cfg.thresholds)
        doc["sj_sj"] = rr.to_dict()
        tables["disjoint_sj_sj"] = rr.to_csv()
    return doc, tables


def _limit(cfg):
    rep = limit_tau_check(cfg.omega, bump(cfg.bump_a), cfg.taus)
    rows = [(_f(t), _f(k), _f(p), _f(m)) for t, k, p, m in
            zip(rep.taus, rep.kernel_values, rep.transform_plus, rep.transform_minus)]
    table = _rows_csv(("tau", "kernel", "transform_plus_SS", "transform_minus_SS"), rows)
    return {"limit": rep.to_dict()}, {"limit": table}


def _oracle(cfg):
    recs = run_validation_suite(N=cfg.oracle_n)
    rows = [(r["case"], r["N"], _f(r["deviation"]), r["pass"]) for r in recs]
    return {"oracle": recs, "all_pass": all(r["pass"] for r in recs)}, \
        {"oracle": _rows_csv(("case", "N", "deviation", "pass"), rows)}


def _scan(cfg):
    spec = build_spectrum(cfg)
    n = int(round((cfg.tau_max - cfg.tau_min) / cfg.tau_step))
    taus = cfg.tau_min + cfg.tau_step * np.arange(n + 1)
    window = cfg.window if cfg.window is not None else min(200, len(spec))
    rep = dg.tau_scan(spec, taus, window)
    return {"scan": rep.to_dict()}, {"scan": rep.to_csv()}


HANDLERS = {"spectrum": _spectrum, "modes": _modes, "hadamard": _hadamard, "disjoint": _disjoint,
            "limit": _limit, "oracle": _oracle, "scan": _scan}


def run(subcommand: str, cfg: RunConfig, stdout=None) -> int:
    """Execute ``subcommand`` and write its artifacts; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        if subcommand not in HANDLERS:
            raise UsageError(f"unknown subcommand {subcommand!r}")
        bad = set(cfg.formats) - {"csv", "json"}
        if bad or not cfg.formats:
            raise UsageError(f"formats must be drawn from csv, json; got {cfg.formats}")
        doc, tables = HANDLERS[subcommand](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"accuracy error: {exc} (estimates {exc.estimates})", file=sys.stderr)
        return EXIT_ACCURACY
    except (SJSlabError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    # the output location is not part of the computation, so it stays out of the report
    embedded = {k: v for k, v in cfg.to_dict().items() if k != "out"}
    report = json.dumps({"subcommand": subcommand, "config": embedded, **doc},
                        indent=1, allow_nan=True) + "\n"
    if cfg.out is None:
        if "json" in cfg.formats:
            stdout.write(report)
        else:
            for text in tables.values():
                stdout.write(text)
        return EXIT_OK
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in cfg.formats:
        (out / f"{subcommand}.json").write_text(report)
    if "csv" in cfg.formats:
        for name, text in tables.items():
            (out / f"{name}.csv").write_text(text)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


_FLAG_MAP = {
    "geometry": "geometry", "radius": "radius", "period": "period", "custom_file": "custom_file",
    "mass": "mass", "tau": "tau", "tau_prime": "tau_prime", "levels": "levels",
    "window": "window", "r_max": "r_max", "omega": "omega", "bump_a": "bump_a",
    "taus": "taus", "tau_min": "tau_min", "tau_max": "tau_max", "tau_step": "tau_step",
    "oracle_n": "oracle_n", "out": "out", "tail_threshold": "tail_threshold",
    "growth_low": "growth_low", "growth_high": "growth_high",
}


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sjslab", description="S-J states on ultrastatic slabs: reports and tables")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--geometry", choices=("sphere", "torus", "custom"))
    p.add_argument("--radius", type=float, help="sphere radius R")
    p.add_argument("--period", type=float, help="torus period L")
    p.add_argument("--custom-file", help="JSON spectrum with a 'levels' list")
    p.add_argument("--mass", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--tau-prime", type=float)
    p.add_argument("--levels", type=int, help="level_max (sphere) or max |k|^2 (torus)")
    p.add_argument("--window", type=int)
    p.add_argument("--r-max", type=int)
    p.add_argument("--omega", type=float, help="mode frequency for 'limit'")
    p.add_argument("--bump-a", type=float, help="bump half-width for 'limit'")
    p.add_argument("--taus", type=float, nargs="+", help="tau schedule for 'limit'")
    p.add_argument("--tau-min", type=float)
    p.add_argument("--tau-max", type=float)
    p.add_argument("--tau-step", type=float)
    p.add_argument("--oracle-n", type=int)
    p.add_argument("--tail-threshold", type=float)
    p.add_argument("--growth-low", type=float)
    p.add_argument("--growth-high", type=float)
    p.add_argument("--out", help="output directory; omit to print to stdout")
    p.add_argument("--format", dest="formats", help="comma separated subset of csv,json")
    return p


def config_from_args(args) -> RunConfig:
    doc = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from exc
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
    for flag, key in _FLAG_MAP.items():
        val = getattr(args, flag)
        if val is not None:
            doc[key] = val
    if args.formats is not None:
        doc["formats"] = [s.strip() for s in args.formats.split(",") if s.strip()]
    try:
        return RunConfig.from_dict(doc)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(args.subcommand, cfg)


if __name__ == "__main__":
    sys.exit(main())
