"""Command-line front end: plot-ready CSV/JSON datasets and verification reports.

Exit status is 0 on success, 2 for a bad configuration and 3 when a
verification suite reports a failed check.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from . import extensions as ext
from . import oscillator as osc
from .oracle import pdm_fd_eigenvalues
from .pct import ModelParams
from .verify import DEFAULT_SWEEP, SUITES, run_suites

__all__ = ["ConfigError", "RunConfig", "Table", "build_tables", "run", "main", "to_csv", "to_json"]

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 2, 3
COMMANDS = ("spectrum", "potential", "wavefunction", "extend", "verify", "limits", "figures")
FORMATS = ("csv", "json")
FIGURES = ("1", "2", "3", "4", "all")
DEFAULT_GRID = (0.05, 6.0, 120)
FIGURE_GRID = (0.005, 40.0, 8000)  # wide enough for the power-law tails
LIMIT_ALPHAS = (0.2, 0.1, 0.05, 0.025)
LIMIT_RADII = (0.5, 1.0, 2.0)
MAX_POINTS = 1_000_000
SQ3 = math.sqrt(3.0)


class ConfigError(ValueError):
    """A run configuration breaks one of its constraints."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: ModelParams = ModelParams(1 / SQ3, 1, 1.0)
    extension: Optional[ext.ExtensionSpec] = None
    n_max: int = 3
    grid: Optional[tuple[float, float, int]] = None
    out: Optional[str] = None
    fmt: str = "csv"
    suite: str = "all"
    which: str = "all"
    oracle: bool = False
    sweep: tuple = DEFAULT_SWEEP

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"command must be one of {COMMANDS}, got {self.command!r}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if isinstance(self.n_max, bool) or int(self.n_max) != self.n_max or not 0 <= self.n_max <= osc.N_CAP:
            raise ConfigError(f"n_max must be an integer in [0, {osc.N_CAP}], got {self.n_max!r}")
        if self.grid is not None:
            lo, hi, pts = self.grid
            if not (math.isfinite(lo) and lo > 0):
                raise ConfigError(f"grid r_min must be > 0, got {lo!r}")
            if not (math.isfinite(hi) and hi > lo):
                raise ConfigError(f"grid r_max must exceed r_min, got {hi!r}")
            if int(pts) != pts or not 2 <= pts <= MAX_POINTS:
                raise ConfigError(f"grid points must be an integer in [2, {MAX_POINTS}], got {pts!r}")
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"suite must be one of {sorted(SUITES)} or 'all', got {self.suite!r}")
        if self.which not in FIGURES:
            raise ConfigError(f"figure must be one of {FIGURES}, got {self.which!r}")

    def radii(self, default=DEFAULT_GRID) -> np.ndarray:
        lo, hi, pts = self.grid or default
        return np.linspace(lo, hi, int(pts))


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([row[j] for row in self.rows])


# -- serialization ------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _clean(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def to_csv(table: Table) -> str:
    provenance = " ".join(f"{k}={_fmt(v)}" for k, v in table.meta.items())
    lines = [f"# pdmosc {__version__} {table.name} {provenance}".rstrip(), ",".join(table.columns)]
    lines += [",".join(_fmt(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def to_json(table: Table) -> str:
    doc = {"name": table.name, "meta": table.meta, "columns": list(table.columns),
           "rows": [list(r) for r in table.rows], "version": __version__}
    return json.dumps(doc, allow_nan=False, indent=1) + "\n"


def _render(table: Table, fmt: str) -> str:
    return to_csv(table) if fmt == "csv" else to_json(table)


def _table(name, columns, rows, meta) -> Table:
    rows = tuple(tuple(_clean(v) for v in row) for row in rows)
    return Table(name, tuple(columns), rows, {k: _clean(v) for k, v in meta.items()})


def _provenance(cfg: RunConfig) -> dict:
    p = cfg.params
    meta = {"alpha": p.alpha, "L": p.L, "omega": p.omega}
    if cfg.extension is not None:
        meta.update(type=cfg.extension.kind, m=cfg.extension.m)
    return meta


# -- commands -----------------------------------------------------------------

def _ext_energy(spec, p: ModelParams, n: int) -> float:
    if p.deformed:
        return ext.extended_energy(spec, p, n)
    return ext.limit_extended_energy(spec, p.L, p.omega, n)


def _spectrum(cfg: RunConfig) -> list[Table]:
    p, spec = cfg.params, cfg.extension
    if spec is None:
        levels = list(range(cfg.n_max + 1))
        energies = [osc.energy(p, n) for n in levels]
    else:
        levels = ext.extended_levels(spec, cfg.n_max)
        energies = [_ext_energy(spec, p, n) for n in levels]
    columns, rows = ["n", "E"], [[n, e] for n, e in zip(levels, energies)]
    if cfg.oracle:
        if not p.deformed:
            raise ConfigError("--oracle needs alpha > 0")
        if spec is None:
            ev = pdm_fd_eigenvalues(p, lambda r: osc.potential(p, r), len(levels))
        else:
            g = ext.gamma_shift(spec, p)
            ev = pdm_fd_eigenvalues(p, lambda r: ext.extended_potential(spec, p, r) + g, len(levels)) - g
        columns.append("E_oracle")
        for row, e in zip(rows, ev):
            row.append(float(e))
    return [_table("spectrum", columns, rows, _provenance(cfg))]


def _ext_potential(spec, p: ModelParams, r):
    if p.deformed:
        return ext.extended_potential(spec, p, r)
    return ext.limit_extended_potential(spec, p.L, p.omega, r)


def _potential(cfg: RunConfig) -> list[Table]:
    p, spec, r = cfg.params, cfg.extension, cfg.radii()
    if spec is None:
        col, v = "V", osc.potential(p, r)
    else:
        col, v = "V_ext", _ext_potential(spec, p, r)
    return [_table("potential", ["r", col], zip(r, v), _provenance(cfg))]


def _psi(p: ModelParams, n: int, r):
    if p.deformed:
        return osc.wavefunction(p, n, r)
    return osc.limit_wavefunction(p.L, p.omega, n, r)


def _ext_columns(spec, p: ModelParams, levels, r):
    if not p.deformed:
        raise ConfigError("extended wavefunctions need alpha > 0")
    return [ext.extended_wavefunction(spec, p, n, r) for n in levels]


def _wavefunction(cfg: RunConfig) -> list[Table]:
    p, spec, r = cfg.params, cfg.extension, cfg.radii()
    if spec is None:
        levels = list(range(cfg.n_max + 1))
        cols = [_psi(p, n, r) for n in levels]
    else:
        levels = ext.extended_levels(spec, cfg.n_max)
        cols = _ext_columns(spec, p, levels, r)
    names = ["r"] + [f"psi_{n}" for n in levels]
    return [_table("wavefunction", names, zip(r, *cols), _provenance(cfg))]


def _extend(cfg: RunConfig) -> list[Table]:
    p, spec, r = cfg.params, cfg.extension, cfg.radii()
    if spec is None:
        raise ConfigError("extend needs --type (and --m)")
    levels = ext.extended_levels(spec, cfg.n_max)
    meta = _provenance(cfg)
    for n in levels:
        meta[f"E_{n}"] = _ext_energy(spec, p, n)
    if not p.deformed:
        return [_table("extend", ["r", "V_ext"], zip(r, _ext_potential(spec, p, r)), meta)]
    meta["gamma"] = ext.gamma_shift(spec, p)
    if not (spec.kind == "I" and p.L == 0):
        partner = ext.partner_params(spec, p)
        meta.update(partner_L=partner.L, partner_omega=partner.omega)
    cols = [ext.extended_potential(spec, p, r)] + _ext_columns(spec, p, levels, r)
    names = ["r", "V_ext"] + [f"psi_ext_{n}" for n in levels]
    return [_table("extend", names, zip(r, *cols), meta)]


def _limits(cfg: RunConfig) -> list[Table]:
    L, w, spec = cfg.params.L, cfg.params.omega, cfg.extension
    columns = ["alpha", "n", "E", "E_limit", "energy_error", "error_over_alpha"]
    columns += [f"psi_error_r{x:g}" for x in LIMIT_RADII]
    if spec is not None:
        columns += [f"vrat_error_r{x:g}" for x in LIMIT_RADII]
    radii = np.array(LIMIT_RADII)
    rows = []
    for a in LIMIT_ALPHAS:
        p = ModelParams(a, L, w)
        for n in range(cfg.n_max + 1):
            e, e0 = osc.energy(p, n), osc.limit_energy(L, w, n)
            dpsi = np.abs(osc.wavefunction(p, n, radii) - osc.limit_wavefunction(L, w, n, radii))
            row = [a, n, e, e0, abs(e - e0), abs(e - e0) / a, *dpsi]
            if spec is not None:
                row += list(np.abs(ext.rational_term(spec, p, radii) - ext.limit_rational_term(spec, L, w, radii)))
            rows.append(row)
    meta = _provenance(cfg)
    meta.pop("alpha")
    return [_table("limits", columns, rows, meta)]


def _verify(cfg: RunConfig) -> list[Table]:
    checks = run_suites(cfg.suite, cfg.sweep)
    rows = [[c.suite, c.name, c.measured, c.tolerance, c.passed] for c in checks]
    meta = {"suite": cfg.suite, "checks": len(checks), "failed": sum(not c.passed for c in checks),
            "passed": all(c.passed for c in checks)}
    return [_table("verify", ["suite", "check", "measured", "tolerance", "passed"], rows, meta)]


def figure_tables(which: str = "all", grid=None) -> list[Table]:
    """Datasets for the four reference plots at L = omega = 1."""
    L, w = 1, 1.0
    r = np.linspace(*(grid or FIGURE_GRID)[:2], int((grid or FIGURE_GRID)[2]))
    base = {"L": L, "omega": w}
    out = []
    if which in ("1", "all"):
        alphas = np.linspace(0.0, 1.0, 101)
        rows = [[a] + [osc.energy(ModelParams(a, L, w), n) for n in range(4)] for a in alphas]
        out.append(_table("fig1", ["alpha", "E_0", "E_1", "E_2", "E_3"], rows, base))
    if which in ("2", "all"):
        alphas = {"1/sqrt(3)": 1 / SQ3, "1/(2sqrt(2))": 1 / (2 * math.sqrt(2.0)), "0": 0.0}
        cols = [_psi(ModelParams(a, L, w), 0, r) for a in alphas.values()]
        meta = dict(base, alphas=";".join(repr(a) for a in alphas.values()))
        out.append(_table("fig2", ["r"] + [f"psi_0[alpha={k}]" for k in alphas], zip(r, *cols), meta))
    spec = ext.ExtensionSpec("I", 1)
    p = ModelParams(1 / SQ3, L, w)
    if which in ("3", "all"):
        cols = [ext.extended_potential(spec, p, r), ext.limit_extended_potential(spec, L, w, r)]
        meta = dict(base, type="I", m=1, alphas=f"{p.alpha!r};0.0")
        out.append(_table("fig3", ["r", "V_ext[alpha=1/sqrt(3)]", "V_ext[alpha=0]"], zip(r, *cols), meta))
    if which in ("4", "all"):
        cols = [ext.extended_wavefunction(spec, p, n, r) for n in range(3)]
        meta = dict(base, type="I", m=1, alpha=p.alpha)
        for n in range(3):
            meta[f"E_{n}"] = ext.extended_energy(spec, p, n)
        out.append(_table("fig4", ["r", "psi_ext_0", "psi_ext_1", "psi_ext_2"], zip(r, *cols), meta))
    return out


def _figures(cfg: RunConfig) -> list[Table]:
    return figure_tables(cfg.which, cfg.grid)


_HANDLERS = {
    "spectrum": _spectrum,
    "potential": _potential,
    "wavefunction": _wavefunction,
    "extend": _extend,
    "verify": _verify,
    "limits": _limits,
    "figures": _figures,
}


def build_tables(cfg: RunConfig) -> list[Table]:
    if cfg.extension is not None and cfg.params.deformed:
        ext.check_extension(cfg.extension, cfg.params)
    return _HANDLERS[cfg.command](cfg)


def _write(tables: list[Table], cfg: RunConfig, stdout) -> None:
    if cfg.out is None:
        stdout.write("\n".join(_render(t, cfg.fmt) for t in tables))
        return
    out = Path(cfg.out)
    if len(tables) > 1:
        out.mkdir(parents=True, exist_ok=True)
        for t in tables:
            (out / f"{t.name}.{cfg.fmt}").write_text(_render(t, cfg.fmt), encoding="utf-8")
    else:
        out.write_text(_render(tables[0], cfg.fmt), encoding="utf-8")


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        tables = build_tables(cfg)
    except ValueError as exc:  # ConfigError, InvalidExtension and parameter checks
        print(f"pdmosc: error: {exc}", file=stderr)
        return EXIT_CONFIG
    _write(tables, cfg, stdout)
    if cfg.command == "verify" and not tables[0].meta["passed"]:
        failed = [row[1] for row in tables[0].rows if not row[4]]
        print(f"pdmosc: verification failed: {'; '.join(failed)}", file=stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def _grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be r_min:r_max:points, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be r_min:r_max:points, got {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdmosc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--alpha", type=float, default=None, help="deformation parameter (default 1/sqrt(3))")
    ap.add_argument("--L", type=int, default=None, help="angular momentum (default 1)")
    ap.add_argument("--omega", type=float, default=None, help="oscillator frequency (default 1)")
    ap.add_argument("--type", choices=ext.KINDS, default=None, help="rational extension type")
    ap.add_argument("--m", type=int, default=1, help="extension degree (default 1)")
    ap.add_argument("--n-max", type=int, default=3, help="highest level (default 3)")
    ap.add_argument("--grid", type=_grid, default=None, help="r_min:r_max:points")
    ap.add_argument("--format", choices=FORMATS, default="csv", dest="fmt")
    ap.add_argument("--out", default=None, help="output file (directory for several datasets)")
    ap.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    ap.add_argument("--which", choices=FIGURES, default="all", help="figure dataset")
    ap.add_argument("--oracle", action="store_true", help="add a finite-difference column to spectrum")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    explicit = any(v is not None for v in (ns.alpha, ns.L, ns.omega))
    try:
        params = ModelParams(1 / SQ3 if ns.alpha is None else ns.alpha,
                             1 if ns.L is None else ns.L,
                             1.0 if ns.omega is None else ns.omega)
        spec = ext.ExtensionSpec(ns.type, ns.m) if ns.type else None
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    sweep = (params,) if explicit else DEFAULT_SWEEP
    if explicit and ns.command == "verify" and not params.deformed:
        raise ConfigError("verify needs alpha > 0")
    return RunConfig(ns.command, params, spec, ns.n_max, ns.grid, ns.out, ns.fmt, ns.suite, ns.which,
                     ns.oracle, sweep)


def main(argv=None) -> int:
    ns = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ConfigError as exc:
        print(f"pdmosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
