"""Figure recipes, the complementarity sweep, and data export.

Every recipe is deterministic: fixed grids, no randomness, floats written
with ``repr`` so two runs produce byte-identical files.
"""

from __future__ import annotations

import contextlib
import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import CatWeakError, ConfigError, RegimeError
from .sensitivity import find_zeros, sensitivity_report
from .state import CatState, position_density
from .stern_gerlach import SGConfig, post_select, sg_inner_product
from .weak import Regime, SpinSelection, position_peak_prediction, regime
from .wigner import PhaseSpaceGrid, wigner_field

PHI = math.pi / 2.02
SCENARIOS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "sweep", "custom")
PRODUCTS = ("overlap", "wigner", "position")
SWEEP_X0 = (1e-4, 0.01, 0.1, 1.0, 6.0)
SWEEP_P0 = (0.01, 1e-3)


@dataclass(frozen=True)
class FigureRecipe:
    name: str
    product: str
    x0: float
    p0: float
    eta: float = 1.0
    phi: float = PHI

    def state(self, hbar: float = 1.0) -> CatState:
        return CatState.from_phi(self.phi, self.x0, self.p0, self.eta, hbar)

    def selection(self) -> SpinSelection:
        return SpinSelection.from_phi(self.phi)


_STRONG = dict(x0=6.0, p0=0.01)
_WEAK = dict(x0=1e-4, p0=1e-3)
RECIPES = {
    "fig1": FigureRecipe("fig1", "overlap", **_STRONG),
    "fig2": FigureRecipe("fig2", "wigner", **_STRONG),
    "fig3": FigureRecipe("fig3", "position", **_STRONG),
    "fig4": FigureRecipe("fig4", "overlap", **_WEAK),
    "fig5": FigureRecipe("fig5", "wigner", **_WEAK),
    "fig6": FigureRecipe("fig6", "position", **_WEAK),
}


class NumericalFailure(CatWeakError):
    def __init__(self, module: str, cause: Exception):
        super().__init__(f"{module}: {cause}")
        self.module = module
        self.cause = cause


@contextlib.contextmanager
def stage(module: str):
    """Tag numerical errors with the module that raised them."""
    try:
        yield
    except (ConfigError, NumericalFailure):
        raise
    except CatWeakError as exc:
        raise NumericalFailure(module, exc) from exc


@dataclass
class RunConfig:
    scenario: str
    state: Optional[CatState] = None
    sg: Optional[SGConfig] = None
    selection: Optional[SpinSelection] = None
    hbar: float = 1.0
    grid_counts: tuple[int, int] = (512, 512)
    x_range: Optional[tuple[float, float]] = None
    p_range: Optional[tuple[float, float]] = None
    delta_range: Optional[tuple[float, float]] = None
    scan_points: int = 2000
    products: tuple[str, ...] = PRODUCTS
    sweep_x0: tuple[float, ...] = SWEEP_X0
    sweep_p0: tuple[float, ...] = SWEEP_P0
    sweep_phi: float = PHI
    out: Path = field(default_factory=lambda: Path("out"))
    fmt: str = "csv"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario: unknown value {self.scenario!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format: expected 'csv' or 'json', got {self.fmt!r}")
        if self.scenario == "custom":
            if (self.state is None) == (self.sg is None):
                raise ConfigError("custom scenario needs exactly one of 'state' or 'sg'")
            if self.sg is not None and self.selection is None:
                raise ConfigError("'sg' requires a 'selection'")
        elif self.state is not None or self.sg is not None:
            raise ConfigError(f"{self.scenario} uses fixed recipe parameters; drop 'state'/'sg'")
        for name in self.products:
            if name not in PRODUCTS:
                raise ConfigError(f"products: unknown entry {name!r}")

    def resolved_state(self) -> CatState:
        if self.scenario in RECIPES:
            return RECIPES[self.scenario].state(self.hbar)
        if self.state is not None:
            return self.state
        if self.sg is not None:
            with stage("stern-gerlach"):
                return post_select(self.sg, self.selection)
        raise ConfigError(f"{self.scenario} has no single state")

    def resolved_selection(self, state: CatState) -> SpinSelection:
        if self.scenario in RECIPES:
            return RECIPES[self.scenario].selection()
        if self.selection is not None:
            return self.selection
        from .weak import selection_from_branches

        return selection_from_branches(state.a, state.b)

    def phase_grid(self, state: CatState) -> PhaseSpaceGrid:
        nx, np_ = self.grid_counts
        default = PhaseSpaceGrid.default_for(state, nx, np_)
        xr = self.x_range or (default.x_min, default.x_max)
        pr = self.p_range or (default.p_min, default.p_max)
        return PhaseSpaceGrid(xr[0], xr[1], pr[0], pr[1], nx, np_)

    def position_grid(self, state: CatState) -> np.ndarray:
        lo, hi = self.x_range or (-(state.x0 + 6 * state.eta), state.x0 + 6 * state.eta)
        step = state.eta / 400.0
        return np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)


# -- products --------------------------------------------------------------


def overlap_product(state: CatState, cfg: RunConfig):
    with stage("displacement-sensitivity"):
        profile = find_zeros(state, cfg.delta_range, cfg.scan_points)
        report = sensitivity_report(state, cfg.delta_range)
    columns = {"delta": profile.deltas, "overlap": profile.values}
    summary = {
        "inner_product": state.inner_product,
        "zeros": [float(z) for z in profile.zeros],
        "first_zero": profile.first_zero,
        "min_spacing": profile.min_spacing,
        "fourier_scale": report.fourier_scale,
        "sub_fourier": report.sub_fourier,
    }
    return columns, summary


def wigner_product(state: CatState, cfg: RunConfig):
    grid = cfg.phase_grid(state)
    with stage("wigner-phase-space"):
        wf = wigner_field(state, grid)
    X, P = np.meshgrid(grid.x, grid.p, indexing="ij")
    columns = {"x": X.ravel(), "p": P.ravel(), "w": wf.values.ravel()}
    summary = {
        "min_value": wf.min_value,
        "min_value_scaled": wf.min_value * math.pi * state.hbar,
        "total_mass": wf.total_mass,
        "grid": grid.as_dict(),
    }
    return columns, summary


def position_product(state: CatState, cfg: RunConfig):
    x = cfg.position_grid(state)
    with stage("cat-state-core"):
        density = position_density(state, x)
    summary = {"peak_x": float(x[int(np.argmax(density))]), "inner_product": state.inner_product}
    sel = cfg.resolved_selection(state)
    try:
        summary["predicted_peak_x"] = position_peak_prediction(state, sel)
    except (RegimeError, ValueError, CatWeakError):
        summary["predicted_peak_x"] = None
    return {"x": x, "density": density}, summary


_PRODUCT_FUNCS = {"overlap": overlap_product, "wigner": wigner_product, "position": position_product}
_HEADERS = {"overlap": ("delta", "overlap"), "wigner": ("x", "p", "w"), "position": ("x", "density")}


# -- sweep -----------------------------------------------------------------

SWEEP_HEADER = ("p0", "x0", "I", "first_zero", "sub_fourier", "wigner_min", "weak_regime", "weak_peak")


def sweep_rows(
    x0_values=SWEEP_X0, p0_values=SWEEP_P0, phi: float = PHI, eta: float = 1.0, hbar: float = 1.0,
    grid_counts: tuple[int, int] = (512, 512),
) -> list[dict]:
    """One row per (p0, x0): overlap zeros, Wigner minimum, and weak-value pointer (or None)."""
    sel = SpinSelection.from_phi(phi)
    rows = []
    for p0 in p0_values:
        for x0 in x0_values:
            state = CatState.from_phi(phi, x0, p0, eta, hbar)
            with stage("displacement-sensitivity"):
                report = sensitivity_report(state)
            with stage("wigner-phase-space"):
                wmin = wigner_field(state, PhaseSpaceGrid.default_for(state, *grid_counts)).min_value
            try:
                peak = position_peak_prediction(state, sel)
            except RegimeError:
                peak = None
            rows.append(
                {
                    "p0": p0,
                    "x0": x0,
                    "I": state.inner_product,
                    "first_zero": report.first_zero,
                    "sub_fourier": report.sub_fourier,
                    "wigner_min": wmin,
                    "weak_regime": peak is not None,
                    "weak_peak": peak,
                }
            )
    return rows


# -- writers ---------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return repr(float(value))


def write_csv(path: Path, header, columns) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*(columns[h] for h in header)):
            writer.writerow([_fmt(v) for v in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(_jsonable(payload), fh, sort_keys=True, indent=1)
        fh.write("\n")


# -- orchestration ---------------------------------------------------------


def _prepare_out(out: Path) -> Path:
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output: directory {str(out)!r} is not writable ({exc})") from exc
    return out


def _emit(out: Path, stem: str, product: str, columns, summary, fmt: str) -> list[Path]:
    written = []
    if fmt == "csv":
        path = out / f"{stem}.csv"
        write_csv(path, _HEADERS[product], columns)
        written.append(path)
    else:
        path = out / f"{stem}.json"
        write_json(path, {"columns": {h: columns[h] for h in _HEADERS[product]}, "summary": summary})
        written.append(path)
    if product == "wigner":
        path = out / f"{stem}_summary.json"
        write_json(path, summary)
        written.append(path)
    return written


def run(cfg: RunConfig) -> dict:
    """Run a scenario, write its data files, and return a summary."""
    out = _prepare_out(cfg.out)
    if cfg.scenario == "sweep":
        rows = sweep_rows(cfg.sweep_x0, cfg.sweep_p0, cfg.sweep_phi, hbar=cfg.hbar, grid_counts=cfg.grid_counts)
        columns = {h: [r[h] for r in rows] for h in SWEEP_HEADER}
        if cfg.fmt == "csv":
            path = out / "sweep.csv"
            write_csv(path, SWEEP_HEADER, columns)
        else:
            path = out / "sweep.json"
            write_json(path, {"rows": rows})
        both = [r for r in rows if r["sub_fourier"] and r["weak_regime"]]
        return {"scenario": "sweep", "rows": rows, "complementarity_violations": len(both), "files": [str(path)]}

    state = cfg.resolved_state()
    products = (RECIPES[cfg.scenario].product,) if cfg.scenario in RECIPES else cfg.products
    summary = {"scenario": cfg.scenario, "files": []}
    for product in products:
        columns, part = _PRODUCT_FUNCS[product](state, cfg)
        stem = cfg.scenario if cfg.scenario in RECIPES else f"custom_{product}"
        summary[product] = part
        summary["files"] += [str(p) for p in _emit(out, stem, product, columns, part, cfg.fmt)]
    return summary


def validate(cfg: RunConfig) -> dict:
    """Cheap diagnostics: I, N, regime and grid resolution, no heavy computation."""
    if cfg.scenario == "sweep":
        return {
            "scenario": "sweep",
            "points": [
                {"p0": p0, "x0": x0, "I": CatState.from_phi(cfg.sweep_phi, x0, p0, hbar=cfg.hbar).inner_product}
                for p0 in cfg.sweep_p0
                for x0 in cfg.sweep_x0
            ],
        }
    state = cfg.resolved_state()
    grid = cfg.phase_grid(state)
    report = {
        "scenario": cfg.scenario,
        "x0": state.x0,
        "p0": state.p0,
        "eta": state.eta,
        "hbar": state.hbar,
        "a": [state.a.real, state.a.imag],
        "b": [state.b.real, state.b.imag],
        "I": state.inner_product,
        "N": state.normalization,
        "regime": regime(state.inner_product).value,
        "grid": grid.as_dict(),
        "dx": grid.dx,
        "dp": grid.dp,
        "dx_ok": grid.dx <= state.eta / 8.0,
        "dp_ok": grid.dp <= state.hbar / (16.0 * state.eta),
    }
    if cfg.sg is not None:
        report["sg_inner_product"] = sg_inner_product(cfg.sg)
    return report


def format_summary(summary: dict) -> str:
    """Human-readable digest of a ``run`` result."""
    lines = [f"scenario: {summary['scenario']}"]
    if summary["scenario"] == "sweep":
        lines.append("  p0        x0        I            first_zero  sub_fourier  wigner_min    weak_peak")
        for r in summary["rows"]:
            fz = "-" if r["first_zero"] is None else f"{r['first_zero']:.6f}"
            wp = "-" if r["weak_peak"] is None else f"{r['weak_peak']:+.6f}"
            lines.append(
                f"  {r['p0']:<9.3g} {r['x0']:<9.3g} {r['I']:<12.6g} {fz:<11} {str(r['sub_fourier']):<12} "
                f"{r['wigner_min']:<+13.6g} {wp}"
            )
        lines.append(f"  rows with sub-Fourier zeros AND weak pointer: {summary['complementarity_violations']}")
    else:
        for product in PRODUCTS:
            part = summary.get(product)
            if part is None:
                continue
            if product == "overlap":
                zeros = ", ".join(f"{z:.6f}" for z in part["zeros"][:6]) or "none"
                lines.append(f"  I = {part['inner_product']:.6g}; overlap zeros: {zeros}")
                lines.append(f"  first zero = {part['first_zero']}, sub-Fourier = {part['sub_fourier']}")
            elif product == "wigner":
                lines.append(
                    f"  Wigner min = {part['min_value']:.6g} (x pi hbar: {part['min_value_scaled']:.6g}), "
                    f"mass = {part['total_mass']:.9f}"
                )
            else:
                pred = part["predicted_peak_x"]
                pred = "n/a (not weak regime)" if pred is None else f"{pred:.6f}"
                lines.append(f"  position peak = {part['peak_x']:.6f}; weak-value prediction = {pred}")
    for f in summary.get("files", []):
        lines.append(f"  wrote {f}")
    return "\n".join(lines)
