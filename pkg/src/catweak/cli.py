"""Command-line front end.

    catweak fig1 --out out/            # overlap profile (delta, overlap)
    catweak fig2 --grid 512 512        # Wigner field + JSON summary
    catweak sweep                      # complementarity table
    catweak custom --config run.json
    catweak validate fig4

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import ConfigError
from .figures import (
    PRODUCTS,
    RECIPES,
    SCENARIOS,
    NumericalFailure,
    RunConfig,
    format_summary,
    run,
    validate,
)
from .state import CatState, as_complex
from .stern_gerlach import SGConfig
from .weak import SpinSelection

SCHEMA_VERSION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_TOP_KEYS = {
    "schema_version", "scenario", "state", "sg", "selection", "hbar", "grid",
    "delta_range", "scan_points", "products", "sweep", "output", "format",
}
_STATE_KEYS = {"x0", "p0", "eta", "phi", "a", "b"}
_SG_KEYS = {"B", "tau", "mu", "m", "eta", "p_y", "d"}
_SELECTION_KEYS = {"phi", "a1", "a2"}
_GRID_KEYS = {"nx", "np", "x_range", "p_range"}
_SWEEP_KEYS = {"x0", "p0", "phi"}


def _strict(obj, allowed: set, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(unknown)}")
    return obj


def _number(obj, key, where, default=None):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{where}.{key}: required")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{where}.{key}: expected a finite number, got {value!r}")
    return float(value)


def _pair(obj, key, where):
    value = obj.get(key)
    if value is None:
        return None
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value)):
        raise ConfigError(f"{where}.{key}: expected [lo, hi]")
    if not value[1] > value[0]:
        raise ConfigError(f"{where}.{key}: need hi > lo")
    return float(value[0]), float(value[1])


def _parse_state(obj, hbar) -> CatState:
    obj = _strict(obj, _STATE_KEYS, "state")
    x0 = _number(obj, "x0", "state")
    p0 = _number(obj, "p0", "state")
    eta = _number(obj, "eta", "state", 1.0)
    try:
        if "phi" in obj:
            if "a" in obj or "b" in obj:
                raise ConfigError("state: give either 'phi' or 'a'/'b', not both")
            return CatState.from_phi(_number(obj, "phi", "state"), x0, p0, eta, hbar)
        if "a" not in obj or "b" not in obj:
            raise ConfigError("state: needs 'phi' or both 'a' and 'b'")
        return CatState(as_complex(obj["a"], "state.a"), as_complex(obj["b"], "state.b"), x0, p0, eta, hbar)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"state: {exc}") from exc


def _parse_selection(obj) -> SpinSelection:
    obj = _strict(obj, _SELECTION_KEYS, "selection")
    try:
        if "phi" in obj:
            return SpinSelection.from_phi(_number(obj, "phi", "selection"))
        return SpinSelection(as_complex(obj["a1"], "selection.a1"), as_complex(obj["a2"], "selection.a2"))
    except KeyError as exc:
        raise ConfigError(f"selection: missing {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"selection: {exc}") from exc


def _parse_sg(obj, hbar) -> SGConfig:
    obj = _strict(obj, _SG_KEYS, "sg")
    kwargs = {k: _number(obj, k, "sg") for k in ("B", "tau")}
    for k, default in (("mu", 1.0), ("m", 1.0), ("eta", 1.0), ("p_y", 1.0)):
        kwargs[k] = _number(obj, k, "sg", default)
    if "d" in obj:
        kwargs["d"] = _number(obj, "d", "sg")
    try:
        return SGConfig(hbar=hbar, **kwargs)
    except ValueError as exc:
        raise ConfigError(f"sg: {exc}") from exc


def config_from_dict(doc: dict, base: dict | None = None) -> RunConfig:
    """Build a ``RunConfig`` from a parsed JSON document (unknown keys rejected)."""
    doc = _strict(doc, _TOP_KEYS, "config")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"config.schema_version: expected {SCHEMA_VERSION}, got {doc.get('schema_version')!r}")
    kwargs = dict(base or {})
    if "scenario" in doc:
        kwargs["scenario"] = doc["scenario"]
    hbar = _number(doc, "hbar", "config", kwargs.get("hbar", 1.0))
    if hbar <= 0:
        raise ConfigError("config.hbar: must be positive")
    kwargs["hbar"] = hbar
    if "state" in doc:
        kwargs["state"] = _parse_state(doc["state"], hbar)
    if "sg" in doc:
        kwargs["sg"] = _parse_sg(doc["sg"], hbar)
    if "selection" in doc:
        kwargs["selection"] = _parse_selection(doc["selection"])
    if "grid" in doc:
        grid = _strict(doc["grid"], _GRID_KEYS, "grid")
        counts = tuple(int(_number(grid, k, "grid", 512)) for k in ("nx", "np"))
        kwargs["grid_counts"] = counts
        kwargs["x_range"] = _pair(grid, "x_range", "grid")
        kwargs["p_range"] = _pair(grid, "p_range", "grid")
    if "delta_range" in doc:
        kwargs["delta_range"] = _pair(doc, "delta_range", "config")
    if "scan_points" in doc:
        kwargs["scan_points"] = int(_number(doc, "scan_points", "config"))
    if "products" in doc:
        products = doc["products"]
        if not isinstance(products, list) or not products:
            raise ConfigError(f"config.products: expected a non-empty list drawn from {PRODUCTS}")
        kwargs["products"] = tuple(products)
    if "sweep" in doc:
        sweep = _strict(doc["sweep"], _SWEEP_KEYS, "sweep")
        for key in ("x0", "p0"):
            if key in sweep:
                values = sweep[key]
                if not isinstance(values, list) or not values:
                    raise ConfigError(f"sweep.{key}: expected a non-empty list of numbers")
                kwargs[f"sweep_{key}"] = tuple(float(v) for v in values)
        if "phi" in sweep:
            kwargs["sweep_phi"] = _number(sweep, "phi", "sweep")
    if "output" in doc:
        kwargs["out"] = Path(doc["output"])
    if "format" in doc:
        kwargs["fmt"] = doc["format"]
    if "scenario" not in kwargs:
        raise ConfigError("config.scenario: required")
    return RunConfig(**kwargs)


def load_config(path: Path, base: dict | None = None) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {str(path)!r} ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(doc, base)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catweak",
        description="Cat-state overlap zeros, Wigner negativity and weak-value pointer shifts.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="output directory (default: out)")
    common.add_argument("--format", choices=("csv", "json"), dest="fmt")
    common.add_argument("--hbar", type=float)
    common.add_argument("--grid", nargs=2, type=int, metavar=("NX", "NP"))
    common.add_argument("--config", type=Path, help="JSON run configuration")

    sub = parser.add_subparsers(dest="command", required=True)
    for name in RECIPES:
        sub.add_parser(name, parents=[common], help=f"data for {name}")
    sub.add_parser("sweep", parents=[common], help="complementarity table over x0 and p0")
    sub.add_parser("custom", parents=[common], help="run a JSON-configured state")
    val = sub.add_parser("validate", parents=[common], help="echo derived quantities without heavy work")
    val.add_argument("scenario", nargs="?", choices=SCENARIOS)
    return parser


def _config_from_args(args) -> RunConfig:
    scenario = args.scenario if args.command == "validate" else args.command
    base = {}
    if scenario:
        base["scenario"] = scenario
    if args.config is not None:
        cfg = load_config(args.config, base)
        if scenario and cfg.scenario != scenario:
            raise ConfigError(f"config.scenario: {cfg.scenario!r} conflicts with command {scenario!r}")
    else:
        if not scenario:
            raise ConfigError("validate: give a scenario or --config")
        if scenario == "custom":
            raise ConfigError("custom: --config is required")
        cfg = RunConfig(scenario=scenario)
    if args.out is not None:
        cfg.out = args.out
    if args.fmt is not None:
        cfg.fmt = args.fmt
    if args.hbar is not None:
        if not args.hbar > 0:
            raise ConfigError("--hbar: must be positive")
        if cfg.state is not None or cfg.sg is not None:
            raise ConfigError("--hbar: set 'hbar' inside the config for custom states")
        cfg.hbar = args.hbar
    if args.grid is not None:
        if min(args.grid) < 16:
            raise ConfigError("--grid: need at least 16 points per axis")
        cfg.grid_counts = tuple(args.grid)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "validate":
            print(json.dumps(validate(cfg), indent=1, sort_keys=True))
        else:
            print(format_summary(run(cfg)))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure in {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
