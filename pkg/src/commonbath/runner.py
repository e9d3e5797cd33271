"""Reproducible experiment runner: configs, sweeps and file output.

A run is described by a single JSON document (or an equivalent
:class:`RunConfig`); command-line flags override individual fields. Output
is CSV or JSON with floats rendered by their shortest round-trip
representation, so identical configs produce byte-identical files.

Modes
-----
simulate    one parameter point, quantities sampled on a uniform tau grid
zeno        measurement-protected survival/concurrence per interval
stationary  tau -> infinity concurrence per system size and pair class
sweep       simulate over the cartesian grid of n, R, s, phi
verify      cross-validation report (see :mod:`commonbath.verification`)
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .entanglement import PairClass, closed_form_concurrence, stationary_concurrence
from .model import ModelParams, survival_probability
from .states import InitialKind, InitialSpec
from .verification import run_all_checks
from .zeno import effective_decay_rate

__all__ = [
    "ConfigError",
    "VerificationFailure",
    "RunConfig",
    "run_simulate",
    "run_zeno",
    "run_stationary",
    "run_sweep",
    "run_verify",
    "run_mode",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_VERIFY_FAILED",
    "EXIT_IO",
    "THREADS_ENV_VAR",
    "MAX_SWEEP_ROWS",
]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_FAILED = 2
EXIT_IO = 3

THREADS_ENV_VAR = "COMMONBATH_THREADS"
MAX_SWEEP_ROWS = 10_000_000

_MODES = ("simulate", "zeno", "stationary", "sweep", "verify")
_KINDS = {k.value: k for k in InitialKind}
_PAIRS = {p.value: p for p in PairClass}


class ConfigError(ValueError):
    """Invalid run configuration (exit code 1)."""


class VerificationFailure(RuntimeError):
    """One or more verification checks failed (exit code 2)."""

    def __init__(self, message: str, report: str = ""):
        super().__init__(message)
        self.report = report


@dataclass
class RunConfig:
    mode: str = "simulate"
    n: int = 4
    R: float = 0.1
    kind: str = "w_state"
    s: float = 0.0
    phi: float = 0.0
    k_index: int = 1
    l_index: int = 2
    tau_max: float = 10.0
    samples: int = 201
    pair_classes: list[str] = field(default_factory=lambda: ["pair_w"])
    zeno_intervals: list[float] = field(default_factory=lambda: [5.0, 1.0, 0.1])
    sweep_n: list[int] | None = None
    sweep_R: list[float] | None = None
    sweep_s: list[float] | None = None
    sweep_phi: list[float] | None = None
    output_path: str | None = None
    output_format: str = "csv"
    threads: int = 1
    tolerances: dict = field(default_factory=dict)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        """Build from the JSON layout (nested params/spec/sweep_grid)."""
        if not isinstance(raw, dict):
            raise ConfigError(f"config must be a JSON object, got {type(raw).__name__}")
        known_top = {
            "mode", "params", "spec", "tau_max", "samples", "pair_classes",
            "zeno_intervals", "sweep_grid", "output_path", "output_format",
            "threads", "tolerances",
        }
        unknown = set(raw) - known_top
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        if "mode" in raw:
            cfg.mode = raw["mode"]
        params = raw.get("params", {})
        if set(params) - {"n", "R"}:
            raise ConfigError(f"unknown params keys: {sorted(set(params) - {'n', 'R'})}")
        if "n" in params:
            cfg.n = params["n"]
        if "R" in params:
            cfg.R = params["R"]
        spec = raw.get("spec", {})
        spec_keys = {"kind", "s", "phi", "k_index", "l_index"}
        if set(spec) - spec_keys:
            raise ConfigError(f"unknown spec keys: {sorted(set(spec) - spec_keys)}")
        cfg.kind = spec.get("kind", cfg.kind)
        cfg.s = spec.get("s", cfg.s)
        cfg.phi = spec.get("phi", cfg.phi)
        cfg.k_index = spec.get("k_index", cfg.k_index)
        cfg.l_index = spec.get("l_index", cfg.l_index)
        for key in ("tau_max", "samples", "pair_classes", "zeno_intervals",
                    "output_path", "output_format", "threads", "tolerances"):
            if key in raw:
                setattr(cfg, key, raw[key])
        grid = raw.get("sweep_grid", {})
        grid_keys = {"n", "R", "s", "phi"}
        if set(grid) - grid_keys:
            raise ConfigError(f"unknown sweep_grid keys: {sorted(set(grid) - grid_keys)}")
        cfg.sweep_n = grid.get("n")
        cfg.sweep_R = grid.get("R")
        cfg.sweep_s = grid.get("s")
        cfg.sweep_phi = grid.get("phi")
        return cfg

    @classmethod
    def from_json_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)

    # -- validation --------------------------------------------------------

    def validated(self) -> "RunConfig":
        """Return a normalized copy, raising ConfigError on any problem."""
        cfg = replace(self)
        if cfg.mode not in _MODES:
            raise ConfigError(f"mode must be one of {_MODES}, got {cfg.mode!r}")
        try:
            cfg.params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if cfg.kind not in _KINDS:
            raise ConfigError(f"kind must be one of {sorted(_KINDS)}, got {cfg.kind!r}")
        try:
            cfg.spec()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not (cfg.tau_max > 0.0) or not math.isfinite(cfg.tau_max):
            raise ConfigError(f"tau_max must be finite and > 0, got {cfg.tau_max}")
        if cfg.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {cfg.samples}")
        if cfg.output_format not in ("csv", "json"):
            raise ConfigError(f"output_format must be csv or json, got {cfg.output_format!r}")
        if cfg.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {cfg.threads}")
        if cfg.mode in ("simulate", "sweep"):
            if not cfg.pair_classes:
                raise ConfigError("pair_classes must not be empty")
            for name in cfg.pair_classes:
                pair = _PAIRS.get(name)
                if pair is None:
                    raise ConfigError(f"unknown pair class {name!r}")
                self._check_pair(pair, cfg)
        if cfg.mode == "stationary":
            for name in cfg.pair_classes:
                if name not in _PAIRS:
                    raise ConfigError(f"unknown pair class {name!r}")
        if cfg.mode == "zeno":
            if cfg.kind != "w_state":
                raise ConfigError("zeno mode applies to the w_state family only")
            if not cfg.zeno_intervals:
                raise ConfigError("zeno_intervals must not be empty")
            for t in cfg.zeno_intervals:
                if not (0.0 < t <= cfg.tau_max):
                    raise ConfigError(
                        f"zeno interval {t} must lie in (0, tau_max = {cfg.tau_max}]"
                    )
        if cfg.mode == "sweep":
            cfg.sweep_n = list(cfg.sweep_n) if cfg.sweep_n else [cfg.n]
            cfg.sweep_R = list(cfg.sweep_R) if cfg.sweep_R else [cfg.R]
            cfg.sweep_s = list(cfg.sweep_s) if cfg.sweep_s else [cfg.s]
            cfg.sweep_phi = list(cfg.sweep_phi) if cfg.sweep_phi else [cfg.phi]
            for name, grid in (("n", cfg.sweep_n), ("R", cfg.sweep_R),
                               ("s", cfg.sweep_s), ("phi", cfg.sweep_phi)):
                if not grid:
                    raise ConfigError(f"sweep grid for {name} must not be empty")
            cells = (len(cfg.sweep_n) * len(cfg.sweep_R)
                     * len(cfg.sweep_s) * len(cfg.sweep_phi))
            rows = cells * cfg.samples
            if rows > MAX_SWEEP_ROWS:
                raise ConfigError(
                    f"sweep would produce {rows} rows, above the limit of {MAX_SWEEP_ROWS}"
                )
            for n in cfg.sweep_n:
                for r in cfg.sweep_R:
                    try:
                        ModelParams(n=n, R=r)
                    except ValueError as exc:
                        raise ConfigError(str(exc)) from exc
                for name in cfg.pair_classes:
                    self._check_pair(_PAIRS[name], replace(cfg, n=n))
            for s in cfg.sweep_s:
                for phi in cfg.sweep_phi:
                    if cfg.kind == "two_qubit":
                        try:
                            InitialSpec.two_qubit(s=s, phi=phi)
                        except ValueError as exc:
                            raise ConfigError(str(exc)) from exc
        if cfg.mode == "verify" and not isinstance(cfg.tolerances, dict):
            raise ConfigError("tolerances must be an object of check name -> value")
        if cfg.kind == "two_qubit":
            sizes = cfg.sweep_n if (cfg.mode in ("sweep", "stationary") and cfg.sweep_n) \
                else [cfg.n]
            for n in sizes:
                if cfg.k_index > n or cfg.l_index > n:
                    raise ConfigError(
                        f"tagged labels ({cfg.k_index}, {cfg.l_index}) exceed n = {n}"
                    )
        return cfg

    @staticmethod
    def _check_pair(pair: PairClass, cfg: "RunConfig") -> None:
        if pair is PairClass.PAIR_W and cfg.kind != "w_state":
            raise ConfigError("pair class pair_w needs kind w_state")
        if pair is not PairClass.PAIR_W and cfg.kind != "two_qubit":
            raise ConfigError(f"pair class {pair.value} needs kind two_qubit")
        if pair in (PairClass.KJ, PairClass.JM) and cfg.n <= 2:
            raise ConfigError(f"pair class {pair.value} needs n > 2, got n = {cfg.n}")

    # -- derived objects ---------------------------------------------------

    def params(self, n: int | None = None, r: float | None = None) -> ModelParams:
        return ModelParams(n=self.n if n is None else n,
                           R=self.R if r is None else r)

    def spec(self, s: float | None = None, phi: float | None = None) -> InitialSpec:
        kind = _KINDS[self.kind]
        if kind is InitialKind.W_STATE:
            return InitialSpec.w_state()
        return InitialSpec(kind=InitialKind.TWO_QUBIT_SUPERPOSITION,
                           s=self.s if s is None else s,
                           phi=self.phi if phi is None else phi,
                           k_index=self.k_index, l_index=self.l_index)

    def tau_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.tau_max, self.samples)


# ---------------------------------------------------------------------------
# value formatting (the determinism contract)
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    """Shortest round-trip text for one cell; inf stays a readable token."""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def _json_cell(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    v = float(value)
    if not math.isfinite(v):
        return "inf" if v > 0 else "-inf"
    return v


def render_table(columns: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    payload = {
        "columns": columns,
        "rows": [[_json_cell(v) for v in row] for row in rows],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# mode implementations
# ---------------------------------------------------------------------------

def _series_columns(cfg: RunConfig) -> list[str]:
    return ["tau", "p0"] + [f"c_{name}" for name in cfg.pair_classes]


def _series_rows(cfg: RunConfig, n: int, r: float, s: float, phi: float) -> list[list]:
    params = cfg.params(n=n, r=r)
    spec = cfg.spec(s=s, phi=phi)
    pairs = [_PAIRS[name] for name in cfg.pair_classes]
    rows = []
    for tau in cfg.tau_grid():
        tau = float(tau)
        row = [tau, survival_probability(params, tau)]
        row += [closed_form_concurrence(params, spec, pair, tau) for pair in pairs]
        rows.append(row)
    return rows


def run_simulate(cfg: RunConfig) -> str:
    cfg = cfg.validated()
    text = render_table(
        _series_columns(cfg),
        _series_rows(cfg, cfg.n, cfg.R, cfg.s, cfg.phi),
        cfg.output_format,
    )
    _write(text, cfg.output_path)
    return text


def run_zeno(cfg: RunConfig) -> str:
    cfg = cfg.validated()
    params = cfg.params()
    spec = cfg.spec()
    columns = ["interval_T", "count_N", "realized_t", "gamma_z", "tau",
               "p0_zeno", "c_pair_zeno", "p0_free", "c_pair_free"]
    rows = []
    for t_int in cfg.zeno_intervals:
        count = math.floor(cfg.tau_max / t_int)
        realized = count * t_int
        gamma = effective_decay_rate(params, t_int)
        for tau in cfg.tau_grid():
            tau = float(tau)
            if math.isinf(gamma):
                protected = 1.0 if tau == 0.0 else 0.0
            else:
                protected = math.exp(-gamma * tau)
            free = survival_probability(params, tau)
            rows.append([
                t_int, count, realized, gamma, tau,
                protected, 2.0 / params.n * protected,
                free, closed_form_concurrence(params, spec, PairClass.PAIR_W, tau),
            ])
    text = render_table(columns, rows, cfg.output_format)
    _write(text, cfg.output_path)
    return text


def run_stationary(cfg: RunConfig) -> str:
    cfg = cfg.validated()
    ns = list(cfg.sweep_n) if cfg.sweep_n else [cfg.n]
    columns = ["n", "s", "phi", "pair_class", "c_infinity"]
    rows = []
    for n in ns:
        for name in cfg.pair_classes:
            pair = _PAIRS[name]
            if pair in (PairClass.KJ, PairClass.JM) and n <= 2:
                raise ConfigError(f"pair class {name} needs n > 2, got n = {n}")
            spec = cfg.spec()
            rows.append([n, cfg.s, cfg.phi, name,
                         stationary_concurrence(int(n), spec, pair)])
    text = render_table(columns, rows, cfg.output_format)
    _write(text, cfg.output_path)
    return text


def run_sweep(cfg: RunConfig) -> str:
    cfg = cfg.validated()
    cells = list(itertools.product(cfg.sweep_n, cfg.sweep_R, cfg.sweep_s, cfg.sweep_phi))

    def evaluate(cell):
        n, r, s, phi = cell
        return _series_rows(cfg, n, r, s, phi)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            per_cell = list(pool.map(evaluate, cells))
    else:
        per_cell = [evaluate(cell) for cell in cells]

    columns = ["n", "R", "s", "phi"] + _series_columns(cfg)
    rows = []
    for (n, r, s, phi), series in zip(cells, per_cell):
        for srow in series:
            rows.append([n, r, s, phi] + srow)
    text = render_table(columns, rows, cfg.output_format)
    _write(text, cfg.output_path)
    return text


def run_verify(cfg: RunConfig) -> str:
    """Run the cross-validation suite; raises VerificationFailure on red."""
    cfg = cfg.validated()
    results = run_all_checks(tolerance_overrides=cfg.tolerances)
    all_passed = all(r.passed for r in results)
    if cfg.output_format == "csv":
        columns = ["check", "passed", "max_error", "tolerance"]
        rows = [[r.name, str(r.passed).lower(), r.max_error, r.tolerance]
                for r in results]
        text = render_table(columns, rows, "csv")
    else:
        payload = {
            "all_passed": all_passed,
            "checks": [r.as_dict() for r in results],
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    _write(text, cfg.output_path)
    if not all_passed:
        failed = [r.name for r in results if not r.passed]
        raise VerificationFailure(f"checks failed: {', '.join(failed)}", report=text)
    return text


_RUNNERS = {
    "simulate": run_simulate,
    "zeno": run_zeno,
    "stationary": run_stationary,
    "sweep": run_sweep,
    "verify": run_verify,
}


def run_mode(cfg: RunConfig) -> str:
    if cfg.mode not in _RUNNERS:
        raise ConfigError(f"mode must be one of {_MODES}, got {cfg.mode!r}")
    return _RUNNERS[cfg.mode](cfg)


def default_thread_count() -> int:
    """--threads default: the environment override, else 1."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return value
