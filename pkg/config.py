import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from dotenv import load_dotenv

load_dotenv()

VERSION = "0.4.0"

RESULTS_DB_PATH = os.getenv("RESULTS_DB_PATH", "data/msts.db")
OUTPUT_DIR = os.getenv("OUTPUT_DIR", "output")

DEBUG_MODE = os.getenv("DEBUG_MODE", "false").lower() == "true"
LOG_LEVEL = "DEBUG" if DEBUG_MODE else os.getenv("LOG_LEVEL", "INFO").upper()

DEFAULT_N = int(os.getenv("DEFAULT_N", "100000"))
DEFAULT_K = int(os.getenv("DEFAULT_K", "5"))
DEFAULT_SEEDS = os.getenv("DEFAULT_SEEDS", "1")
DEFAULT_BASE_SEED = int(os.getenv("DEFAULT_BASE_SEED", "20240601"))
DEFAULT_SAMPLE_DT = float(os.getenv("DEFAULT_SAMPLE_DT", "0.05"))
DEFAULT_MODE = os.getenv("DEFAULT_MODE", "det")
MAX_WORKERS = int(os.getenv("MAX_WORKERS", "0"))

RHO_DT = float(os.getenv("RHO_DT", "0.01"))
RHO_WINDOW = float(os.getenv("RHO_WINDOW", "10.0"))
RHO_SHIFT = float(os.getenv("RHO_SHIFT", "2.0"))
RHO_TOL = float(os.getenv("RHO_TOL", "1e-8"))
RHO_MAX_ITER = int(os.getenv("RHO_MAX_ITER", "1000"))
RHO_THRESHOLD_CUTOFF = 1e-6

ODE_DT = float(os.getenv("ODE_DT", "1e-4"))
ODE_TAIL_TOL = float(os.getenv("ODE_TAIL_TOL", "1e-7"))
ODE_RECORD_DT = float(os.getenv("ODE_RECORD_DT", "0.01"))
ODE_MIN_HORIZON = 60.0

THETA_STEPS = int(os.getenv("THETA_STEPS", "20000"))

VALID_MODES = ["det", "poisson"]
VALID_SUBCOMMANDS = ["simulate", "rho", "bounds", "thresholds", "report"]

ZETA3 = 1.2020569031595942
MU2_REFERENCE = 4.1704288

# Keys accepted in a --config file, mapped to RunConfig field names.
CONFIG_FILE_KEYS = {
    "N": "n",
    "K_MAX": "k_max",
    "SEEDS": "seeds",
    "SEED": "base_seed",
    "T_MAX": "t_max",
    "MODE": "mode",
    "SAMPLE_DT": "sample_dt",
    "DT": "dt",
    "WINDOW": "window",
    "WORKERS": "workers",
    "OUT": "out",
    "CHI": "chi",
    "INTEGRATOR": "integrator",
}


class ConfigError(ValueError):
    """Raised when a run configuration value is missing or invalid."""
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: int = DEFAULT_N
    k_max: int = DEFAULT_K
    streams: Tuple[Tuple[int, int], ...] = ((DEFAULT_BASE_SEED, 0),)
    t_max: Optional[float] = None
    sample_dt: float = DEFAULT_SAMPLE_DT
    mode: str = DEFAULT_MODE
    dt: Optional[float] = None
    window: float = RHO_WINDOW
    chi: bool = False
    integrator: str = "euler"
    workers: int = MAX_WORKERS
    out: str = OUTPUT_DIR
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def seed_count(self) -> int:
        return len(self.streams)

    def numerics_dt(self) -> float:
        if self.dt is not None:
            return self.dt
        return ODE_DT if self.subcommand == "bounds" else RHO_DT

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["streams"] = [list(s) for s in self.streams]
        return data

    def config_hash(self) -> str:
        data = self.to_dict()
        data.pop("out", None)
        data.pop("workers", None)
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def parse_seeds(value: Any, base_seed: int = DEFAULT_BASE_SEED) -> Tuple[Tuple[int, int], ...]:
    """
    Resolve a seeds value into (seed, replicate) pairs.

    A bare count ``"100"`` means replicates 0..99 of ``base_seed``; a comma list
    ``"3,7,11"`` means those seeds, replicate 0 each.
    """
    text = str(value).strip()
    if not text:
        raise ConfigError("SEEDS must not be empty")
    try:
        if "," in text:
            seeds = [int(part) for part in text.split(",") if part.strip()]
            if not seeds:
                raise ConfigError("SEEDS list is empty")
            return tuple((s, 0) for s in seeds)
        count = int(text)
    except ValueError:
        raise ConfigError(f"SEEDS must be a count or a comma-separated list, got {text!r}")
    if count < 1:
        raise ConfigError(f"SEEDS must be >= 1, got {count}")
    return tuple((base_seed, r) for r in range(count))


def _coerce(key: str, value: Any) -> Any:
    if value is None:
        return None
    try:
        if key in ("n", "k_max", "workers", "base_seed"):
            return int(value)
        if key in ("sample_dt", "dt", "window"):
            return float(value)
        if key == "t_max":
            text = str(value).strip().lower()
            return None if text in ("", "none", "inf") else float(value)
        if key == "chi":
            return value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
    except ValueError:
        raise ConfigError(f"Invalid value for {key.upper()}: {value!r}")
    return value


def build_run_config(
    subcommand: str,
    flags: Mapping[str, Any],
    file_values: Optional[Mapping[str, Optional[str]]] = None,
) -> RunConfig:
    """Merge config-file values and command-line flags (flags win) into a validated RunConfig."""
    if subcommand not in VALID_SUBCOMMANDS:
        raise ConfigError(f"Unknown subcommand: {subcommand}")

    merged: Dict[str, Any] = {}
    for raw_key, raw_value in (file_values or {}).items():
        name = CONFIG_FILE_KEYS.get(raw_key.strip().upper())
        if name is None:
            raise ConfigError(f"Unknown config key: {raw_key}")
        merged[name] = raw_value
    for name, value in flags.items():
        if value is not None:
            merged[name] = value

    values = {name: _coerce(name, value) for name, value in merged.items()}
    base_seed = values.pop("base_seed", None)
    seeds_value = values.pop("seeds", DEFAULT_SEEDS)
    streams = parse_seeds(seeds_value, DEFAULT_BASE_SEED if base_seed is None else base_seed)

    known = {f for f in RunConfig.__dataclass_fields__ if f not in ("subcommand", "streams", "extra")}
    extra = {k: v for k, v in values.items() if k not in known}
    cfg = RunConfig(
        subcommand=subcommand,
        streams=streams,
        extra=extra,
        **{k: v for k, v in values.items() if k in known},
    )
    validate_run_config(cfg)
    return cfg


def validate_run_config(cfg: RunConfig):
    if cfg.n < 2:
        raise ConfigError(f"N must be >= 2, got {cfg.n}")
    if cfg.k_max < 1:
        raise ConfigError(f"K_MAX must be >= 1, got {cfg.k_max}")
    if cfg.seed_count < 1:
        raise ConfigError("SEEDS must be >= 1")
    if cfg.mode not in VALID_MODES:
        raise ConfigError(f"MODE must be one of {VALID_MODES}, got {cfg.mode!r}")
    if cfg.sample_dt <= 0:
        raise ConfigError(f"SAMPLE_DT must be > 0, got {cfg.sample_dt}")
    if cfg.dt is not None and cfg.dt <= 0:
        raise ConfigError(f"DT must be > 0, got {cfg.dt}")
    if cfg.t_max is not None and cfg.t_max <= 0:
        raise ConfigError(f"T_MAX must be > 0, got {cfg.t_max}")
    if cfg.window <= 0:
        raise ConfigError(f"WINDOW must be > 0, got {cfg.window}")
    if cfg.integrator not in ("euler", "rk4"):
        raise ConfigError(f"INTEGRATOR must be 'euler' or 'rk4', got {cfg.integrator!r}")
    if cfg.workers < 0:
        raise ConfigError(f"WORKERS must be >= 0, got {cfg.workers}")
