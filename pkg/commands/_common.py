"""Flags, invocation bookkeeping and errors shared by the subcommands."""
import logging
import time
from typing import Any, Dict, List, Optional

from config import RunConfig
from utils.manifest import build_manifest, invocation_dir
from utils.output import write_json

logger = logging.getLogger(__name__)


class MissingArtifactError(LookupError):
    """Raised when a report input is absent; the message names the subcommand that produces it."""
    pass


FLAGS = {
    "n": (("--n",), {"type": int, "help": "number of vertices"}),
    "k_max": (("--k-max",), {"type": int, "dest": "k_max", "help": "number of levels K"}),
    "seeds": (("--seeds",), {"help": "replicate count, or a comma-separated seed list"}),
    "seed": (("--seed",), {"type": int, "dest": "base_seed", "help": "base seed for a replicate count"}),
    "t_max": (("--t-max",), {"dest": "t_max", "help": "stop the stream at this scaled time ('none' for no limit)"}),
    "mode": (("--mode",), {"choices": ["det", "poisson"], "help": "arrival spacing"}),
    "sample_dt": (("--sample-dt",), {"type": float, "dest": "sample_dt", "help": "trace sampling step"}),
    "dt": (("--dt",), {"type": float, "help": "numerical grid step"}),
    "window": (("--window",), {"type": float, "help": "rho window length"}),
    "workers": (("--workers",), {"type": int, "help": "parallel workers (0 = all cores)"}),
    "out": (("--out",), {"help": "output directory"}),
    "chi": (("--chi",), {"action": "store_const", "const": True, "help": "sample susceptibility in traces"}),
    "integrator": (("--integrator",), {"choices": ["euler", "rk4"], "help": "g-system integrator"}),
}


def add_flags(parser, *names: str):
    parser.add_argument("--config", help="flat KEY=VALUE file; flags override it")
    for name in names:
        args, kwargs = FLAGS[name]
        parser.add_argument(*args, default=None, **kwargs)


def flags_from_args(args) -> Dict[str, Any]:
    skip = {"config", "handler", "subcommand"}
    return {k: v for k, v in vars(args).items() if k not in skip}


class Invocation:
    """
    One run of a subcommand: its output directory, its registry row and its
    manifest. The manifest is written and the registry row closed on exit,
    with status "failed" when the body raised.
    """

    def __init__(self, cfg: RunConfig, database):
        self.cfg = cfg
        self.database = database
        self.dir = invocation_dir(cfg.out, cfg.subcommand, cfg.config_hash())
        self.id: Optional[int] = None
        self.status = "ok"
        self.seed_wall_times: Dict[str, float] = {}
        self.failures: List[Dict[str, Any]] = []
        self.extra: Dict[str, Any] = {}
        self._started = 0.0

    async def __aenter__(self) -> "Invocation":
        base, suffix = self.dir, 1
        while self.dir.exists():
            self.dir = base.with_name(f"{base.name}-{suffix}")
            suffix += 1
        self.dir.mkdir(parents=True)
        self._started = time.perf_counter()
        self.id = await self.database.start_invocation(
            self.cfg.subcommand, self.cfg.config_hash(), self.cfg.to_dict(), str(self.dir)
        )
        logger.info(f"Started {self.cfg.subcommand} #{self.id} -> {self.dir}")
        return self

    async def artifact(self, kind: str, path) -> None:
        await self.database.record_artifact(self.id, kind, str(path))

    async def __aexit__(self, exc_type, exc, tb):
        wall_time = time.perf_counter() - self._started
        status = "failed" if exc_type is not None else self.status
        artifacts = await self.database.get_artifacts(self.id)
        if artifacts:
            self.extra["artifacts"] = [{"kind": a["kind"], "path": a["path"]} for a in artifacts]
        manifest = build_manifest(
            self.cfg,
            wall_time,
            seed_wall_times=self.seed_wall_times,
            failures=self.failures,
            extra={"status": status, "invocation_id": self.id, **self.extra},
        )
        await write_json(self.dir / "manifest.json", manifest)
        await self.database.finish_invocation(self.id, status, wall_time)
        logger.info(f"Finished {self.cfg.subcommand} #{self.id} ({status}) in {wall_time:.2f}s")
        return False
