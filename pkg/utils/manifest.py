import logging
import subprocess
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from config import VERSION

logger = logging.getLogger(__name__)


def version_string() -> str:
    """Package version, with ``git describe`` appended when run from a checkout."""
    try:
        described = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).parent.parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
    except (OSError, subprocess.SubprocessError) as e:
        logger.debug(f"git describe unavailable: {e}")
        return VERSION
    tag = described.stdout.strip()
    return f"{VERSION}+{tag}" if described.returncode == 0 and tag else VERSION


def invocation_dir(out: str, subcommand: str, config_hash: str, now: Optional[datetime] = None) -> Path:
    now = now or datetime.now()
    return Path(out) / f"{subcommand}-{now.strftime('%Y%m%d-%H%M%S')}-{config_hash}"


def build_manifest(
    cfg,
    wall_time: float,
    seed_wall_times: Optional[Dict[str, float]] = None,
    failures: Optional[List[Dict[str, Any]]] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    manifest = {
        "subcommand": cfg.subcommand,
        "config": cfg.to_dict(),
        "config_hash": cfg.config_hash(),
        "version": version_string(),
        "wall_time": wall_time,
        "seed_wall_times": seed_wall_times or {},
        "failures": failures or [],
    }
    if extra:
        manifest.update(extra)
    return manifest
