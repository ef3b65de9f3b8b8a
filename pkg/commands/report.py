"""
``report``: table files assembled from earlier invocations.

Simulation results must come from a previous ``simulate`` run; its per-seed
summaries are read back from the registry. Numerical inputs (rho, bounds,
thresholds) are taken from the registry when the stored run covers the
requested levels and grid, and recomputed otherwise.
"""
import asyncio
import logging
import math
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List

from commands._common import Invocation, MissingArtifactError, add_flags
from commands.bounds import bounds_payload
from commands.rho import rho_payload
from commands.thresholds import thresholds_payload
from config import ODE_DT, RHO_DT, RunConfig
from ode_bounds import conjecture_checks
from utils.output import BOUNDS_HEADER, dict_rows, read_json, write_csv
from utils.stats import AggregateStats

logger = logging.getLogger(__name__)


def _same(a, b) -> bool:
    return a is not None and b is not None and math.isclose(a, b, rel_tol=1e-9)


def rho_covers(payload: Dict[str, Any], k_max: int, dt: float, window: float) -> bool:
    return (
        len(payload.get("levels", [])) >= k_max
        and _same(payload.get("dt"), dt)
        and _same(payload.get("window"), window)
    )


def bounds_covers(payload: Dict[str, Any], k_max: int) -> bool:
    return payload.get("K", 0) >= k_max


def thresholds_covers(payload: Dict[str, Any], k_max: int, dt: float, window: float) -> bool:
    top = max(k_max, 2)
    if max((r["k"] for r in payload.get("results", [])), default=0) < top:
        return False
    # sigma_2 alone comes from the closed form; higher levels depend on the rho grid
    return top < 3 or (_same(payload.get("dt"), dt) and _same(payload.get("window"), window))


async def _numeric(
    database,
    kind: str,
    covers: Callable[[Dict[str, Any]], bool],
    compute: Callable,
    inputs: Dict[str, Any],
):
    row = await database.latest_artifact(kind)
    if row is not None and Path(row["path"]).exists():
        payload = await read_json(Path(row["path"]))
        producer = await database.get_invocation(row["invocation_id"])
        if covers(payload):
            logger.info(
                f"Using {kind} from {producer['subcommand']} #{producer['id']} "
                f"(config {producer['config_hash']}): {row['path']}"
            )
            inputs[kind] = {"invocation_id": producer["id"], "config_hash": producer["config_hash"], "path": row["path"]}
            inputs[kind].update({key: payload[key] for key in ("dt", "window", "integrator") if key in payload})
            return payload
        logger.info(f"{kind} from invocation #{producer['id']} does not cover this report; recomputing it")
    else:
        logger.info(f"No {kind} on record; computing it now")
    loop = asyncio.get_running_loop()
    result = await loop.run_in_executor(None, compute)
    inputs[kind] = {"computed": True}
    return result[-1] if isinstance(result, tuple) else result


async def _simulation(database, k_max: int):
    producer = await database.latest_invocation("simulate")
    payloads = [] if producer is None else await database.get_seed_payloads(producer["id"])
    if not payloads:
        raise MissingArtifactError("No simulation results on record; run `simulate` first")
    covered = min(payload["K"] for payload in payloads)
    if covered < k_max:
        raise MissingArtifactError(
            f"Latest simulate run #{producer['id']} covers K={covered}; run `simulate --k-max {k_max}` first"
        )
    logger.info(
        f"Using {len(payloads)} seed summaries from simulate #{producer['id']} (config {producer['config_hash']})"
    )
    return producer, payloads


def _seed_rows(level_estimates: Dict[int, List[Dict[str, Any]]], k_max: int) -> List[List[Any]]:
    rows = []
    for k in sorted(level_estimates):
        if k > k_max:
            continue
        for entry in level_estimates[k]:
            rows.append([k, entry["seed"], entry["replicate"], entry["gamma_hat"], entry["completed"], entry["completion_time"]])
    return rows


async def run_report(cfg: RunConfig, database) -> int:
    K = cfg.k_max
    producer, payloads = await _simulation(database, K)

    dt_rho = cfg.dt or RHO_DT
    inputs: Dict[str, Any] = {
        "simulate": {"invocation_id": producer["id"], "config_hash": producer["config_hash"], "seeds": len(payloads)},
    }
    async with Invocation(cfg, database) as inv:
        inv.extra["inputs"] = inputs
        rho = await _numeric(
            database, "rho_summary",
            partial(rho_covers, k_max=K, dt=dt_rho, window=cfg.window),
            partial(rho_payload, K, dt_rho, cfg.window),
            inputs,
        )
        bounds = await _numeric(
            database, "bounds_summary",
            partial(bounds_covers, k_max=K),
            partial(bounds_payload, K, ODE_DT, "euler", cfg.n),
            inputs,
        )
        thresholds = await _numeric(
            database, "thresholds",
            partial(thresholds_covers, k_max=K, dt=dt_rho, window=cfg.window),
            partial(thresholds_payload, max(K, 2), dt_rho, cfg.window),
            inputs,
        )
        levels = rho["levels"][:K]

        header, rows = dict_rows([
            {
                "k": level["k"],
                "gamma": level["gamma"],
                "approximate": level["approximate"],
                "mass": level["mass"],
                "xi_hat": level["xi_hat"],
            }
            for level in levels
        ])
        await inv.artifact("gamma_table", await write_csv(inv.dir / "gamma_table.csv", header, rows))

        stats = AggregateStats.from_payloads(K, payloads)
        header, rows = dict_rows([
            {
                "k": row["k"],
                "gamma_hat_mean": row["mean"],
                "stderr": row["stderr"],
                "gamma_minus_2km1": row["mean_minus_2km1"],
                "completed": row["completed"],
                "censored": row["censored"],
            }
            for row in stats.rows()
        ])
        await write_csv(inv.dir / "gamma_minus_2km1.csv", header, rows)

        estimates = await database.get_level_estimates(producer["id"])
        await write_csv(
            inv.dir / "gamma_hat_by_seed.csv",
            ["k", "seed", "replicate", "gamma_hat", "completed", "completion_time"],
            _seed_rows(estimates, K),
        )

        rows = [[row[name] for name in BOUNDS_HEADER] for row in bounds["rows"][:K]]
        await write_csv(inv.dir / "Gamma_bounds.csv", BOUNDS_HEADER, rows)

        header, rows = dict_rows([
            {**r, "c3": thresholds["c3"], "sigma2_below_c3": thresholds["sigma2_below_c3"]}
            for r in thresholds["results"]
            if r["k"] <= max(K, 2)
        ])
        await write_csv(inv.dir / "thresholds.csv", header, rows)

        header, rows = dict_rows([a for a in rho["alignment"] if a["k"] <= K])
        await write_csv(inv.dir / "rho_alignment.csv", header or ["k", "shift", "sup_distance"], rows)

        gammas = [level["gamma"] for level in levels]
        header, rows = dict_rows(conjecture_checks(bounds["Gamma_bar"][:K], gammas))
        await write_csv(inv.dir / "conjecture_checks.csv", header, rows)
    return 0


def setup(subparsers):
    parser = subparsers.add_parser("report", help="assemble the gamma, bounds and threshold tables")
    add_flags(parser, "n", "k_max", "dt", "window", "out")
    parser.set_defaults(handler=run_report)
