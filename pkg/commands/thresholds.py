"""``thresholds``: sigma_k by theta-shooting and the 3-core constant."""
import asyncio
import logging
from functools import partial
from typing import Any, Dict, Optional

from commands._common import Invocation, add_flags
from config import RHO_SHIFT, THETA_STEPS, RunConfig
from rho_numerics import compute_family
from thresholds import core3_threshold, phi_k2, solve_theta_ode, threshold_chain
from utils.output import dict_rows, write_csv, write_json

logger = logging.getLogger(__name__)

XI_CONSISTENCY_FACTOR = 2.0


def thresholds_payload(
    k_max: int,
    dt: float,
    window: float,
    steps: int = THETA_STEPS,
    shift: float = RHO_SHIFT,
) -> Dict[str, Any]:
    """
    sigma_2 from the closed-form phi; for k_max >= 3 the chain up to k_max
    from gridded rho curves, which also gives xi_hat to compare sigma_2 with.
    """
    c3 = core3_threshold()
    family = None
    if k_max >= 3:
        family = compute_family(k_max - 1, dt=dt, window=window, shift=shift)
        results = threshold_chain(family, steps=steps, k_max=k_max)
    else:
        results = [solve_theta_ode(phi_k2(), steps=steps, k=2)]

    sigma2 = results[0].sigma_k
    xi2: Optional[float] = family.xi_hat[1] if family is not None and family.k_max >= 2 else None
    payload = {
        "k_max": k_max,
        "dt": dt,
        "window": window,
        "steps": steps,
        "c3": c3,
        "sigma2_below_c3": sigma2 < c3,
        "results": [r.to_dict() for r in results],
        "xi_hat_2": xi2,
        "xi_hat_consistent": None if xi2 is None else abs(sigma2 - xi2) <= XI_CONSISTENCY_FACTOR * dt,
    }
    if not payload["sigma2_below_c3"]:
        logger.warning(f"sigma_2={sigma2:.6f} is not below c_3={c3:.6f}")
    return payload


async def run_thresholds(cfg: RunConfig, database) -> int:
    loop = asyncio.get_running_loop()
    steps = int(cfg.extra.get("theta_steps") or THETA_STEPS)
    async with Invocation(cfg, database) as inv:
        payload = await loop.run_in_executor(
            None, partial(thresholds_payload, max(cfg.k_max, 2), cfg.numerics_dt(), cfg.window, steps)
        )
        path = await write_json(inv.dir / "thresholds.json", payload)
        await inv.artifact("thresholds", path)
        header, rows = dict_rows(payload["results"])
        await write_csv(inv.dir / "thresholds.csv", header, rows)
        logger.info(f"c_3={payload['c3']:.6f}, sigma_2={payload['results'][0]['sigma_k']:.6f}")
    return 0


def setup(subparsers):
    parser = subparsers.add_parser("thresholds", help="giant-component thresholds sigma_k and c_3")
    add_flags(parser, "k_max", "dt", "window", "out")
    parser.add_argument("--theta-steps", type=int, dest="theta_steps", default=None, help="RK4 steps on [0, pi/2]")
    parser.set_defaults(handler=run_thresholds)
