"""``bounds``: the g-system, Gamma_bar_k and closed-form cost bounds."""
import asyncio
import logging
from functools import partial
from typing import Any, Dict, Optional, Tuple

from commands._common import Invocation, add_flags
from config import RunConfig
from ode_bounds import BoundsTable, GSystem, build_bounds_table, conjecture_checks, solve_g_system
from utils.output import bounds_table_rows, dict_rows, long_curve_table, write_csv, write_json

logger = logging.getLogger(__name__)


def bounds_payload(K: int, dt: float, integrator: str = "euler", n: Optional[int] = None) -> Tuple[GSystem, BoundsTable, Dict[str, Any]]:
    system = solve_g_system(K, dt=dt, integrator=integrator)
    table = build_bounds_table(K, system.gamma_bar, n=n)
    payload = {
        "K": K,
        "dt": dt,
        "integrator": integrator,
        "horizon": system.horizon,
        "t_end": system.t_end,
        "tail_met": system.tail_met,
        "ordering_violations": system.ordering_violations,
        "Gamma_bar": system.gamma_bar,
        "max_gap": max(system.gaps()),
        "plateau_gap": system.plateau_gap(),
        "rows": [row.to_dict() for row in table.rows],
        "conjecture_checks": conjecture_checks(system.gamma_bar),
    }
    return system, table, payload


async def run_bounds(cfg: RunConfig, database) -> int:
    loop = asyncio.get_running_loop()
    dt = cfg.numerics_dt()
    async with Invocation(cfg, database) as inv:
        system, table, payload = await loop.run_in_executor(
            None, partial(bounds_payload, cfg.k_max, dt, cfg.integrator, cfg.n)
        )
        if not system.tail_met:
            inv.extra["flagged"] = "horizon reached before the tail criterion"
        summary_path = await write_json(inv.dir / "bounds_summary.json", payload)
        await inv.artifact("bounds_summary", summary_path)

        header, rows = bounds_table_rows(table)
        await inv.artifact("bounds_table", await write_csv(inv.dir / "bounds.csv", header, rows))

        header, rows = long_curve_table(system.g, "g")
        await write_csv(inv.dir / "g_curves.csv", header, rows)

        header, rows = dict_rows(payload["conjecture_checks"])
        await write_csv(inv.dir / "conjecture_checks.csv", header, rows)

        logger.info(
            f"Gamma_bar_1={system.gamma_bar[0]:.5f}; gap Gamma_bar_K - K^2 = {system.gaps()[-1]:.5f}, "
            f"max gap {payload['max_gap']:.5f}, plateau {payload['plateau_gap']:.5f} at dt={dt}"
        )
    return 0


def setup(subparsers):
    parser = subparsers.add_parser("bounds", help="g-system bounds on the cumulative costs")
    add_flags(parser, "n", "k_max", "dt", "integrator", "out")
    parser.set_defaults(handler=run_bounds)
