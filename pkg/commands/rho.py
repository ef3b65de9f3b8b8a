"""``rho``: limit curves rho_k, their cost integrals and alignment diagnostics."""
import asyncio
import logging
from functools import partial
from typing import Any, Dict, Tuple

from commands._common import Invocation, add_flags
from config import RHO_SHIFT, RunConfig
from rho_numerics import (
    RhoFamily,
    RhoWindowError,
    compute_family,
    edge_count_curve,
    gamma_from_rho,
    mass_check,
    rho_infinity_diagnostics,
    w_integral,
)
from utils.output import curve_rows, dict_rows, long_curve_table, write_csv, write_json

logger = logging.getLogger(__name__)


def curve_file_name(k: int) -> str:
    return f"rho_k{k}.csv"


def rho_payload(k_max: int, dt: float, window: float, shift: float = RHO_SHIFT, start: str = "closed") -> Tuple[RhoFamily, Dict[str, Any]]:
    family = compute_family(k_max, dt=dt, window=window, shift=shift, start=start)
    levels = []
    for k in range(1, k_max + 1):
        gamma = gamma_from_rho(family.level(k - 1), family.level(k))
        levels.append({
            "k": k,
            "translation": family.translation[k - 1],
            "xi_hat": family.xi_hat[k - 1],
            "gamma": gamma.value,
            "approximate": gamma.approximate,
            "truncation": gamma.truncation,
            "W": w_integral(family.level(k)).value,
            "mass": mass_check(family.level(k), k),
            "curve_file": curve_file_name(k),
        })
    try:
        alignment = [
            {"k": k, "shift": delta, "sup_distance": distance}
            for k, delta, distance in rho_infinity_diagnostics(family)
        ]
    except RhoWindowError as e:
        logger.warning(f"Alignment diagnostics skipped: {e}")
        alignment = []
    payload = {
        "k_max": k_max,
        "dt": dt,
        "window": window,
        "shift": shift,
        "start": start,
        "levels": levels,
        "alignment": alignment,
    }
    return family, payload


async def run_rho(cfg: RunConfig, database) -> int:
    loop = asyncio.get_running_loop()
    dt = cfg.numerics_dt()
    shift = float(cfg.extra.get("shift") or RHO_SHIFT)
    start = cfg.extra.get("start") or "closed"
    async with Invocation(cfg, database) as inv:
        family, payload = await loop.run_in_executor(
            None, partial(rho_payload, cfg.k_max, dt, cfg.window, shift, start)
        )
        summary_path = await write_json(inv.dir / "rho_summary.json", payload)
        await inv.artifact("rho_summary", summary_path)

        for k, curve in enumerate(family.rho, start=1):
            header, rows = curve_rows(curve, "rho")
            await inv.artifact("rho_curve", await write_csv(inv.dir / curve_file_name(k), header, rows))

        edges = [edge_count_curve(family.level(k - 1)) for k in range(1, cfg.k_max + 1)]
        header, rows = long_curve_table(edges, "edges_frac")
        await write_csv(inv.dir / "edge_counts.csv", header, rows)

        header, rows = dict_rows(payload["alignment"])
        if rows:
            await write_csv(inv.dir / "rho_alignment.csv", header, rows)

        for level in payload["levels"]:
            logger.info(
                f"k={level['k']}: gamma={level['gamma']:.5f}{' (approx)' if level['approximate'] else ''}, "
                f"mass={level['mass']:.5f}, xi_hat={level['xi_hat']}"
            )
    return 0


def setup(subparsers):
    parser = subparsers.add_parser("rho", help="limit curves rho_k and analytic gamma_k")
    add_flags(parser, "k_max", "dt", "window", "out")
    parser.add_argument("--shift", type=float, default=None, help="window translation per level")
    parser.add_argument("--start", choices=["closed", "step"], default=None, help="how rho_1 is obtained")
    parser.set_defaults(handler=run_rho)
