"""``simulate``: seeded replicate sweeps of the forest cascade."""
import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Dict, Optional, Tuple

from tqdm import tqdm

from cascade_sim import EdgeStreamConfig, run_cascade
from commands._common import Invocation, add_flags
from config import RunConfig
from utils.output import csv_text, dict_rows, trace_table, write_csv, write_json, write_text
from utils.stats import AggregateStats

logger = logging.getLogger(__name__)


def simulate_stream(
    n: int,
    mode: str,
    seed: int,
    replicate: int,
    t_max: Optional[float],
    K: int,
    sample_dt: float,
    with_chi: bool,
) -> Tuple[Dict[str, Any], str, float]:
    """Worker entry point: one (seed, replicate) run, returned as its summary payload and trace CSV text."""
    started = time.perf_counter()
    cfg = EdgeStreamConfig(n=n, mode=mode, seed=seed, replicate=replicate, t_max=t_max)
    summary = run_cascade(cfg, K, sample_dt=sample_dt, with_chi=with_chi)
    header, rows = trace_table(summary)
    return summary.to_json_dict(), csv_text(header, rows), time.perf_counter() - started


def make_executor(workers: int) -> Executor:
    """One thread for a single worker (no process start-up), otherwise a process pool; 0 means every core."""
    if workers == 1:
        return ThreadPoolExecutor(max_workers=1)
    return ProcessPoolExecutor(max_workers=workers or None)


def _stream_name(seed: int, replicate: int) -> str:
    return f"seed{seed}_rep{replicate}"


async def run_simulate(cfg: RunConfig, database) -> int:
    loop = asyncio.get_running_loop()
    async with Invocation(cfg, database) as inv:
        executor = make_executor(cfg.workers)
        try:
            futures = {
                loop.run_in_executor(
                    executor, simulate_stream,
                    cfg.n, cfg.mode, seed, replicate, cfg.t_max, cfg.k_max, cfg.sample_dt, cfg.chi,
                ): (seed, replicate)
                for seed, replicate in cfg.streams
            }
            results: Dict[Tuple[int, int], Tuple[Dict[str, Any], str, float]] = {}
            pending = set(futures)
            with tqdm(total=len(futures), desc="simulate", unit="seed", disable=len(futures) < 2) as bar:
                while pending:
                    done, pending = await asyncio.wait(pending, return_when=asyncio.FIRST_COMPLETED)
                    for future in done:
                        stream = futures[future]
                        try:
                            results[stream] = future.result()
                        except Exception as e:
                            logger.warning(f"Seed {stream[0]} replicate {stream[1]} failed: {e}")
                            inv.failures.append({"seed": stream[0], "replicate": stream[1], "error": repr(e)})
                        bar.update(1)
        finally:
            executor.shutdown()

        payloads = []
        for seed, replicate in cfg.streams:
            if (seed, replicate) not in results:
                continue
            payload, trace_csv, wall_time = results[(seed, replicate)]
            name = _stream_name(seed, replicate)
            await write_json(inv.dir / f"summary_{name}.json", payload)
            await write_text(inv.dir / f"trace_{name}.csv", trace_csv)
            inv.seed_wall_times[name] = wall_time
            await database.store_seed_summary(inv.id, payload, wall_time)
            payloads.append(payload)

        if inv.failures:
            inv.status = "partial" if payloads else "failed"
            await write_json(inv.dir / "failures.json", inv.failures)
        if not payloads:
            logger.error("Every seed failed; no aggregate written")
            return 1

        stats = AggregateStats.from_payloads(cfg.k_max, payloads, failed_seeds=len(inv.failures))
        aggregate_path = await write_json(inv.dir / "aggregate.json", stats.to_dict())
        header, rows = dict_rows(stats.rows())
        await write_csv(inv.dir / "aggregate.csv", header, rows)
        await inv.artifact("simulation_aggregate", aggregate_path)
        for row in stats.rows():
            err = "n/a" if row["stderr"] is None else f"{row['stderr']:.4f}"
            mean = "n/a" if row["mean"] is None else f"{row['mean']:.4f}"
            logger.info(f"k={row['k']}: gamma_hat mean {mean} (stderr {err}), censored {row['censored']}")
    return 0 if not inv.failures else 2


def setup(subparsers):
    parser = subparsers.add_parser("simulate", help="seeded cascade simulations and gamma estimates")
    add_flags(parser, "n", "k_max", "seeds", "seed", "t_max", "mode", "sample_dt", "workers", "out", "chi")
    parser.set_defaults(handler=run_simulate)
