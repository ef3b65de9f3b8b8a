"""CSV and JSON writers for invocation directories (aiofiles)."""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import aiofiles

logger = logging.getLogger(__name__)


def _fmt(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return int(value)
    return value


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buffer.getvalue()


async def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    async with aiofiles.open(path, "w", encoding="utf-8") as f:
        await f.write(text)
    logger.debug(f"Wrote {path}")
    return path


async def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    return await write_text(path, csv_text(header, rows))


async def write_json(path: Path, data: Any) -> Path:
    return await write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


async def read_json(path: Path) -> Any:
    async with aiofiles.open(path, "r", encoding="utf-8") as f:
        return json.loads(await f.read())


def trace_table(summary) -> tuple:
    """Header and rows of a per-seed trace, one row per (sample time, level); chi columns only when sampled."""
    rows = summary.trace.rows
    with_chi = bool(rows) and rows[0].chi_frac is not None
    header = ["t", "k", "c1_frac", "edges_frac"]
    if with_chi:
        header += ["chi_frac", "chi_hat_frac", "pair_conn"]
    out = []
    for row in rows:
        for i in range(summary.K):
            line = [row.t, i + 1, row.c1_frac[i], row.edges_frac[i]]
            if with_chi:
                line += [row.chi_frac[i], row.chi_hat_frac[i], row.pair_conn[i]]
            out.append(line)
    return header, out


def curve_rows(curve, column: str) -> tuple:
    """A single curve on its own grid as ``t,<column>``."""
    times = curve.times()
    return ["t", column], [[round(float(t), 10), float(v)] for t, v in zip(times, curve.values)]


def long_curve_table(curves: Sequence, column: str) -> tuple:
    """Curves 1..K stacked as ``t,k,<column>``, each on its own grid."""
    rows = []
    for k, curve in enumerate(curves, start=1):
        rows += [[t, k, v] for t, v in curve_rows(curve, column)[1]]
    return ["t", "k", column], rows


BOUNDS_HEADER = [
    "k", "gamma_lower", "gamma_upper", "Gamma_lower", "Gamma_upper", "Gamma_bar",
    "ell", "gamma_lower_sqrt", "gamma_upper_sqrt", "gamma_upper_from_bar", "expected_W_lower", "expected_W_upper",
]


def bounds_table_rows(table) -> tuple:
    rows = [[row.to_dict()[name] for name in BOUNDS_HEADER] for row in table.rows]
    return BOUNDS_HEADER, rows


def dict_rows(entries: List[Dict[str, Any]]) -> tuple:
    """Header from the union of keys in first-seen order, missing cells left empty."""
    header: List[str] = []
    for entry in entries:
        for key in entry:
            if key not in header:
                header.append(key)
    return header, [[entry.get(key) for key in header] for entry in entries]
