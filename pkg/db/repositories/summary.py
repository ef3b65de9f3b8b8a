import json
from typing import Dict, List

from db.connection import DatabaseConnection


class SummaryRepository:
    def __init__(self, db: DatabaseConnection):
        self.db = db

    async def add(self, invocation_id: int, payload: Dict, wall_time: float):
        """Store one per-seed summary payload and its per-level rows."""
        seed = payload["seed"]
        replicate = payload["replicate"]
        levels = payload["levels"]
        await self.db.execute_write(
            "INSERT OR REPLACE INTO seed_summaries "
            "(invocation_id, seed, replicate, summary_json, completed_levels, wall_time) VALUES (?, ?, ?, ?, ?, ?)",
            (invocation_id, seed, replicate, json.dumps(payload, sort_keys=True),
             sum(1 for level in levels if level["completed"]), wall_time)
        )
        await self.db.execute_batch(
            "INSERT INTO level_estimates "
            "(invocation_id, seed, replicate, k, gamma_hat, completed, completion_time) VALUES (?, ?, ?, ?, ?, ?, ?)",
            [
                (invocation_id, seed, replicate, level["k"], level["gamma_hat"],
                 level["completed"], level["completion_time"])
                for level in levels
            ]
        )

    async def get_payloads(self, invocation_id: int) -> List[Dict]:
        rows = await self.db.execute_many(
            "SELECT summary_json FROM seed_summaries WHERE invocation_id = ? ORDER BY seed, replicate",
            (invocation_id,)
        )
        return [json.loads(row["summary_json"]) for row in rows]

    async def get_level_estimates(self, invocation_id: int) -> Dict[int, List[Dict]]:
        rows = await self.db.execute_many(
            "SELECT seed, replicate, k, gamma_hat, completed, completion_time FROM level_estimates "
            "WHERE invocation_id = ? ORDER BY k, seed, replicate",
            (invocation_id,)
        )
        by_level: Dict[int, List[Dict]] = {}
        for row in rows:
            row["completed"] = bool(row["completed"])
            by_level.setdefault(row["k"], []).append(row)
        return by_level
