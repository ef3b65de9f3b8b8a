import json
from typing import Dict, Optional

from db.connection import DatabaseConnection


class InvocationRepository:
    def __init__(self, db: DatabaseConnection):
        self.db = db

    async def create(self, subcommand: str, config_hash: str, config: Dict, out_dir: str) -> int:
        return await self.db.execute_write(
            "INSERT INTO invocations (subcommand, config_hash, config_json, out_dir) VALUES (?, ?, ?, ?)",
            (subcommand, config_hash, json.dumps(config, sort_keys=True), out_dir)
        )

    async def finish(self, invocation_id: int, status: str, wall_time: float):
        await self.db.execute_write(
            "UPDATE invocations SET status = ?, wall_time = ? WHERE id = ?",
            (status, wall_time, invocation_id)
        )

    async def get(self, invocation_id: int) -> Optional[Dict]:
        return await self.db.execute_one("SELECT * FROM invocations WHERE id = ?", (invocation_id,))

    async def latest(self, subcommand: str) -> Optional[Dict]:
        return await self.db.execute_one(
            "SELECT * FROM invocations WHERE subcommand = ? AND status IN ('ok', 'partial') "
            "ORDER BY id DESC LIMIT 1",
            (subcommand,)
        )
