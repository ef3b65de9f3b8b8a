from typing import Dict, List, Optional

from db.connection import DatabaseConnection


class ArtifactRepository:
    def __init__(self, db: DatabaseConnection):
        self.db = db

    async def add(self, invocation_id: int, kind: str, path: str) -> int:
        return await self.db.execute_write(
            "INSERT INTO artifacts (invocation_id, kind, path) VALUES (?, ?, ?)",
            (invocation_id, kind, path)
        )

    async def latest(self, kind: str) -> Optional[Dict]:
        """Most recent artifact of a kind from an invocation that did not fail outright."""
        return await self.db.execute_one(
            "SELECT a.* FROM artifacts a JOIN invocations i ON i.id = a.invocation_id "
            "WHERE a.kind = ? AND i.status IN ('ok', 'partial') ORDER BY a.id DESC LIMIT 1",
            (kind,)
        )

    async def for_invocation(self, invocation_id: int) -> List[Dict]:
        return await self.db.execute_many(
            "SELECT * FROM artifacts WHERE invocation_id = ? ORDER BY id", (invocation_id,)
        )
