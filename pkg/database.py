import os
from pathlib import Path
from typing import Dict, List, Optional

from config import RESULTS_DB_PATH
from db.connection import DatabaseConnection
from db.repositories.artifact import ArtifactRepository
from db.repositories.invocation import InvocationRepository
from db.repositories.summary import SummaryRepository


class Database:
    def __init__(self, db_path: str = RESULTS_DB_PATH, migrations_dir: Optional[Path] = None):
        self.db_path = db_path
        self.connection = DatabaseConnection(db_path, migrations_dir)
        self.invocations = InvocationRepository(self.connection)
        self.summaries = SummaryRepository(self.connection)
        self.artifacts = ArtifactRepository(self.connection)

    async def connect(self):
        data_dir = os.path.dirname(self.db_path)
        if data_dir and not os.path.exists(data_dir):
            os.makedirs(data_dir, exist_ok=True)
        await self.connection.connect()

    async def close(self):
        await self.connection.close()

    async def start_invocation(self, subcommand: str, config_hash: str, config: Dict, out_dir: str) -> int:
        return await self.invocations.create(subcommand, config_hash, config, out_dir)

    async def finish_invocation(self, invocation_id: int, status: str, wall_time: float):
        await self.invocations.finish(invocation_id, status, wall_time)

    async def get_invocation(self, invocation_id: int) -> Optional[Dict]:
        return await self.invocations.get(invocation_id)

    async def latest_invocation(self, subcommand: str) -> Optional[Dict]:
        return await self.invocations.latest(subcommand)

    async def store_seed_summary(self, invocation_id: int, payload: Dict, wall_time: float):
        await self.summaries.add(invocation_id, payload, wall_time)

    async def get_seed_payloads(self, invocation_id: int) -> List[Dict]:
        return await self.summaries.get_payloads(invocation_id)

    async def get_level_estimates(self, invocation_id: int) -> Dict[int, List[Dict]]:
        return await self.summaries.get_level_estimates(invocation_id)

    async def record_artifact(self, invocation_id: int, kind: str, path: str) -> int:
        return await self.artifacts.add(invocation_id, kind, path)

    async def latest_artifact(self, kind: str) -> Optional[Dict]:
        return await self.artifacts.latest(kind)

    async def get_artifacts(self, invocation_id: int) -> List[Dict]:
        return await self.artifacts.for_invocation(invocation_id)


db = Database()
