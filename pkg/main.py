import argparse
import asyncio
import importlib
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import dotenv_values

from commands._common import flags_from_args
from config import LOG_LEVEL, VERSION, ConfigError, build_run_config
from database import Database, db

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def load_commands(subparsers):
    commands_dir = Path(__file__).parent / "commands"
    for command_file in sorted(commands_dir.glob("*.py")):
        if command_file.stem.startswith("_"):
            continue
        module_name = f"commands.{command_file.stem}"
        try:
            module = importlib.import_module(module_name)
            module.setup(subparsers)
            logger.debug(f"Loaded command: {module_name}")
        except Exception as e:
            logger.error(f"Failed to load command {module_name}: {e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msts", description="Successive minimum spanning trees toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    load_commands(subparsers)
    return parser


async def run(args, database: Database) -> int:
    file_values = dotenv_values(args.config) if args.config else None
    cfg = build_run_config(args.subcommand, flags_from_args(args), file_values)
    await database.connect()
    try:
        return await args.handler(cfg, database)
    finally:
        await database.close()


def main(argv: Optional[List[str]] = None, database: Optional[Database] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return asyncio.run(run(args, database or db))
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return 2
    except Exception as e:
        logger.error(f"{args.subcommand} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
