"""Command-line surface"""

from .config import Command, PlanEntry, PlanFile, RunConfig, parse_states
from .commands import (
    cmd_analyze, cmd_block, cmd_build_heffron, cmd_sequential, cmd_verify,
    plan_requests, run, write_block_outputs
)
from .main import cli, main

__all__ = [
    "Command",
    "PlanEntry",
    "PlanFile",
    "RunConfig",
    "parse_states",
    "cmd_analyze",
    "cmd_block",
    "cmd_build_heffron",
    "cmd_sequential",
    "cmd_verify",
    "plan_requests",
    "run",
    "write_block_outputs",
    "cli",
    "main"
]
