from .config import RunConfig
from .controller import BatchFile, CommandResult, LadderController, exit_code_for
from .commands import cli, main

__all__ = [
    "RunConfig",
    "BatchFile",
    "CommandResult",
    "LadderController",
    "exit_code_for",
    "cli",
    "main",
]
