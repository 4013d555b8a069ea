"""CLI - chainmetrics 命令行"""
from .main import build_parser, main, run
from .registry import Command, CommandRegistry, RunContext

__all__ = ["build_parser", "main", "run", "Command", "CommandRegistry", "RunContext"]
