"""Command handlers behind the CLI."""

from . import compiler, oracle, simulator

__all__ = ["compiler", "oracle", "simulator"]
