"""
Command-line front end
"""

from .main import CommandResult, build_parser, main, run_command

__all__ = ["CommandResult", "build_parser", "main", "run_command"]
