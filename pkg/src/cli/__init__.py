"""Command-line front end: check, gen, verify and search."""

from .config import CliConfig, OutputFormat, SearchClass, Subcommand
from .main import build_parser, main

__all__ = ["CliConfig", "OutputFormat", "SearchClass", "Subcommand", "build_parser", "main"]
