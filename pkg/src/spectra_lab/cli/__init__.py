"""Command-line surface: ring-expression parsing, reports and the ``spectra-lab`` entry point."""

from .app import main
from .dsl import DSLSyntaxError, parse, pretty

__all__ = ["main", "parse", "pretty", "DSLSyntaxError"]
