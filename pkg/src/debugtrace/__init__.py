"""Debugging-process telemetry: ingestion service and AST-based analysis."""

__version__ = "0.1.0"
