"""
Loaders Package
"""

from .report_writer import REPORT_SCHEMA_VERSION, ReportWriter, render_structured

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "ReportWriter",
    "render_structured",
]
