"""Catalog DSL, experiment runners, report emission and the ``charp`` CLI."""

from .dsl import CatalogEntry, DSLError, load_catalog, load_entry, parse_presentation
from .experiments import DeformReport, StabilityReport, deform_check, stability_scan
from .report import emit_report, plot_stability

__all__ = [
    "CatalogEntry", "DSLError", "load_catalog", "load_entry", "parse_presentation",
    "DeformReport", "StabilityReport", "deform_check", "stability_scan",
    "emit_report", "plot_stability",
]
