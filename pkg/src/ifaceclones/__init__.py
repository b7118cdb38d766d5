"""Detect interface clones in Java source trees and measure their impact."""

__version__ = "0.1.0"

from .clones import (  # noqa: E402
    DuplicateGroup,
    clone_pairs,
    compute_dm,
    compute_idm,
    compute_rdm,
    duplicate_groups,
    duplicate_interfaces,
    signatures_identical,
)
from .config import AnalysisConfig  # noqa: E402
from .facts import extract_invocations, filter_model, parse_source_tree  # noqa: E402
from .metrics import compute_iuc, correlation, determination, metric_table  # noqa: E402
from .resolve import resolve_type  # noqa: E402
from .textclone import CloneParams, associate_clones, detect_clones, normalize_lines  # noqa: E402

__all__ = [
    "AnalysisConfig",
    "CloneParams",
    "DuplicateGroup",
    "associate_clones",
    "clone_pairs",
    "compute_dm",
    "compute_idm",
    "compute_iuc",
    "compute_rdm",
    "correlation",
    "detect_clones",
    "determination",
    "duplicate_groups",
    "duplicate_interfaces",
    "extract_invocations",
    "filter_model",
    "metric_table",
    "normalize_lines",
    "parse_source_tree",
    "resolve_type",
    "signatures_identical",
]
