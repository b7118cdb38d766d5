"""End-to-end pipeline and report writers.

``run_analysis`` turns an ``AnalysisConfig`` into a ``ReportBundle``; the
bundle's ``to_dict`` form is the single source for every emitted file, so the
numbers in ``report.md`` and the CSVs are exactly those in ``summary.json``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .clones import (
    ClonePairRecord,
    DuplicateGroup,
    clone_pairs,
    compute_dm,
    compute_rdm,
    duplicate_groups,
    duplicate_interfaces,
    total_size,
)
from .config import AnalysisConfig
from .errors import DegenerateSample, EmptyModel, SourceIOError
from .facts import filter_model, parse_source_tree
from .metrics import MetricRow, correlation, metric_table
from .model import CodeModel
from .suggest import RefactoringSuggestion, suggest_refactorings
from .textclone import AssociationRecord, ClonePair, associate_clones, clones_per_interface

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
INSUFFICIENT = "insufficient data"
UNDEFINED = "undefined (constant sample)"
MIN_SAMPLES = 3
DECIMALS = 6


def rounded(value: float | Fraction | None, places: int = DECIMALS) -> float | None:
    """Round half-to-even at presentation time."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        exact = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        exact = Decimal(repr(float(value)))
    return float(exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


@dataclass
class ReportBundle:
    config: AnalysisConfig
    model: CodeModel
    filtered: CodeModel
    rdm: Fraction | None
    dm: int
    rows: list[MetricRow]
    groups: list[DuplicateGroup]
    pairs: list[ClonePairRecord]
    duplicates: list[str]
    associations: list[AssociationRecord]
    suggestions: list[RefactoringSuggestion]
    correlations: dict[str, dict[str, Any]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return bundle_to_dict(self)


def _correlate(xs: list[float], ys: list[float], methods: tuple[str, ...]) -> dict[str, Any]:
    out: dict[str, Any] = {"n": len(xs)}
    for method in methods:
        if len(xs) < MIN_SAMPLES:
            out[method] = INSUFFICIENT
            continue
        try:
            res = correlation(xs, ys, method)
        except DegenerateSample:
            out[method] = UNDEFINED
            continue
        out[method] = {"coefficient": rounded(res.coefficient), "determination": rounded(res.determination)}
    return out


def run_analysis(config: AnalysisConfig) -> ReportBundle:
    """Parse, filter, measure and associate; raises on fatal input errors only."""
    model = parse_source_tree(config.source_roots, config, allow_empty=False)
    filtered = filter_model(model, config)
    warnings = list(model.warnings)
    rows = metric_table(filtered)
    if not rows:
        warnings.append("no interface left after filtering; the metric table is empty")
    try:
        rdm: Fraction | None = compute_rdm(filtered)
    except EmptyModel:
        rdm = None
    groups = duplicate_groups(filtered)
    associations = associate_clones(
        filtered,
        groups,
        config.clone_params,
        include_intra=config.include_intra_clones,
        strip_comments=config.strip_comments,
    )
    cc = clones_per_interface(a for a in associations if a.interface_pair[0] != a.interface_pair[1])
    methods = tuple(config.correlation_methods)
    with_iuc = [r for r in rows if r.iuc is not None]
    correlations = {
        "idm_vs_iuc": _correlate([r.idm for r in with_iuc], [r.iuc for r in with_iuc], methods),
        "size_vs_idm": _correlate([r.size for r in rows], [r.idm for r in rows], methods),
        "idm_vs_cc": _correlate([r.idm for r in rows], [cc.get(r.interface_id, 0) for r in rows], methods),
    }
    return ReportBundle(
        config=config,
        model=model,
        filtered=filtered,
        rdm=rdm,
        dm=compute_dm(filtered),
        rows=rows,
        groups=groups,
        pairs=clone_pairs(filtered),
        duplicates=sorted(duplicate_interfaces(filtered)),
        associations=associations,
        suggestions=suggest_refactorings(filtered),
        correlations=correlations,
        warnings=warnings,
    )


def _pair_to_dict(cp: ClonePair) -> dict[str, Any]:
    return {
        "a": {"ref": cp.fragment_a.ref, "start_line": cp.fragment_a.start_line, "end_line": cp.fragment_a.end_line},
        "b": {"ref": cp.fragment_b.ref, "start_line": cp.fragment_b.start_line, "end_line": cp.fragment_b.end_line},
        "matched_lines": cp.matched_lines,
        "chunks": len(cp.chunks),
    }


def bundle_to_dict(bundle: ReportBundle) -> dict[str, Any]:
    cfg = bundle.config
    filtered = bundle.filtered
    cross = [a for a in bundle.associations if a.interface_pair[0] != a.interface_pair[1]]
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "ifaceclones", "version": __version__},
        "config": {
            "source_roots": [Path(r).as_posix() for r in cfg.source_roots],
            "exclude_tests": cfg.exclude_tests,
            "test_patterns": list(cfg.test_patterns),
            "clone_params": {
                "min_clone_length": cfg.clone_params.min_clone_length,
                "max_line_bias": cfg.clone_params.max_line_bias,
                "min_chunk_size": cfg.clone_params.min_chunk_size,
            },
            "correlation_methods": list(cfg.correlation_methods),
            "strip_comments": cfg.strip_comments,
        },
        "summary": {
            "parsed_interfaces": len(bundle.model.interfaces),
            "interfaces": len(filtered.interfaces),
            "classes": len(filtered.classes),
            "removed_interfaces": dict(sorted(Counter(filtered.removed.values()).items())),
            "total_size": total_size(filtered),
            "dm": bundle.dm,
            "rdm": rounded(bundle.rdm),
            "rdm_exact": None if bundle.rdm is None else f"{bundle.rdm.numerator}/{bundle.rdm.denominator}",
            "duplicate_groups": len(bundle.groups),
            "clone_pairs": len(bundle.pairs),
            "duplicate_interfaces": len(bundle.duplicates),
            "association_records": len(bundle.associations),
            "cc_total": sum(a.cc_count for a in cross),
            "copied_lc_total": sum(a.copied_lc for a in cross),
            "covered_lc_total": sum(a.covered_lc for a in cross),
            "suggestions": len(bundle.suggestions),
        },
        "interfaces": [
            {
                "id": r.interface_id,
                "qualified_name": r.qualified_name,
                "size": r.size,
                "idm": r.idm,
                "iuc": rounded(r.iuc),
                "clients": r.client_count,
                "clone_degree": r.clone_degree,
                "duplicate_interface": r.interface_id in bundle.duplicates,
            }
            for r in bundle.rows
        ],
        "duplicate_groups": [
            {"signature": g.key, "interfaces": list(g.declaring_interfaces)} for g in bundle.groups
        ],
        "clone_pairs": [
            {"interface_a": p.interface_a, "interface_b": p.interface_b, "shared": sorted(p.shared_keys)}
            for p in bundle.pairs
        ],
        "duplicate_interfaces": list(bundle.duplicates),
        "correlations": bundle.correlations,
        "associations": [
            {
                "interface_pair": list(a.interface_pair),
                "signature": a.group.key,
                "cc_count": a.cc_count,
                "copied_lc": a.copied_lc,
                "covered_lc": a.covered_lc,
                "clone_pairs": [_pair_to_dict(cp) for cp in a.clone_pairs],
            }
            for a in bundle.associations
        ],
        "suggestions": [
            {
                "kind": s.kind,
                "subjects": list(s.subjects),
                "target": s.target,
                "affected_classes": list(s.affected_classes),
                "removed_declarations": s.removed_declarations,
                "shared_signatures": list(s.shared_keys),
                "placeholder_names": s.placeholder_names,
                "narrative": list(s.narrative),
            }
            for s in bundle.suggestions
        ],
        "removed": dict(filtered.removed),
        "warnings": list(bundle.warnings),
    }


# --- writers -------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def interfaces_csv(data: dict[str, Any]) -> str:
    rows: list[list[Any]] = [["qualified_name", "size", "idm", "iuc", "clone_degree"]]
    rows += [[r["qualified_name"], r["size"], r["idm"], r["iuc"], r["clone_degree"]] for r in data["interfaces"]]
    return _csv(rows)


def associations_csv(data: dict[str, Any]) -> str:
    # The signature column comes last so the first three columns keep the documented layout.
    rows: list[list[Any]] = [["interface_pair", "cc_count", "copied_lc", "signature"]]
    rows += [
        ["|".join(a["interface_pair"]), a["cc_count"], a["copied_lc"], a["signature"]]
        for a in data["associations"]
    ]
    return _csv(rows)


def _corr_cell(entry: Any) -> tuple[str, str]:
    if isinstance(entry, dict):
        return _fmt(entry["coefficient"]), _fmt(entry["determination"])
    return str(entry), ""


def markdown_report(data: dict[str, Any], top: int = 10) -> str:
    s = data["summary"]
    lines = [
        "# Interface clone report",
        "",
        "## Summary",
        "",
        "| measure | value |",
        "|---|---|",
        f"| interfaces analysed | {s['interfaces']} |",
        f"| interfaces parsed | {s['parsed_interfaces']} |",
        f"| classes | {s['classes']} |",
        f"| declared public methods | {s['total_size']} |",
        f"| duplicate method declarations (DM) | {s['dm']} |",
        f"| ratio of duplicate methods (RDM) | {_fmt(s['rdm']) or 'n/a'} |",
        f"| duplicate groups | {s['duplicate_groups']} |",
        f"| interface clone pairs | {s['clone_pairs']} |",
        f"| duplicate interfaces | {s['duplicate_interfaces']} |",
        f"| associated code clones (CC) | {s['cc_total']} |",
        f"| copied lines (CopiedLC) | {s['copied_lc_total']} |",
        "",
    ]
    if s["removed_interfaces"]:
        removed = ", ".join(f"{k}: {v}" for k, v in s["removed_interfaces"].items())
        lines += [f"Filtered out: {removed}.", ""]
    if data["duplicate_interfaces"]:
        lines += ["## Duplicate interfaces", ""]
        lines += [f"- `{i}`" for i in data["duplicate_interfaces"]]
        lines.append("")
    lines += ["## Correlations", "", "| variables | n | method | coefficient | determination |", "|---|---|---|---|---|"]
    for name, entry in data["correlations"].items():
        for method in data["config"]["correlation_methods"]:
            coef, det = _corr_cell(entry[method])
            lines.append(f"| {name} | {entry['n']} | {method} | {coef} | {det} |")
    lines.append("")
    groups = sorted(data["duplicate_groups"], key=lambda g: (-len(g["interfaces"]), g["signature"]))
    if groups:
        lines += ["## Largest duplicate groups", "", "| signature | interfaces |", "|---|---|"]
        for g in groups[:top]:
            lines.append(f"| `{g['signature']}` | {len(g['interfaces'])} |")
        lines.append("")
    if data["suggestions"]:
        lines += ["## Refactoring suggestions", ""]
        for n, sug in enumerate(data["suggestions"][:top], 1):
            flag = " (names are placeholders)" if sug["placeholder_names"] else ""
            lines.append(
                f"{n}. **{sug['kind']}**: {', '.join(sug['subjects'])}; "
                f"removes {sug['removed_declarations']} declarations{flag}"
            )
            lines += [f"   - {step}" for step in sug["narrative"]]
        lines.append("")
    if data["warnings"]:
        lines += ["## Warnings", ""]
        lines += [f"- {w}" for w in data["warnings"]]
        lines.append("")
    return "\n".join(lines)


def emit_reports(bundle: ReportBundle | dict[str, Any], config: AnalysisConfig) -> list[Path]:
    """Write the configured report files and return their paths."""
    data = bundle if isinstance(bundle, dict) else bundle.to_dict()
    out = config.output_dir
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise SourceIOError(f"cannot create output directory {out}: {exc}") from exc
    files: dict[str, str] = {}
    if "json" in config.formats:
        files["summary.json"] = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if "csv" in config.formats:
        files["interfaces.csv"] = interfaces_csv(data)
        files["associations.csv"] = associations_csv(data)
    if "md" in config.formats:
        files["report.md"] = markdown_report(data)
    written = []
    for name, text in files.items():
        path = out / name
        try:
            path.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise SourceIOError(f"cannot write {path}: {exc}") from exc
        written.append(path)
    return written
