from __future__ import annotations

import csv
import io
import json
import re

import pytest

from ifaceclones.config import AnalysisConfig
from ifaceclones.errors import ConfigError, NoSourceFound
from ifaceclones.report import INSUFFICIENT, emit_reports, markdown_report, rounded, run_analysis

from conftest import write_tree
from oracles import textbook_pearson


def analyse(root, out, **kwargs):
    config = AnalysisConfig(source_roots=(root,), output_dir=out, **kwargs)
    bundle = run_analysis(config)
    return bundle, emit_reports(bundle, config)


def numbers(value) -> set[str]:
    found: set[str] = set()
    if isinstance(value, dict):
        for v in value.values():
            found |= numbers(v)
    elif isinstance(value, list):
        for v in value:
            found |= numbers(v)
    elif isinstance(value, bool) or value is None:
        pass
    elif isinstance(value, (int, float)):
        found.add(repr(value))
    elif isinstance(value, str):
        found |= set(re.findall(r"-?\d+(?:\.\d+)?", value))
    return found


def test_mini_corpus_bundle(corpus_root, tmp_path):
    bundle, written = analyse(corpus_root, tmp_path / "out")
    data = bundle.to_dict()
    assert data["schema_version"] == 1
    s = data["summary"]
    assert (s["interfaces"], s["total_size"], s["dm"], s["rdm_exact"]) == (5, 20, 15, "3/4")
    assert s["rdm"] == 0.75
    assert (s["duplicate_groups"], s["clone_pairs"], s["cc_total"], s["copied_lc_total"]) == (3, 10, 3, 24)
    assert data["suggestions"]
    assert sorted(p.name for p in written) == ["associations.csv", "interfaces.csv", "report.md", "summary.json"]
    iuc = {r["qualified_name"].rsplit(".", 2)[-2] + "." + r["qualified_name"].rsplit(".", 1)[-1]: r["iuc"] for r in data["interfaces"]}
    assert iuc == {
        "access.DiskManagerWriteRequest": 0.333333,
        "access.DiskManagerReadRequest": 0.666667,
        "peer.PeerReadRequest": 0.4,
        "peermanager.DiskManagerReadRequest": 0.5,
        "disk.DiskManagerWriteRequest": 1.0,
    }


def test_csv_rows_match_model(corpus_root, tmp_path):
    bundle, _ = analyse(corpus_root, tmp_path)
    rows = list(csv.reader(io.StringIO((tmp_path / "interfaces.csv").read_text())))
    assert rows[0] == ["qualified_name", "size", "idm", "iuc", "clone_degree"]
    assert len(rows) - 1 == 5 == len(bundle.filtered.interfaces)
    assoc = list(csv.reader(io.StringIO((tmp_path / "associations.csv").read_text())))
    assert assoc[0][:3] == ["interface_pair", "cc_count", "copied_lc"]
    assert len(assoc) - 1 == len(bundle.associations)


def test_json_only(corpus_root, tmp_path):
    _, written = analyse(corpus_root, tmp_path, formats={"json"})
    assert [p.name for p in written] == ["summary.json"]
    assert sorted(p.name for p in tmp_path.iterdir()) == ["summary.json"]


def test_rerun_is_byte_identical(corpus_root, tmp_path):
    analyse(corpus_root, tmp_path / "one")
    analyse(corpus_root, tmp_path / "two")
    for name in ["summary.json", "interfaces.csv", "associations.csv", "report.md"]:
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_markdown_numbers_come_from_json(corpus_root, tmp_path):
    analyse(corpus_root, tmp_path)
    data = json.loads((tmp_path / "summary.json").read_text())
    md = (tmp_path / "report.md").read_text()
    assert markdown_report(data) == md
    in_json = numbers(data)
    stray = [n for n in re.findall(r"(?<![\w.<])-?\d+(?:\.\d+)?(?![\w>])", md) if n not in in_json]
    assert stray == []


def varied_project(root):
    files = {}
    names = ["a", "b", "c", "d", "e", "f"]
    for k in range(5):
        own = [f"void {n}{k}();" for n in names[: k + 1]]
        shared = [f"int shared{j}();" for j in range(k)]
        files[f"v/I{k}.java"] = "package v;\npublic interface I%d {\n%s\n}\n" % (k, "\n".join(own + shared))
        calls = " ".join(f"x.{n}{k}();" for n in names[: (k % 3) + 1])
        files[f"v/C{k}.java"] = "package v;\npublic class C%d { I%d x; void go() { %s } }\n" % (k, k, calls)
    return write_tree(root, files)


def test_correlations_reported(tmp_path):
    root = varied_project(tmp_path / "src")
    bundle, _ = analyse(root, tmp_path / "out")
    corr = bundle.to_dict()["correlations"]
    assert corr["size_vs_idm"]["n"] == 5
    # sizes 1,3,5,7,9; the last shared method of I4 is declared nowhere else, so IDM is 0,1,2,3,3
    expected = textbook_pearson([1, 3, 5, 7, 9], [0, 1, 2, 3, 3])
    entry = corr["size_vs_idm"]["pearson"]
    assert entry["coefficient"] == pytest.approx(expected, abs=1e-6)
    assert entry["determination"] == pytest.approx(expected**2, abs=1e-6)
    assert isinstance(corr["idm_vs_iuc"]["spearman"], dict)
    md = (tmp_path / "out" / "report.md").read_text()
    assert f"| size_vs_idm | 5 | pearson | {entry['coefficient']!r} | {entry['determination']!r} |" in md


def test_insufficient_samples(java_tree, tmp_path):
    root = write_tree(tmp_path / "src", {"A.java": "interface A { void a(); }", "B.java": "interface B { void a(); }"})
    bundle, _ = analyse(root, tmp_path / "out")
    corr = bundle.to_dict()["correlations"]
    assert corr["size_vs_idm"] == {"n": 2, "pearson": INSUFFICIENT, "spearman": INSUFFICIENT}


def test_clone_free_project(tmp_path):
    root = write_tree(tmp_path / "src", {"A.java": "interface A { void a(); }", "B.java": "interface B { void b(); }"})
    bundle, _ = analyse(root, tmp_path / "out")
    assert bundle.rdm == 0 and bundle.suggestions == []


def test_everything_filtered(tmp_path):
    root = write_tree(tmp_path / "src", {"M.java": "interface M {}"})
    bundle, _ = analyse(root, tmp_path / "out")
    data = bundle.to_dict()
    assert data["interfaces"] == [] and data["summary"]["rdm"] is None
    assert any("no interface left" in w for w in data["warnings"])


def test_empty_root(tmp_path):
    with pytest.raises(NoSourceFound):
        run_analysis(AnalysisConfig(source_roots=(tmp_path,)))


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        AnalysisConfig(source_roots=())
    with pytest.raises(ConfigError):
        AnalysisConfig(source_roots=(tmp_path,), formats={"xml"})
    with pytest.raises(ConfigError):
        AnalysisConfig(source_roots=(tmp_path,), formats=set())
    with pytest.raises(ConfigError):
        AnalysisConfig(source_roots=(tmp_path,), correlation_methods=("kendall",))


def test_rounding_is_half_even():
    assert rounded(0.0000005) == 0.0
    assert rounded(0.0000015) == 0.000002
    assert rounded(None) is None
