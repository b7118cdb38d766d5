from __future__ import annotations

import textwrap
from pathlib import Path

import pytest

from ifaceclones.facts import parse_source_tree

CORPUS = Path(__file__).resolve().parents[1] / "src" / "ifaceclones" / "corpus" / "vuze_mini"


def write_tree(root: Path, files: dict[str, str]) -> Path:
    for rel, text in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(textwrap.dedent(text), encoding="utf-8")
    return root


@pytest.fixture
def java_tree(tmp_path):
    """Write ``{relative path: source}`` under a fresh root and parse it."""

    def build(files: dict[str, str], **kwargs):
        root = write_tree(tmp_path / "src", files)
        return parse_source_tree([root], **kwargs)

    return build


@pytest.fixture(scope="session")
def corpus_root() -> Path:
    return CORPUS


# Acceptance criteria register their outcome here; the summary hook prints one line each.
ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []  # (criterion, PASS/FAIL/SKIP, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}  {name}  ({detail})")
