from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .textclone import CloneParams

FORMATS = frozenset({"json", "csv", "md"})
CORRELATION_METHODS = ("pearson", "spearman")
DEFAULT_TEST_PATTERNS = ("Test*", "*Test", "*Tests")


@dataclass(frozen=True)
class AnalysisConfig:
    source_roots: tuple[Path, ...]
    exclude_tests: bool = True
    test_patterns: tuple[str, ...] = DEFAULT_TEST_PATTERNS
    clone_params: CloneParams = field(default_factory=CloneParams)
    correlation_methods: tuple[str, ...] = CORRELATION_METHODS
    output_dir: Path = Path("ifaceclones-report")
    formats: frozenset[str] = FORMATS
    extensions: tuple[str, ...] = (".java",)
    # Sources parsed only to resolve hierarchies; their interfaces count as library.
    library_roots: tuple[Path, ...] = ()
    strip_comments: bool = False
    include_intra_clones: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "source_roots", tuple(Path(p) for p in self.source_roots))
        object.__setattr__(self, "library_roots", tuple(Path(p) for p in self.library_roots))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        object.__setattr__(self, "formats", frozenset(self.formats))
        if not self.source_roots:
            raise ConfigError("at least one source root is required")
        if not self.formats:
            raise ConfigError("at least one output format is required")
        unknown = self.formats - FORMATS
        if unknown:
            raise ConfigError(f"unknown output format(s): {', '.join(sorted(unknown))}")
        bad = set(self.correlation_methods) - set(CORRELATION_METHODS)
        if bad or not self.correlation_methods:
            raise ConfigError(f"unknown correlation method(s): {', '.join(sorted(bad)) or '(none)'}")
