"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class AnalysisError(Exception):
    """Base class for all errors raised by ifaceclones."""


class ConfigError(AnalysisError):
    """Invalid analysis configuration (bad roots, formats or parameters)."""


class NoSourceFound(AnalysisError):
    """No source file was discovered under any of the given roots."""


class SourceIOError(AnalysisError, OSError):
    """A source root or the output directory could not be read or written."""


class ParseError(AnalysisError):
    """A single source file could not be parsed. Never fatal for a tree."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class EmptyModel(AnalysisError):
    """The model declares no public interface method, so RDM is undefined."""


class UnknownInterface(AnalysisError, KeyError):
    def __str__(self) -> str:
        return f"unknown interface: {self.args[0]!r}"


class DegenerateSample(AnalysisError, ValueError):
    """A correlation sample is too small or constant."""
