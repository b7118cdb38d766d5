"""Best-effort resolution of written type names to qualified names.

No classpath is available, so resolution walks a fixed ladder: explicit
import, same package, wildcard import of a modeled package, ``java.lang``,
a unique modeled simple name, and finally the simple name itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Iterable, Sequence

from .javaparse import PRIMITIVES, tokenize
from .model import TypeRef

# Commonly used java.lang types. The package is imported implicitly.
JAVA_LANG = frozenset(
    {
        "Appendable", "AutoCloseable", "Boolean", "Byte", "CharSequence", "Character", "Class",
        "ClassLoader", "Cloneable", "Comparable", "Deprecated", "Double", "Enum", "Error",
        "Exception", "Float", "FunctionalInterface", "IllegalArgumentException",
        "IllegalStateException", "IndexOutOfBoundsException", "Integer", "Iterable", "Long",
        "Math", "NullPointerException", "Number", "Object", "Override", "Process", "Readable",
        "Record", "Runnable", "RuntimeException", "SafeVarargs", "Short", "StackTraceElement",
        "String", "StringBuffer", "StringBuilder", "SuppressWarnings", "System", "Thread",
        "ThreadLocal", "Throwable", "UnsupportedOperationException", "Void",
    }
)


@dataclass(frozen=True)
class ImportTable:
    single: dict[str, str] = field(default_factory=dict)
    on_demand: tuple[str, ...] = ()

    @classmethod
    def from_imports(cls, imports: Iterable[str]) -> ImportTable:
        single: dict[str, str] = {}
        on_demand: list[str] = []
        for imp in imports:
            if imp.startswith("static "):
                continue
            if imp.endswith(".*"):
                on_demand.append(imp[:-2])
            else:
                single[imp.rsplit(".", 1)[-1]] = imp
        return cls(single, tuple(on_demand))


@dataclass(frozen=True)
class TypeIndex:
    """Qualified names declared in the model, with a simple-name lookup."""

    names: frozenset[str] = frozenset()
    by_simple: dict[str, tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def of(cls, names: Collection[str]) -> TypeIndex:
        by_simple: dict[str, list[str]] = {}
        for n in sorted(names):
            by_simple.setdefault(n.rsplit(".", 1)[-1], []).append(n)
        return cls(frozenset(names), {k: tuple(v) for k, v in by_simple.items()})


def canonical_text(tokens: Sequence[str]) -> str:
    """Join type tokens, keeping a single space only between two words."""
    out: list[str] = []
    prev_word = False
    for t in tokens:
        word = t[:1].isalnum() or t[:1] in "_$"
        if word and prev_word:
            out.append(" ")
        out.append(t)
        prev_word = word
    return "".join(out)


def _resolve_head(name: str, imports: ImportTable, package: Sequence[str], index: TypeIndex) -> str:
    if name in PRIMITIVES:
        return name
    if name in imports.single:
        return imports.single[name]
    pkg = ".".join(package)
    local = f"{pkg}.{name}" if pkg else name
    if local in index.names:
        return local
    for prefix in imports.on_demand:
        candidate = f"{prefix}.{name}"
        if candidate in index.names:
            return candidate
    if name in JAVA_LANG:
        return f"java.lang.{name}"
    candidates = index.by_simple.get(name, ())
    if len(candidates) == 1:
        return candidates[0]
    return name


def resolve_type(
    raw: str | Sequence[str],
    imports: ImportTable | None = None,
    package: Sequence[str] = (),
    index: TypeIndex | None = None,
    type_params: Collection[str] = (),
) -> TypeRef:
    """Resolve a written type to a ``TypeRef``.

    Generic arguments are kept verbatim (whitespace canonicalised) after the
    resolved base name; varargs become one extra array dimension.
    """
    tokens = [t.text for t in tokenize(raw)] if isinstance(raw, str) else list(raw)
    if not tokens:
        raise ValueError("cannot resolve an empty type")
    imports = imports or ImportTable()
    index = index or TypeIndex()

    dims = 0
    while len(tokens) >= 2 and tokens[-2:] == ["[", "]"]:
        dims += 1
        tokens = tokens[:-2]
    varargs = False
    if tokens and tokens[-1] == "...":
        varargs = True
        tokens = tokens[:-1]
    raw_text = canonical_text(tokens) + "[]" * dims + ("..." if varargs else "")
    dims += int(varargs)

    # Split the dotted head (outside generic brackets) from the arguments.
    head: list[str] = []
    depth = 0
    args_at = len(tokens)
    for i, t in enumerate(tokens):
        if t == "<":
            if depth == 0 and args_at == len(tokens):
                args_at = i
            depth += 1
        elif t == ">":
            depth -= 1
        elif depth == 0 and args_at == len(tokens):
            head.append(t)
    parts = [t for t in head if t != "."]
    generic = canonical_text(tokens[args_at:]) if args_at < len(tokens) else ""
    # Args between dotted segments (Outer<T>.Inner) are rare; keep the tail text.

    if not parts:
        resolved = canonical_text(tokens)
    elif parts[0] in type_params and len(parts) == 1:
        resolved = parts[0]
    elif len(parts) > 1 and parts[0][:1].islower():
        resolved = ".".join(parts)
    else:
        first = _resolve_head(parts[0], imports, package, index)
        rest = parts[1:]
        resolved = ".".join([first, *rest])
        # Nested member types declared in the model resolve through their owner.
        if rest and resolved not in index.names:
            candidates = index.by_simple.get(rest[-1], ())
            if len(candidates) == 1 and candidates[0].endswith("." + ".".join(parts)):
                resolved = candidates[0]
    return TypeRef(raw_text=raw_text, resolved_name=resolved + generic, is_array=dims > 0, dimensions=dims)
