"""Build, enrich and filter the ``CodeModel`` of a source tree."""

from __future__ import annotations

import logging
import os
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import DEFAULT_TEST_PATTERNS, AnalysisConfig
from .errors import NoSourceFound, ParseError, SourceIOError
from .javaparse import IDENT, RawMethod, RawType, RawUnit, Token, _Parser, parse_java
from .model import (
    OTHER,
    PUBLIC,
    ClassDecl,
    CodeModel,
    FieldDecl,
    InterfaceDecl,
    InterfaceFlags,
    InvocationSite,
    MethodBody,
    MethodSignature,
    TypeRef,
)
from .resolve import ImportTable, TypeIndex, resolve_type

logger = logging.getLogger(__name__)

TEST_SEGMENTS = frozenset({"test", "tests"})
VOID = TypeRef("void", "void")

# Words that can start a statement but never a local variable declaration.
_STATEMENT_WORDS = frozenset(
    {
        "return", "throw", "new", "else", "case", "yield", "assert", "break", "continue",
        "do", "if", "for", "while", "switch", "try", "catch", "finally", "synchronized",
        "this", "super", "instanceof", "default", "goto", "true", "false", "null",
    }
)
_DECLARATION_LEADERS = frozenset({"{", "}", ";", "(", ")", ":", "->", "final"})


def discover_sources(roots: Iterable[Path], extensions: Sequence[str]) -> list[tuple[Path, Path]]:
    """(root, file) pairs for every source file under ``roots``, in sorted order."""
    found = []
    for root in roots:
        if root.is_file():
            if root.suffix in extensions:
                found.append((root.parent, root))
            continue
        for dirpath, dirnames, filenames in os.walk(root):
            dirnames.sort()
            for name in sorted(filenames):
                if Path(name).suffix in extensions:
                    found.append((root, Path(dirpath) / name))
    return found


def is_test_class(qualified_name: str, package_path: Sequence[str], patterns: Sequence[str] = DEFAULT_TEST_PATTERNS) -> bool:
    if any(seg.lower() in TEST_SEGMENTS for seg in package_path):
        return True
    names = qualified_name.split(".")[len(package_path):] or [qualified_name]
    return any(fnmatchcase(n, pat) for n in names for pat in patterns)


def in_test_package(package_path: Sequence[str]) -> bool:
    return any(seg.lower() in TEST_SEGMENTS for seg in package_path)


class _UnitContext:
    def __init__(self, unit: RawUnit, index: TypeIndex) -> None:
        self.unit = unit
        self.imports = ImportTable.from_imports(unit.imports)
        self.index = index

    def resolve(self, tokens: Sequence[str], type_params: Iterable[str] = ()) -> TypeRef:
        return resolve_type(tokens, self.imports, self.unit.package, self.index, frozenset(type_params))


def _method_parts(
    ctx: _UnitContext, tparams: list[str], method: RawMethod, source: str, visibility: str
) -> tuple[MethodSignature, MethodBody | None]:
    scope = [*tparams, *method.type_params]
    params = []
    for p in method.params:
        tokens = p.type_tokens + (["..."] if p.varargs else [])
        params.append(ctx.resolve(tokens, scope))
    ret = VOID if method.return_tokens is None else ctx.resolve(method.return_tokens, scope)
    sig = MethodSignature(method.name, ret, tuple(params), visibility)
    body = None
    if method.body_span is not None:
        open_at, close_at = method.body_span
        body = MethodBody(sig, source[open_at + 1:close_at], method.body_lines, tuple(p.name for p in method.params))
    return sig, body


def _enclosing_type_params(raw: RawType, by_qname: Mapping[str, RawType]) -> list[str]:
    params = list(raw.type_params)
    owner = raw.qualified_name
    while "." in owner:
        owner = owner.rsplit(".", 1)[0]
        if owner in by_qname:
            params.extend(by_qname[owner].type_params)
    return params


def parse_source_tree(
    roots: Sequence[str | Path], config: AnalysisConfig | None = None, allow_empty: bool = True
) -> CodeModel:
    """Parse every source file under ``roots`` into a ``CodeModel``.

    Files that cannot be decoded or parsed are skipped and listed in
    ``model.warnings``. With ``allow_empty=False`` a tree without any source
    file raises ``NoSourceFound``.
    """
    roots = tuple(Path(r) for r in roots)
    config = config or AnalysisConfig(source_roots=roots)
    for root in (*roots, *config.library_roots):
        if not root.exists() or not os.access(root, os.R_OK):
            raise SourceIOError(f"cannot read source root: {root}")

    files = [(root, path, False) for root, path in discover_sources(roots, config.extensions)]
    files += [(root, path, True) for root, path in discover_sources(config.library_roots, config.extensions)]
    if not allow_empty and not any(not lib for _, _, lib in files):
        raise NoSourceFound("no source files under: " + ", ".join(str(r) for r in roots))

    warnings: list[str] = []
    parsed: list[tuple[str, str, RawUnit, bool]] = []
    for root, path, is_library in files:
        rel = (Path(root.name) / path.relative_to(root)).as_posix() if root.name else path.as_posix()
        try:
            source = path.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            warnings.append(f"{rel}: skipped, not valid UTF-8")
            continue
        except OSError as exc:
            warnings.append(f"{rel}: skipped, {exc.strerror or exc}")
            continue
        try:
            unit = parse_java(source)
        except ParseError as exc:
            warnings.append(f"{rel}: skipped, parse error ({exc})")
            continue
        parsed.append((rel, source, unit, is_library))
    for w in warnings:
        logger.warning(w)

    all_names = [t.qualified_name for _, _, unit, _ in parsed for t in unit.types]
    index = TypeIndex.of(all_names)
    by_qname: dict[str, RawType] = {}
    ids: dict[int, str] = {}
    used: set[str] = set()
    for _, _, unit, _ in parsed:
        for raw in unit.types:
            by_qname.setdefault(raw.qualified_name, raw)
            tid, n = raw.qualified_name, 1
            while tid in used:
                n += 1
                tid = f"{raw.qualified_name}#{n}"
            used.add(tid)
            ids[id(raw)] = tid
    name_to_id = {}
    for _, _, unit, _ in parsed:
        for raw in unit.types:
            name_to_id.setdefault(raw.qualified_name, ids[id(raw)])

    def type_id(ref: TypeRef) -> str:
        return name_to_id.get(ref.base_name, ref.base_name)

    interfaces: dict[str, InterfaceDecl] = {}
    classes: dict[str, ClassDecl] = {}
    for rel, source, unit, is_library in parsed:
        ctx = _UnitContext(unit, index)
        for raw in unit.types:
            tid = ids[id(raw)]
            tparams = _enclosing_type_params(raw, by_qname)
            if raw.kind == "interface":
                sigs, bodies = [], []
                for m in raw.methods:
                    vis = OTHER if "private" in m.modifiers else PUBLIC
                    sig, body = _method_parts(ctx, tparams, m, source, vis)
                    sigs.append(sig)
                    if body is not None:
                        bodies.append(body)
                size = sum(1 for s in sigs if s.visibility == PUBLIC)
                interfaces[tid] = InterfaceDecl(
                    id=tid,
                    qualified_name=raw.qualified_name,
                    package_path=unit.package,
                    signatures=tuple(sigs),
                    extends=tuple(type_id(ctx.resolve(t, tparams)) for t in raw.extends),
                    flags=InterfaceFlags(
                        is_marker=size == 0,
                        is_test=in_test_package(unit.package),
                        is_library=is_library,
                    ),
                    bodies=tuple(bodies),
                    source_path=rel,
                )
            else:
                bodies = []
                for m in raw.methods:
                    vis = PUBLIC if "public" in m.modifiers else OTHER
                    _, body = _method_parts(ctx, tparams, m, source, vis)
                    if body is not None:
                        bodies.append(body)
                fields = tuple(
                    FieldDecl(name, ctx.resolve(f.type_tokens, tparams)) for f in raw.fields for name in f.names
                )
                supers = [type_id(ctx.resolve(t, tparams)) for t in raw.extends]
                classes[tid] = ClassDecl(
                    id=tid,
                    qualified_name=raw.qualified_name,
                    package_path=unit.package,
                    implements=tuple(type_id(ctx.resolve(t, tparams)) for t in raw.implements),
                    extends=supers[0] if supers else None,
                    bodies=tuple(bodies),
                    fields=fields,
                    is_test=is_test_class(raw.qualified_name, unit.package, config.test_patterns),
                    is_abstract="abstract" in raw.modifiers,
                    source_path=rel,
                    imports=tuple(unit.imports),
                )

    model = CodeModel(
        interfaces=interfaces,
        classes=classes,
        source_roots=tuple(Path(r).as_posix() for r in roots),
        warnings=tuple(warnings),
    )
    # Implementer-based test status needs the assembled hierarchy.
    interfaces = {
        iid: _with_flags(decl, is_test=decl.flags.is_test or _all_implementers_test(model, iid))
        for iid, decl in model.interfaces.items()
    }
    model = model.evolve(interfaces=interfaces)
    sites: list[InvocationSite] = []
    iface_by_name = {d.qualified_name: d.id for d in sorted(model.interfaces.values(), key=lambda d: d.id)}
    for cls in model.classes.values():
        sites.extend(extract_invocations(cls, model, index=index, iface_by_name=iface_by_name))
    return model.evolve(invocations=tuple(sites))


def _with_flags(decl: InterfaceDecl, **changes: bool) -> InterfaceDecl:
    flags = decl.flags
    values = {"is_marker": flags.is_marker, "is_test": flags.is_test, "is_library": flags.is_library}
    values.update(changes)
    return InterfaceDecl(
        id=decl.id,
        qualified_name=decl.qualified_name,
        package_path=decl.package_path,
        signatures=decl.signatures,
        extends=decl.extends,
        flags=InterfaceFlags(**values),
        bodies=decl.bodies,
        source_path=decl.source_path,
    )


def _all_implementers_test(model: CodeModel, interface_id: str) -> bool:
    closure = model.implementation_closure(interface_id)
    return bool(closure) and all(model.classes[c].is_test for c in closure)


# --- invocation sites --------------------------------------------------------


def _argument_count(toks: list[Token], open_at: int, parser: _Parser) -> int:
    depth = 0
    commas = 0
    empty = True
    j = open_at
    while j < len(toks):
        t = toks[j].text
        if t in ("(", "[", "{"):
            depth += 1
        elif t in (")", "]", "}"):
            depth -= 1
            if depth == 0:
                break
        elif t == "<" and j > 0 and toks[j - 1].kind == IDENT:
            end = parser.generic_end(j)
            if end is not None and end < len(toks) and toks[end].text in ("(", "[", "::"):
                j = end
                empty = False
                continue
        elif t == "," and depth == 1:
            commas += 1
        if depth >= 1 and j != open_at:
            empty = False
        j += 1
    return 0 if empty else commas + 1


def _local_declaration(parser: _Parser, k: int) -> tuple[str, list[str]] | None:
    toks = parser.toks
    tok = toks[k]
    if tok.kind != IDENT or tok.text in _STATEMENT_WORDS:
        return None
    prev = toks[k - 1].text if k > 0 else "{"
    if prev not in _DECLARATION_LEADERS:
        return None
    parser.pos = k
    try:
        type_tokens = parser.read_type()
    except ParseError:
        return None
    name = parser.peek()
    after = parser.peek(1)
    if name is None or name.kind != IDENT or after is None or after.text not in ("=", ";", ",", ":", ")"):
        return None
    return name.text, type_tokens


def extract_invocations(
    cls: ClassDecl,
    model: CodeModel,
    index: TypeIndex | None = None,
    iface_by_name: Mapping[str, str] | None = None,
) -> list[InvocationSite]:
    """Interface-typed call sites ``recv.m(...)`` in the bodies of ``cls``.

    Receivers are fields (own or inherited), parameters and locals whose
    declared type resolves to a modeled interface. Sites are collapsed on
    (class, interface, method name, argument count).
    """
    if index is None:
        index = TypeIndex.of([*(d.qualified_name for d in model.interfaces.values()), *(c.qualified_name for c in model.classes.values())])
    if iface_by_name is None:
        iface_by_name = {d.qualified_name: d.id for d in sorted(model.interfaces.values(), key=lambda d: d.id)}
    imports = ImportTable.from_imports(cls.imports)

    fields: dict[str, TypeRef] = {}
    chain = list(model.superclass_chain(cls.id)) if cls.id in model.classes else [cls]
    for decl in reversed(chain):
        fields.update((f.name, f.type) for f in decl.fields)

    sites: dict[tuple[str, str, int], InvocationSite] = {}
    for body in cls.bodies:
        scope = dict(fields)
        scope.update(zip(body.param_names, body.signature.param_types))
        parser = _Parser(body.text)
        toks = parser.toks
        for k, tok in enumerate(toks):
            decl = _local_declaration(parser, k)
            if decl is not None:
                name, type_tokens = decl
                scope[name] = resolve_type(type_tokens, imports, cls.package_path, index)
            if tok.kind != IDENT or k + 3 >= len(toks):
                continue
            if toks[k + 1].text != "." or toks[k + 2].kind != IDENT or toks[k + 3].text != "(":
                continue
            via_this = k >= 2 and toks[k - 1].text == "." and toks[k - 2].text == "this"
            if k > 0 and toks[k - 1].text == "." and not via_this:
                continue
            receiver = fields.get(tok.text) if via_this else scope.get(tok.text)
            if receiver is None or receiver.is_array:
                continue
            iid = iface_by_name.get(receiver.base_name)
            if iid is None:
                continue
            method = toks[k + 2].text
            arity = _argument_count(toks, k + 3, parser)
            sites.setdefault(
                (iid, method, arity), InvocationSite(cls.id, iid, receiver, method, arity)
            )
    return [sites[k] for k in sorted(sites)]


# --- filtering -----------------------------------------------------------------

LIBRARY = "library"
MARKER = "marker"
TEST = "test"


def removal_reason(model: CodeModel, decl: InterfaceDecl, config: AnalysisConfig | None = None) -> str | None:
    exclude_tests = config.exclude_tests if config is not None else True
    if decl.flags.is_library:
        return LIBRARY
    if decl.size == 0:
        return MARKER
    if exclude_tests and (in_test_package(decl.package_path) or _all_implementers_test(model, decl.id)):
        return TEST
    return None


def filter_model(model: CodeModel, config: AnalysisConfig | None = None) -> CodeModel:
    """Drop library, marker and (optionally) test interfaces, recording why."""
    keep: dict[str, InterfaceDecl] = {}
    removed = dict(model.removed)
    retired = dict(model.retired)
    for iid, decl in model.interfaces.items():
        reason = removal_reason(model, decl, config)
        if reason is None:
            keep[iid] = decl
        else:
            removed[iid] = reason
            retired[iid] = decl
    invocations = tuple(s for s in model.invocations if s.interface_id in keep)
    return model.evolve(interfaces=keep, removed=removed, retired=retired, invocations=invocations)
