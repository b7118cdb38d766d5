"""Immutable fact base extracted from an object-oriented source tree.

Every record is a frozen dataclass built from tuples so a finished
``CodeModel`` can be shared freely between readers. ``model_to_dict`` and
``model_from_dict`` give a lossless JSON form used by ``--dump-model`` and the
round-trip tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Any, Iterable, Iterator, Mapping

MODEL_SCHEMA_VERSION = 1

PUBLIC = "public"
OTHER = "other"


@dataclass(frozen=True, slots=True)
class TypeRef:
    raw_text: str
    resolved_name: str
    is_array: bool = False
    dimensions: int = 0

    def __post_init__(self) -> None:
        if not self.raw_text:
            raise ValueError("TypeRef.raw_text must be non-empty")

    @property
    def base_name(self) -> str:
        """Resolved name without generic arguments."""
        return self.resolved_name.split("<", 1)[0]

    @property
    def key(self) -> str:
        return self.resolved_name + "[]" * self.dimensions


@dataclass(frozen=True, slots=True)
class MethodSignature:
    name: str
    return_type: TypeRef
    param_types: tuple[TypeRef, ...] = ()
    visibility: str = PUBLIC

    @property
    def is_public(self) -> bool:
        return self.visibility == PUBLIC

    @property
    def arity(self) -> int:
        return len(self.param_types)

    @property
    def key(self) -> str:
        params = ",".join(p.key for p in self.param_types)
        return f"{self.return_type.key} {self.name}({params})"

    @property
    def params_key(self) -> str:
        """Name and parameter types only, used to match implementations."""
        return f"{self.name}({','.join(p.key for p in self.param_types)})"


@dataclass(frozen=True, slots=True)
class MethodBody:
    signature: MethodSignature
    text: str
    line_span: tuple[int, int]
    param_names: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class FieldDecl:
    name: str
    type: TypeRef


@dataclass(frozen=True, slots=True)
class InterfaceFlags:
    is_marker: bool = False
    is_test: bool = False
    is_library: bool = False


@dataclass(frozen=True, slots=True)
class InterfaceDecl:
    id: str
    qualified_name: str
    package_path: tuple[str, ...]
    signatures: tuple[MethodSignature, ...]
    extends: tuple[str, ...] = ()
    flags: InterfaceFlags = InterfaceFlags()
    bodies: tuple[MethodBody, ...] = ()
    source_path: str = ""

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]

    @property
    def public_signatures(self) -> tuple[MethodSignature, ...]:
        return tuple(s for s in self.signatures if s.is_public)

    @property
    def size(self) -> int:
        return len(self.public_signatures)


@dataclass(frozen=True, slots=True)
class ClassDecl:
    id: str
    qualified_name: str
    package_path: tuple[str, ...] = ()
    implements: tuple[str, ...] = ()
    extends: str | None = None
    bodies: tuple[MethodBody, ...] = ()
    fields: tuple[FieldDecl, ...] = ()
    is_test: bool = False
    is_abstract: bool = False
    source_path: str = ""
    imports: tuple[str, ...] = ()

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]


@dataclass(frozen=True, slots=True)
class InvocationSite:
    client_class: str
    interface_id: str
    receiver_declared_type: TypeRef
    method_name: str
    arg_count: int


def _freeze(mapping: Mapping[str, Any] | None) -> Mapping[str, Any]:
    return MappingProxyType(dict(sorted((mapping or {}).items())))


@dataclass(frozen=True, eq=False)
class CodeModel:
    interfaces: Mapping[str, InterfaceDecl] = field(default_factory=dict)
    classes: Mapping[str, ClassDecl] = field(default_factory=dict)
    invocations: tuple[InvocationSite, ...] = ()
    source_roots: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    # Interfaces dropped by filtering, with the reason; kept so hierarchy
    # queries still see edges that pass through them.
    removed: Mapping[str, str] = field(default_factory=dict)
    retired: Mapping[str, InterfaceDecl] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "interfaces", _freeze(self.interfaces))
        object.__setattr__(self, "classes", _freeze(self.classes))
        object.__setattr__(self, "removed", _freeze(self.removed))
        object.__setattr__(self, "retired", _freeze(self.retired))
        object.__setattr__(self, "invocations", tuple(self.invocations))
        object.__setattr__(self, "source_roots", tuple(self.source_roots))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodeModel):
            return NotImplemented
        return (
            dict(self.interfaces) == dict(other.interfaces)
            and dict(self.classes) == dict(other.classes)
            and self.invocations == other.invocations
            and self.source_roots == other.source_roots
            and self.warnings == other.warnings
            and dict(self.removed) == dict(other.removed)
            and dict(self.retired) == dict(other.retired)
        )

    __hash__ = None  # type: ignore[assignment]

    def evolve(self, **changes: Any) -> CodeModel:
        return replace(self, **changes)

    def is_external(self, type_id: str) -> bool:
        return type_id not in self.interfaces and type_id not in self.classes

    def sub_interfaces(self, interface_id: str) -> set[str]:
        """``interface_id`` plus every modeled interface extending it transitively."""
        children: dict[str, list[str]] = {}
        for decl in [*self.interfaces.values(), *self.retired.values()]:
            for parent in decl.extends:
                children.setdefault(parent, []).append(decl.id)
        seen = {interface_id}
        stack = [interface_id]
        while stack:
            for child in children.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen

    def ancestors(self, interface_id: str) -> set[str]:
        """Modeled interfaces that ``interface_id`` extends, transitively (excluding itself).

        Filtered-out interfaces are walked through but not returned.
        """
        decls = {**self.retired, **self.interfaces}
        seen: set[str] = set()
        stack = list(decls[interface_id].extends) if interface_id in decls else []
        while stack:
            parent = stack.pop()
            if parent in seen or parent not in decls:
                continue
            seen.add(parent)
            stack.extend(decls[parent].extends)
        return {i for i in seen if i in self.interfaces}

    def subclasses(self, class_ids: Iterable[str]) -> set[str]:
        children: dict[str, list[str]] = {}
        for decl in self.classes.values():
            if decl.extends:
                children.setdefault(decl.extends, []).append(decl.id)
        seen = set(class_ids)
        stack = list(seen)
        while stack:
            for child in children.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen

    def implementation_closure(self, interface_id: str) -> set[str]:
        """Classes implementing ``interface_id`` directly, via a sub-interface or by inheritance."""
        subs = self.sub_interfaces(interface_id)
        direct = {c.id for c in self.classes.values() if subs.intersection(c.implements)}
        return self.subclasses(direct)

    def superclass_chain(self, class_id: str) -> Iterator[ClassDecl]:
        seen: set[str] = set()
        current: str | None = class_id
        while current is not None and current in self.classes and current not in seen:
            seen.add(current)
            decl = self.classes[current]
            yield decl
            current = decl.extends

    def sites_for(self, interface_id: str) -> list[InvocationSite]:
        return [s for s in self.invocations if s.interface_id == interface_id]


# --- JSON round trip -------------------------------------------------------


def _typeref_to_dict(t: TypeRef) -> dict[str, Any]:
    return {
        "raw_text": t.raw_text,
        "resolved_name": t.resolved_name,
        "is_array": t.is_array,
        "dimensions": t.dimensions,
    }


def _typeref_from_dict(d: Mapping[str, Any]) -> TypeRef:
    return TypeRef(d["raw_text"], d["resolved_name"], bool(d["is_array"]), int(d["dimensions"]))


def _sig_to_dict(s: MethodSignature) -> dict[str, Any]:
    return {
        "name": s.name,
        "return_type": _typeref_to_dict(s.return_type),
        "param_types": [_typeref_to_dict(p) for p in s.param_types],
        "visibility": s.visibility,
    }


def _sig_from_dict(d: Mapping[str, Any]) -> MethodSignature:
    return MethodSignature(
        d["name"],
        _typeref_from_dict(d["return_type"]),
        tuple(_typeref_from_dict(p) for p in d["param_types"]),
        d["visibility"],
    )


def _body_to_dict(b: MethodBody) -> dict[str, Any]:
    return {
        "signature": _sig_to_dict(b.signature),
        "text": b.text,
        "line_span": list(b.line_span),
        "param_names": list(b.param_names),
    }


def _body_from_dict(d: Mapping[str, Any]) -> MethodBody:
    start, end = d["line_span"]
    return MethodBody(_sig_from_dict(d["signature"]), d["text"], (int(start), int(end)), tuple(d["param_names"]))


def _interface_to_dict(i: InterfaceDecl) -> dict[str, Any]:
    return {
        "id": i.id,
        "qualified_name": i.qualified_name,
        "package_path": list(i.package_path),
        "signatures": [_sig_to_dict(s) for s in i.signatures],
        "extends": list(i.extends),
        "flags": {
            "is_marker": i.flags.is_marker,
            "is_test": i.flags.is_test,
            "is_library": i.flags.is_library,
        },
        "bodies": [_body_to_dict(b) for b in i.bodies],
        "source_path": i.source_path,
    }


def _interface_from_dict(d: Mapping[str, Any]) -> InterfaceDecl:
    return InterfaceDecl(
        id=d["id"],
        qualified_name=d["qualified_name"],
        package_path=tuple(d["package_path"]),
        signatures=tuple(_sig_from_dict(s) for s in d["signatures"]),
        extends=tuple(d["extends"]),
        flags=InterfaceFlags(**d["flags"]),
        bodies=tuple(_body_from_dict(b) for b in d["bodies"]),
        source_path=d["source_path"],
    )


def model_to_dict(model: CodeModel) -> dict[str, Any]:
    return {
        "schema_version": MODEL_SCHEMA_VERSION,
        "source_roots": list(model.source_roots),
        "interfaces": [_interface_to_dict(i) for i in model.interfaces.values()],
        "classes": [
            {
                "id": c.id,
                "qualified_name": c.qualified_name,
                "package_path": list(c.package_path),
                "implements": list(c.implements),
                "extends": c.extends,
                "bodies": [_body_to_dict(b) for b in c.bodies],
                "fields": [{"name": f.name, "type": _typeref_to_dict(f.type)} for f in c.fields],
                "is_test": c.is_test,
                "is_abstract": c.is_abstract,
                "source_path": c.source_path,
                "imports": list(c.imports),
            }
            for c in model.classes.values()
        ],
        "invocations": [
            {
                "client_class": s.client_class,
                "interface_id": s.interface_id,
                "receiver_declared_type": _typeref_to_dict(s.receiver_declared_type),
                "method_name": s.method_name,
                "arg_count": s.arg_count,
            }
            for s in model.invocations
        ],
        "warnings": list(model.warnings),
        "removed": dict(model.removed),
        "retired": [_interface_to_dict(i) for i in model.retired.values()],
    }


def model_from_dict(data: Mapping[str, Any]) -> CodeModel:
    version = data.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise ValueError(f"unsupported model schema_version: {version!r}")
    interfaces = {d["id"]: _interface_from_dict(d) for d in data["interfaces"]}
    classes = {}
    for d in data["classes"]:
        classes[d["id"]] = ClassDecl(
            id=d["id"],
            qualified_name=d["qualified_name"],
            package_path=tuple(d["package_path"]),
            implements=tuple(d["implements"]),
            extends=d["extends"],
            bodies=tuple(_body_from_dict(b) for b in d["bodies"]),
            fields=tuple(FieldDecl(f["name"], _typeref_from_dict(f["type"])) for f in d["fields"]),
            is_test=d["is_test"],
            is_abstract=d["is_abstract"],
            source_path=d["source_path"],
            imports=tuple(d["imports"]),
        )
    invocations = tuple(
        InvocationSite(
            s["client_class"],
            s["interface_id"],
            _typeref_from_dict(s["receiver_declared_type"]),
            s["method_name"],
            int(s["arg_count"]),
        )
        for s in data["invocations"]
    )
    return CodeModel(
        interfaces=interfaces,
        classes=classes,
        invocations=invocations,
        source_roots=tuple(data["source_roots"]),
        warnings=tuple(data.get("warnings", ())),
        removed=data.get("removed", {}),
        retired={d["id"]: _interface_from_dict(d) for d in data.get("retired", [])},
    )
