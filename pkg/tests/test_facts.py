from __future__ import annotations

import json

import pytest

from ifaceclones.config import AnalysisConfig
from ifaceclones.errors import NoSourceFound, SourceIOError
from ifaceclones.facts import extract_invocations, filter_model, is_test_class, parse_source_tree
from ifaceclones.javaparse import parse_java
from ifaceclones.model import model_from_dict, model_to_dict
from ifaceclones.resolve import ImportTable, resolve_type


def test_empty_directory_gives_empty_model(tmp_path):
    model = parse_source_tree([tmp_path])
    assert len(model.interfaces) == 0 and len(model.classes) == 0


def test_empty_directory_strict_raises(tmp_path):
    with pytest.raises(NoSourceFound):
        parse_source_tree([tmp_path], allow_empty=False)


def test_missing_root(tmp_path):
    with pytest.raises(SourceIOError):
        parse_source_tree([tmp_path / "nope"])


def test_single_interface_size(java_tree):
    model = java_tree({"A.java": "interface A { void foo(); int bar(int x); }"})
    (decl,) = model.interfaces.values()
    assert decl.size == 2
    assert [s.key for s in decl.signatures] == ["void foo()", "int bar(int)"]


def test_marker_flag(java_tree):
    model = java_tree({"M.java": "interface M {}"})
    (decl,) = model.interfaces.values()
    assert decl.flags.is_marker and decl.size == 0


def test_private_and_default_methods(java_tree):
    model = java_tree({
        "p/A.java": """
            package p;
            public interface A {
                int CONST = 3;
                default int twice(int x) { return helper(x) * 2; }
                private int helper(int x) { return x; }
                static A make() { return null; }
                abstract void run();
            }
        """
    })
    decl = model.interfaces["p.A"]
    assert sorted(s.key for s in decl.public_signatures) == ["int twice(int)", "p.A make()", "void run()"]
    assert decl.size == 3
    assert any(b.signature.name == "twice" for b in decl.bodies)


def test_generics_annotations_and_nested_types(java_tree):
    model = java_tree({
        "q/Outer.java": """
            package q;
            import java.util.List;
            import java.util.Map;
            /** doc with interface Fake { void no(); } inside */
            public class Outer {
                @Deprecated
                public interface Inner<T extends Comparable<T>> {
                    @SuppressWarnings("x") <R> Map<String, List<R>> convert(T in, R... extra) throws Exception;
                    String s = "interface Nope { void bad(); }";
                }
                enum E { ONE, TWO; int f() { return 1; } }
                @interface Ann { int value(); }
            }
        """
    })
    assert list(model.interfaces) == ["q.Outer.Inner"]
    (sig,) = model.interfaces["q.Outer.Inner"].signatures
    assert sig.return_type.resolved_name == "java.util.Map<String,List<R>>"
    assert [p.key for p in sig.param_types] == ["T", "R[]"]


def test_parse_error_becomes_warning(java_tree):
    model = java_tree({"Bad.java": "interface B { void x( ", "Good.java": "interface G { void y(); }"})
    assert "G" in model.interfaces
    assert model.warnings and "Bad.java" in model.warnings[0]


@pytest.mark.parametrize(
    "raw, imports, expected, is_array",
    [
        ("List<String>", ["java.util.List"], "java.util.List<String>", False),
        ("int", [], "int", False),
        ("String...", [], "java.lang.String", True),
        ("Foo", [], "Foo", False),
    ],
)
def test_resolve_type(raw, imports, expected, is_array):
    from ifaceclones.javaparse import tokenize

    tokens = [t.text for t in tokenize(raw)]
    ref = resolve_type(tokens, ImportTable.from_imports(imports))
    assert ref.resolved_name == expected
    assert ref.is_array is is_array


def test_same_package_resolution(java_tree):
    model = java_tree({
        "a/Foo.java": "package a; public class Foo {}",
        "a/I.java": "package a; public interface I { Foo get(); }",
        "b/J.java": "package b; import a.Foo; public interface J { Foo get(); }",
        "c/K.java": "package c; import a.*; public interface K { a.Foo get(); }",
    })
    keys = {iid: model.interfaces[iid].signatures[0].key for iid in model.interfaces}
    assert set(keys.values()) == {"a.Foo get()"}


def test_invocation_through_field(java_tree):
    model = java_tree({
        "A.java": "interface A { void foo(); void bar(int x); }",
        "C.java": "class C { A a; void go() { a.foo(); a.bar(1 + f(2, 3)); } int f(int x, int y) { return x; } }",
    })
    sites = {(s.client_class, s.interface_id, s.method_name, s.arg_count) for s in model.invocations}
    assert sites == {("C", "A", "foo", 0), ("C", "A", "bar", 1)}
    direct = extract_invocations(model.classes["C"], model)
    assert {(s.method_name, s.arg_count) for s in direct} == {("foo", 0), ("bar", 1)}


def test_no_interface_receivers(java_tree):
    model = java_tree({"C.java": "class C { String s; void go() { s.length(); } }"})
    assert extract_invocations(model.classes["C"], model) == []


def test_implementer_is_not_a_client(java_tree):
    from ifaceclones.metrics import clients

    model = java_tree({
        "A.java": "interface A { void foo(); }",
        "Impl.java": "class Impl implements A { public void foo() {} void go() { this.foo(); } }",
        "Sub.java": "class Sub extends Impl { A other; void run() { other.foo(); } }",
    })
    assert not [s for s in model.invocations if s.client_class == "Impl"]
    assert clients(model, "A") == {}


def test_locals_params_and_lambdas(java_tree):
    model = java_tree({
        "A.java": "interface A { int size(); A next(); }",
        "C.java": """
            import java.util.function.Function;
            class C {
                int walk(A start) {
                    A cur = start.next();
                    for (A x : list()) { x.size(); }
                    Function<A, Integer> f = a -> a.size();
                    return cur.size();
                }
                java.util.List<A> list() { return null; }
            }
        """,
    })
    used = {(s.method_name, s.arg_count) for s in model.invocations if s.client_class == "C"}
    assert used == {("next", 0), ("size", 0)}


def test_is_test_class():
    assert is_test_class("FooTest", ())
    assert is_test_class("TestFoo", ())
    assert is_test_class("Foo", ("com", "x", "tests"))
    assert not is_test_class("Contest", ())


def test_filter_reasons(java_tree):
    model = java_tree({
        "com/x/tests/api/T.java": "package com.x.tests.api; public interface T { void a(); }",
        "com/x/M.java": "package com.x; public interface M {}",
        "com/x/Only.java": "package com.x; public interface Only { void b(); }",
        "com/x/OnlyTest.java": "package com.x; public class OnlyTest implements Only { public void b() {} }",
        "com/x/Keep.java": "package com.x; public interface Keep { void c(); }",
    })
    filtered = filter_model(model)
    assert dict(filtered.removed) == {"com.x.tests.api.T": "test", "com.x.M": "marker", "com.x.Only": "test"}
    assert list(filtered.interfaces) == ["com.x.Keep"]
    kept = filter_model(model, AnalysisConfig(source_roots=(".",), exclude_tests=False))
    assert set(kept.interfaces) == {"com.x.tests.api.T", "com.x.Only", "com.x.Keep"}


def test_filter_is_idempotent(corpus_root):
    model = parse_source_tree([corpus_root])
    once = filter_model(model)
    assert filter_model(once) == once


def test_library_roots(tmp_path, java_tree):
    lib = tmp_path / "lib"
    (lib / "l").mkdir(parents=True)
    (lib / "l" / "Base.java").write_text("package l; public interface Base { void x(); }")
    config = AnalysisConfig(source_roots=(tmp_path / "src",), library_roots=(lib,))
    model = java_tree({"app/I.java": "package app; import l.Base; public interface I extends Base { void x(); }"}, config=config)
    filtered = filter_model(model, config)
    assert list(filtered.interfaces) == ["app.I"]
    assert filtered.removed["l.Base"] == "library"
    assert model.ancestors("app.I") == {"l.Base"}
    assert filtered.ancestors("app.I") == set()


def test_model_round_trip(corpus_root):
    model = filter_model(parse_source_tree([corpus_root]))
    data = model_to_dict(model)
    assert data["schema_version"] == 1
    again = model_from_dict(json.loads(json.dumps(data)))
    assert again == model
    assert model_to_dict(again) == data


def test_raw_parser_records_body_lines():
    unit = parse_java("class K {\n  int f() {\n    return 1;\n  }\n}\n")
    (method,) = unit.types[0].methods
    assert method.body_lines == (2, 4)
