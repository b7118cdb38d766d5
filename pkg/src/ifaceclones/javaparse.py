"""Tolerant island parser for Java-like sources.

Only the constructs the analysis needs are recognised: the package clause,
imports, type declarations with their ``extends``/``implements`` clauses,
member headers (methods, constructors, fields) and brace-balanced bodies.
Everything else is skipped by brace and parenthesis matching, so unknown
syntax inside a body never derails the parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError

IDENT = "ident"
NUMBER = "number"
STRING = "string"
SYMBOL = "symbol"

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?(?:\*/|\Z))
  | (?P<text_block>\"\"\".*?(?:\"\"\"|\Z))
  | (?P<string>"(?:[^"\\\n]|\\.)*"?)
  | (?P<char>'(?:[^'\\\n]|\\.)*'?)
  | (?P<ident>[^\W\d]\w*)
  | (?P<number>\.?\d[\w.]*(?:[eEpP][+-]\d+)?)
  | (?P<symbol>\.\.\.|::|->|[^\s\w])
    """,
    re.VERBOSE | re.DOTALL,
)

MODIFIERS = frozenset(
    {
        "public", "protected", "private", "static", "abstract", "final", "native",
        "synchronized", "transient", "volatile", "strictfp", "default", "sealed",
    }
)
PRIMITIVES = frozenset({"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"})
_TYPE_KEYWORDS = frozenset({"class", "interface", "enum", "record"})
# Tokens allowed between the angle brackets of a type argument list.
_GENERIC_TOKENS = frozenset({".", ",", "?", "&", "[", "]", "extends", "super", "<", ">"})


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    line: int


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens, dropping whitespace and comments.

    String and character literals become single ``string`` tokens. Line
    numbers are 1-based.
    """
    tokens: list[Token] = []
    line = 1
    for m in _TOKEN_RE.finditer(source):
        kind = m.lastgroup
        text = m.group()
        if kind in ("ws", "line_comment", "block_comment"):
            line += text.count("\n")
            continue
        if kind in ("text_block", "string", "char"):
            tokens.append(Token(STRING, text, m.start(), m.end(), line))
            line += text.count("\n")
            continue
        tokens.append(Token(kind, text, m.start(), m.end(), line))
    return tokens


# --- raw declarations ------------------------------------------------------


@dataclass
class RawParam:
    type_tokens: list[str]
    name: str
    varargs: bool = False


@dataclass
class RawMethod:
    name: str
    modifiers: set[str]
    return_tokens: list[str] | None  # None for constructors
    params: list[RawParam]
    body_span: tuple[int, int] | None = None  # source offsets of the braces
    body_lines: tuple[int, int] | None = None
    type_params: list[str] = field(default_factory=list)


@dataclass
class RawField:
    type_tokens: list[str]
    names: list[str]


@dataclass
class RawType:
    kind: str  # class | interface | enum | record
    name: str
    qualified_name: str
    modifiers: set[str]
    type_params: list[str]
    extends: list[list[str]] = field(default_factory=list)
    implements: list[list[str]] = field(default_factory=list)
    methods: list[RawMethod] = field(default_factory=list)
    fields: list[RawField] = field(default_factory=list)
    line: int = 0


@dataclass
class RawUnit:
    package: tuple[str, ...] = ()
    imports: list[str] = field(default_factory=list)
    types: list[RawType] = field(default_factory=list)


class _Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.toks = tokenize(source)
        self.pos = 0

    # token helpers

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def text(self, offset: int = 0) -> str:
        tok = self.peek(offset)
        return tok.text if tok is not None else ""

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind != IDENT:
            raise ParseError(f"expected identifier, got {self.text()!r}", tok.line if tok else None)
        self.pos += 1
        return tok.text

    def skip_balanced(self, open_: str, close: str) -> int:
        """Skip from an opening token to its match; return index of the closing token."""
        depth = 0
        start_line = self.peek().line if self.peek() else None
        while not self.at_end():
            t = self.advance().text
            if t == open_:
                depth += 1
            elif t == close:
                depth -= 1
                if depth == 0:
                    return self.pos - 1
        raise ParseError(f"unbalanced {open_!r}", start_line)

    def generic_end(self, i: int) -> int | None:
        """Index after the ``>`` closing a type-argument list opened at ``i``."""
        depth = 0
        j = i
        while j < len(self.toks):
            tok = self.toks[j]
            if tok.text == "<":
                depth += 1
            elif tok.text == ">":
                depth -= 1
                if depth == 0:
                    return j + 1
            elif tok.kind != IDENT and tok.text not in _GENERIC_TOKENS and tok.text != "@":
                return None
            j += 1
        return None

    def skip_annotation(self) -> None:
        self.advance()  # '@'
        if self.text() == "interface":
            return
        self.expect_ident()
        while self.text() == "." and self.peek(1) and self.peek(1).kind == IDENT:
            self.pos += 2
        if self.text() == "(":
            self.skip_balanced("(", ")")

    def read_type(self) -> list[str]:
        """Read a type expression and return its tokens (annotations dropped)."""
        out: list[str] = []
        while self.text() == "@" and self.text(1) != "interface":
            self.skip_annotation()
        if self.text() in ("final",):
            self.advance()
        tok = self.peek()
        if tok is None or tok.kind != IDENT:
            raise ParseError(f"expected type, got {self.text()!r}", tok.line if tok else None)
        out.append(self.advance().text)
        while True:
            if self.text() == "<":
                end = self.generic_end(self.pos)
                if end is None:
                    raise ParseError("malformed type arguments", self.peek().line)
                out.extend(t.text for t in self.toks[self.pos:end])
                self.pos = end
            elif self.text() == "." and self.peek(1) is not None and self.peek(1).kind == IDENT:
                out.append(".")
                self.advance()
                out.append(self.advance().text)
            elif self.text() == "@":
                self.skip_annotation()
            else:
                break
        while self.text() == "[" and self.text(1) == "]":
            out.extend(["[", "]"])
            self.pos += 2
        return out

    # structure

    def parse_unit(self) -> RawUnit:
        unit = RawUnit()
        while not self.at_end():
            t = self.text()
            if t == "package":
                self.advance()
                parts = [self.expect_ident()]
                while self.text() == ".":
                    self.advance()
                    parts.append(self.expect_ident())
                unit.package = tuple(parts)
                self.skip_to(";")
            elif t == "import":
                self.advance()
                parts = []
                static = False
                if self.text() == "static":
                    static = True
                    self.advance()
                while not self.at_end() and self.text() != ";":
                    parts.append(self.advance().text)
                self.skip_to(";")
                name = "".join(parts)
                unit.imports.append(("static " if static else "") + name)
            elif t == ";":
                self.advance()
            else:
                rt = self.parse_type_decl(unit.package, prefix=None)
                if rt is None:
                    # Stray token at top level; tolerate and move on.
                    self.advance()
                else:
                    self._collect(rt, unit)
        return unit

    def _collect(self, rt: RawTypeTree, unit: RawUnit) -> None:
        if rt.decl is not None:
            unit.types.append(rt.decl)
        for nested in rt.nested:
            self._collect(nested, unit)

    def skip_to(self, sym: str) -> None:
        while not self.at_end():
            t = self.advance().text
            if t == sym:
                return

    def read_modifiers(self) -> set[str]:
        mods: set[str] = set()
        while not self.at_end():
            t = self.text()
            if t == "@" and self.text(1) != "interface":
                self.skip_annotation()
            elif t in MODIFIERS and not (t == "default" and self.text(1) == ":"):
                mods.add(t)
                self.advance()
            elif t == "non" and self.text(1) == "-" and self.text(2) == "sealed":
                self.pos += 3
            else:
                break
        return mods

    def parse_type_decl(self, package: tuple[str, ...], prefix: str | None) -> RawTypeTree | None:
        start = self.pos
        mods = self.read_modifiers()
        kind = self.text()
        if kind == "@" and self.text(1) == "interface":
            # Annotation type: not an interface for this analysis.
            self.pos += 2
            self.expect_ident()
            self.skip_to_open_brace()
            self.skip_balanced("{", "}")
            return RawTypeTree(None)
        if kind not in _TYPE_KEYWORDS or (kind == "record" and self.peek(1) and self.peek(1).kind != IDENT):
            self.pos = start
            return None
        line = self.advance().line
        name = self.expect_ident()
        owner = prefix if prefix is not None else ".".join(package)
        qualified = f"{owner}.{name}" if owner else name
        type_params: list[str] = []
        if self.text() == "<":
            end = self.generic_end(self.pos)
            if end is None:
                raise ParseError("malformed type parameters", line)
            type_params = _type_param_names([t.text for t in self.toks[self.pos + 1:end - 1]])
            self.pos = end
        if kind == "record" and self.text() == "(":
            self.skip_balanced("(", ")")
        decl = RawType(kind, name, qualified, mods, type_params, line=line)
        while not self.at_end() and self.text() != "{":
            t = self.text()
            if t in ("extends", "implements"):
                self.advance()
                target = decl.extends if t == "extends" else decl.implements
                target.append(self.read_type())
                while self.text() == ",":
                    self.advance()
                    target.append(self.read_type())
            elif t == "permits":
                self.advance()
                while not self.at_end() and self.text() != "{":
                    self.advance()
            else:
                raise ParseError(f"unexpected {t!r} in type header", self.peek().line)
        if self.at_end():
            raise ParseError("missing type body", line)
        tree = RawTypeTree(decl)
        self.parse_body(tree)
        return tree

    def skip_to_open_brace(self) -> None:
        while not self.at_end() and self.text() != "{":
            self.advance()

    def parse_body(self, tree: RawTypeTree) -> None:
        decl = tree.decl
        self.advance()  # '{'
        if decl.kind == "enum":
            self.skip_enum_constants()
        while not self.at_end():
            t = self.text()
            if t == "}":
                self.advance()
                return
            if t == ";":
                self.advance()
                continue
            if t == "{":
                self.skip_balanced("{", "}")  # initializer block
                continue
            if t == "static" and self.text(1) == "{":
                self.advance()
                self.skip_balanced("{", "}")
                continue
            nested = self.parse_type_decl((), prefix=decl.qualified_name)
            if nested is not None:
                if nested.decl is not None:
                    tree.nested.append(nested)
                continue
            self.parse_member(decl)
        raise ParseError(f"unterminated body of {decl.name}", decl.line)

    def skip_enum_constants(self) -> None:
        while not self.at_end():
            t = self.text()
            if t == ";":
                self.advance()
                return
            if t == "}":
                return
            if t == "(":
                self.skip_balanced("(", ")")
            elif t == "{":
                self.skip_balanced("{", "}")
            else:
                self.advance()

    def parse_member(self, decl: RawType) -> None:
        start = self.pos
        mods = self.read_modifiers()
        method_tparams: list[str] = []
        if self.text() == "<":
            end = self.generic_end(self.pos)
            if end is None:
                raise ParseError("malformed method type parameters", self.peek().line)
            method_tparams = _type_param_names([t.text for t in self.toks[self.pos + 1:end - 1]])
            self.pos = end
        tok = self.peek()
        if tok is None:
            return
        # Constructor: Name '('
        if tok.kind == IDENT and tok.text == decl.name and self.text(1) == "(":
            self.advance()
            params = self.read_params()
            method = RawMethod("<init>", mods, None, params, type_params=method_tparams)
            self.finish_method(method, decl)
            return
        # Compact record constructor: Name '{'
        if decl.kind == "record" and tok.kind == IDENT and tok.text == decl.name and self.text(1) == "{":
            self.advance()
            self.skip_balanced("{", "}")
            return
        try:
            type_tokens = self.read_type()
        except ParseError:
            self.recover(start)
            return
        name_tok = self.peek()
        if name_tok is None or name_tok.kind != IDENT:
            self.recover(start)
            return
        self.advance()
        if self.text() == "(":
            params = self.read_params()
            while self.text() == "[" and self.text(1) == "]":  # legacy `int f()[]`
                type_tokens += ["[", "]"]
                self.pos += 2
            method = RawMethod(name_tok.text, mods, type_tokens, params, type_params=method_tparams)
            self.finish_method(method, decl)
            return
        # Field declaration: Type a [= ...] (, b [= ...])* ;
        names = [name_tok.text]
        while not self.at_end():
            t = self.text()
            if t == ";":
                self.advance()
                break
            if t == ",":
                self.advance()
                if self.peek() is not None and self.peek().kind == IDENT:
                    names.append(self.advance().text)
                continue
            if t in ("(", "{", "["):
                self.skip_balanced(t, {"(": ")", "{": "}", "[": "]"}[t])
                continue
            if t == "}":
                break
            self.advance()
        decl.fields.append(RawField(type_tokens, names))

    def recover(self, start: int) -> None:
        """Skip an unrecognised member up to the next ';' or balanced block."""
        self.pos = max(self.pos, start + 1) if self.pos == start else self.pos
        while not self.at_end():
            t = self.text()
            if t == ";":
                self.advance()
                return
            if t == "{":
                self.skip_balanced("{", "}")
                return
            if t == "}":
                return
            if t == "(":
                self.skip_balanced("(", ")")
                continue
            self.advance()

    def read_params(self) -> list[RawParam]:
        close = self.match_index("(", ")")
        params: list[RawParam] = []
        self.advance()  # '('
        while self.pos < close:
            self.read_modifiers()
            if self.pos >= close:
                break
            type_tokens = self.read_type()
            varargs = False
            if self.text() == "...":
                varargs = True
                self.advance()
            if self.text() == "this":  # receiver parameter
                self.advance()
                if self.text() == ",":
                    self.advance()
                continue
            name = self.expect_ident()
            while self.text() == "[" and self.text(1) == "]":
                type_tokens = type_tokens + ["[", "]"]
                self.pos += 2
            params.append(RawParam(type_tokens, name, varargs))
            if self.text() == ",":
                self.advance()
            elif self.pos != close:
                raise ParseError(f"unexpected {self.text()!r} in parameter list", self.peek().line)
        self.pos = close + 1
        return params

    def match_index(self, open_: str, close: str) -> int:
        saved = self.pos
        end = self.skip_balanced(open_, close)
        self.pos = saved
        return end

    def finish_method(self, method: RawMethod, decl: RawType) -> None:
        if self.text() == "throws":
            self.advance()
            while not self.at_end() and self.text() not in ("{", ";"):
                self.advance()
        if self.text() == "default":  # annotation member default value
            while not self.at_end() and self.text() != ";":
                self.advance()
        if self.text() == "{":
            open_tok = self.peek()
            close_idx = self.skip_balanced("{", "}")
            close_tok = self.toks[close_idx]
            method.body_span = (open_tok.start, close_tok.start)
            method.body_lines = (open_tok.line, close_tok.line)
        elif self.text() == ";":
            self.advance()
        else:
            raise ParseError(f"unexpected {self.text()!r} after method header", self.peek().line if self.peek() else None)
        decl.methods.append(method)


@dataclass
class RawTypeTree:
    decl: RawType | None
    nested: list[RawTypeTree] = field(default_factory=list)


def _type_param_names(tokens: list[str]) -> list[str]:
    names = []
    depth = 0
    expect_name = True
    for t in tokens:
        if t == "<":
            depth += 1
        elif t == ">":
            depth -= 1
        elif depth == 0 and t == ",":
            expect_name = True
        elif depth == 0 and expect_name and t != "@":
            names.append(t)
            expect_name = False
    return names


def parse_java(source: str) -> RawUnit:
    """Parse one compilation unit; raises ``ParseError`` on unrecoverable input."""
    return _Parser(source).parse_unit()
