"""Line-based, language-independent code clone detection.

Units are compared line by line after trimming whitespace and dropping blank
lines. An exact chunk is a maximal run of equal lines along one diagonal of
the line-match matrix, at least ``min_chunk_size`` long. Chunk ``c2`` may
follow chunk ``c1`` when it starts after ``c1`` ends on both sides and the
skipped lines on each side number at most ``max_line_bias``.

Every chunk anchors at most one clone pair: the chain of successors starting
at it with the most matched lines. The anchor is reported when that total
reaches ``min_clone_length``. A chunk that already sits inside an earlier
chain still anchors its own (overlaps are kept), which keeps the clone count
monotone in both thresholds.

Ties between successors are broken by the smaller largest gap, then the
smaller gap sum, then the smaller start position. To make the result
independent of argument order, a pair of units is always evaluated in a
canonical orientation and mirrored back when needed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .clones import DuplicateGroup
from .errors import ConfigError
from .model import CodeModel, MethodBody, MethodSignature


@dataclass(frozen=True, slots=True)
class CloneParams:
    min_clone_length: int = 6
    max_line_bias: int = 2
    min_chunk_size: int = 3

    def __post_init__(self) -> None:
        if self.min_clone_length < 1 or self.min_chunk_size < 1:
            raise ConfigError("clone length and chunk size must be at least 1")
        if self.max_line_bias < 0:
            raise ConfigError("max line bias must be non-negative")
        if self.min_chunk_size > self.min_clone_length:
            raise ConfigError("min chunk size cannot exceed min clone length")


_COMMENT_PREFIXES = ("//", "/*", "*/", "* ")


def normalize_lines(text: str, strip_comments: bool = False) -> tuple[list[str], list[int]]:
    """Trim every line and drop empty ones.

    Returns the kept lines and, for each, its 0-based index in ``text``.
    """
    lines: list[str] = []
    index_map: list[int] = []
    for i, line in enumerate(text.splitlines()):
        stripped = line.strip()
        if not stripped:
            continue
        if strip_comments and (stripped.startswith(_COMMENT_PREFIXES) or stripped == "*"):
            continue
        lines.append(stripped)
        index_map.append(i)
    return lines, index_map


@dataclass(frozen=True, slots=True)
class NormalizedUnit:
    ref: str
    lines: tuple[str, ...]
    line_map: tuple[int, ...]  # original (1-based) source line of each kept line

    @classmethod
    def from_text(cls, ref: str, text: str, first_line: int = 1, strip_comments: bool = False) -> NormalizedUnit:
        lines, index_map = normalize_lines(text, strip_comments)
        return cls(ref, tuple(lines), tuple(first_line + i for i in index_map))

    @classmethod
    def of_lines(cls, ref: str, lines: Sequence[str]) -> NormalizedUnit:
        return cls(ref, tuple(lines), tuple(range(1, len(lines) + 1)))

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True, slots=True, order=True)
class Chunk:
    a_start: int
    b_start: int
    length: int

    @property
    def a_end(self) -> int:
        return self.a_start + self.length - 1

    @property
    def b_end(self) -> int:
        return self.b_start + self.length - 1

    def mirrored(self) -> Chunk:
        return Chunk(self.b_start, self.a_start, self.length)


@dataclass(frozen=True, slots=True)
class Fragment:
    ref: str
    start_line: int
    end_line: int


@dataclass(frozen=True, slots=True)
class ClonePair:
    fragment_a: Fragment
    fragment_b: Fragment
    matched_lines: int
    chunks: tuple[Chunk, ...]  # indices into the normalized units

    def mirrored(self) -> ClonePair:
        return ClonePair(self.fragment_b, self.fragment_a, self.matched_lines, tuple(c.mirrored() for c in self.chunks))


def find_chunks(a: Sequence[str], b: Sequence[str], min_chunk: int, include_diagonal: bool = True) -> list[Chunk]:
    """Maximal diagonal runs of equal lines with length >= ``min_chunk``."""
    positions: dict[str, list[int]] = defaultdict(list)
    for j, line in enumerate(b):
        positions[line].append(j)
    chunks = []
    for i, line in enumerate(a):
        for j in positions.get(line, ()):
            if i > 0 and j > 0 and a[i - 1] == b[j - 1]:
                continue  # not the start of a run
            k = 1
            while i + k < len(a) and j + k < len(b) and a[i + k] == b[j + k]:
                k += 1
            if k >= min_chunk and (include_diagonal or i != j):
                chunks.append(Chunk(i, j, k))
    chunks.sort()
    return chunks


def _chain(chunks: list[Chunk], params: CloneParams) -> list[tuple[Chunk, ...]]:
    by_start = {(c.a_start, c.b_start): c for c in chunks}
    bias = params.max_line_bias
    best: dict[Chunk, int] = {}
    nxt: dict[Chunk, Chunk | None] = {}
    for c in sorted(chunks, key=lambda c: (-c.a_start, -c.b_start)):
        choice = None
        choice_key = None
        for ga, gb in product(range(bias + 1), repeat=2):
            s = by_start.get((c.a_end + 1 + ga, c.b_end + 1 + gb))
            if s is None:
                continue
            key = (-best[s], max(ga, gb), ga + gb, s.a_start, s.b_start)
            if choice_key is None or key < choice_key:
                choice, choice_key = s, key
        nxt[c] = choice
        best[c] = c.length + (best[choice] if choice is not None else 0)
    chains = []
    for c in chunks:
        if best[c] < params.min_clone_length:
            continue
        chain = [c]
        while nxt[chain[-1]] is not None:
            chain.append(nxt[chain[-1]])
        chains.append(tuple(chain))
    return chains


def _detect(a: NormalizedUnit, b: NormalizedUnit, params: CloneParams) -> list[ClonePair]:
    chunks = find_chunks(a.lines, b.lines, params.min_chunk_size)
    pairs = []
    for chain in _chain(chunks, params):
        first, last = chain[0], chain[-1]
        pairs.append(
            ClonePair(
                Fragment(a.ref, a.line_map[first.a_start], a.line_map[last.a_end]),
                Fragment(b.ref, b.line_map[first.b_start], b.line_map[last.b_end]),
                sum(c.length for c in chain),
                chain,
            )
        )
    return pairs


def detect_clones(
    a: NormalizedUnit, b: NormalizedUnit, params: CloneParams | None = None, allow_self: bool = False
) -> list[ClonePair]:
    """All clone pairs between two units, ordered by start positions in ``a`` then ``b``.

    Comparing a unit with itself (same ``ref``) yields nothing unless
    ``allow_self`` is set, in which case the full-length self match is included.
    """
    params = params or CloneParams()
    if a.ref == b.ref and not allow_self:
        return []
    if (a.lines, a.ref) <= (b.lines, b.ref):
        pairs = _detect(a, b, params)
    else:
        pairs = [p.mirrored() for p in _detect(b, a, params)]
    pairs.sort(key=lambda p: (p.chunks[0].a_start, p.chunks[0].b_start))
    return pairs


def covered_source_lines(pair: ClonePair, a: NormalizedUnit, b: NormalizedUnit) -> tuple[set[int], set[int]]:
    """Original line numbers of the matched (chunk) lines on each side."""
    side_a = {a.line_map[c.a_start + k] for c in pair.chunks for k in range(c.length)}
    side_b = {b.line_map[c.b_start + k] for c in pair.chunks for k in range(c.length)}
    return side_a, side_b


# --- association with interface duplicate groups ---------------------------


@dataclass(frozen=True)
class AssociationRecord:
    group: DuplicateGroup
    interface_pair: tuple[str, str]
    cc_count: int
    copied_lc: int
    covered_lc: int = 0
    clone_pairs: tuple[ClonePair, ...] = field(default=(), repr=False)


@dataclass(frozen=True, slots=True)
class BodyRef:
    owner: str
    body: MethodBody

    @property
    def ref(self) -> str:
        return f"{self.owner}#{self.body.signature.params_key}@{self.body.line_span[0]}"


def _match_body(bodies: Iterable[MethodBody], sig: MethodSignature) -> MethodBody | None:
    bodies = [b for b in bodies if b.signature.name == sig.name]
    for b in bodies:
        if b.signature.params_key == sig.params_key:
            return b
    # Generic parameters rarely resolve identically; fall back to a unique arity match.
    same_arity = [b for b in bodies if b.signature.arity == sig.arity]
    return same_arity[0] if len(same_arity) == 1 else None


def implementing_bodies(model: CodeModel, interface_id: str, sig: MethodSignature) -> list[BodyRef]:
    """Bodies implementing ``sig`` in the implementation closure of ``interface_id``."""
    found: dict[str, BodyRef] = {}
    for class_id in sorted(model.implementation_closure(interface_id)):
        for decl in model.superclass_chain(class_id):
            body = _match_body(decl.bodies, sig)
            if body is not None:
                ref = BodyRef(decl.id, body)
                found.setdefault(ref.ref, ref)
                break
    for iid in sorted(model.sub_interfaces(interface_id)):
        decl = model.interfaces.get(iid) or model.retired.get(iid)
        if decl is None:
            continue
        body = _match_body(decl.bodies, sig)
        if body is not None:
            ref = BodyRef(iid, body)
            found.setdefault(ref.ref, ref)
    return [found[k] for k in sorted(found)]


class _UnitCache:
    def __init__(self, params: CloneParams, strip_comments: bool) -> None:
        self.params = params
        self.strip_comments = strip_comments
        self.units: dict[str, NormalizedUnit] = {}
        self.results: dict[tuple[str, str], list[ClonePair]] = {}

    def unit(self, ref: BodyRef) -> NormalizedUnit:
        key = ref.ref
        if key not in self.units:
            self.units[key] = NormalizedUnit.from_text(
                key, ref.body.text, ref.body.line_span[0], self.strip_comments
            )
        return self.units[key]

    def clones(self, x: BodyRef, y: BodyRef) -> list[ClonePair]:
        key = (x.ref, y.ref)
        if key not in self.results:
            self.results[key] = detect_clones(self.unit(x), self.unit(y), self.params)
        return self.results[key]


def _aggregate(
    group: DuplicateGroup,
    pair: tuple[str, str],
    side_a: list[BodyRef],
    side_b: list[BodyRef],
    cache: _UnitCache,
    intra: bool,
) -> AssociationRecord:
    found: list[ClonePair] = []
    covered: set[tuple[str, int]] = set()
    for x_index, x in enumerate(side_a):
        candidates = side_a[x_index + 1:] if intra else side_b
        for y in candidates:
            if x.ref == y.ref:
                continue
            for cp in cache.clones(x, y):
                found.append(cp)
                lines_a, lines_b = covered_source_lines(cp, cache.unit(x), cache.unit(y))
                covered.update((x.ref, n) for n in lines_a)
                covered.update((y.ref, n) for n in lines_b)
    return AssociationRecord(
        group=group,
        interface_pair=pair,
        cc_count=len(found),
        copied_lc=sum(cp.matched_lines for cp in found),
        covered_lc=len(covered),
        clone_pairs=tuple(found),
    )


def associate_clones(
    model: CodeModel,
    groups: Sequence[DuplicateGroup],
    params: CloneParams | None = None,
    include_intra: bool = False,
    strip_comments: bool = False,
) -> list[AssociationRecord]:
    """Attribute code clones between implementations to interface clone pairs.

    For every duplicate group and every pair of its interfaces, the bodies
    implementing the shared signature under one interface are compared with
    those under the other. ``copied_lc`` sums one side's matched lines per
    clone pair; ``covered_lc`` counts distinct matched source lines over both
    sides.
    """
    params = params or CloneParams()
    cache = _UnitCache(params, strip_comments)
    records = []
    for group in groups:
        sides = {iid: implementing_bodies(model, iid, group.signature) for iid in group.declaring_interfaces}
        for i, j in group.pairs():
            records.append(_aggregate(group, (i, j), sides[i], sides[j], cache, intra=False))
        if include_intra:
            for iid in group.declaring_interfaces:
                records.append(_aggregate(group, (iid, iid), sides[iid], sides[iid], cache, intra=True))
    return records


def clones_per_interface(records: Iterable[AssociationRecord]) -> dict[str, int]:
    """Associated clone pairs per interface, summed over every record naming it."""
    totals: dict[str, int] = defaultdict(int)
    for rec in records:
        i, j = rec.interface_pair
        totals[i] += rec.cc_count
        if j != i:
            totals[j] += rec.cc_count
    return dict(totals)
