"""Refactoring suggestions for interface clones.

Suggestions are advisory text only; no source is rewritten. Three rules are
applied to a filtered model:

* ``remove_duplicate_interface``: a duplicate interface whose signatures are
  all declared by another interface can go, once its implementers and
  dependents are moved to that other interface.
* ``extract_super_interface``: three or more interfaces sharing two or more
  signatures should inherit them from one place, either an existing member
  declaring exactly the shared set or a new (placeholder-named) interface.
* ``extend_instead_of_redeclare``: a sub-interface re-declaring signatures it
  already inherits should drop the copies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .clones import duplicate_interfaces, interface_keys
from .metrics import clients
from .model import CodeModel

logger = logging.getLogger(__name__)

REMOVE_DUPLICATE = "remove_duplicate_interface"
EXTRACT_SUPER = "extract_super_interface"
EXTEND_INSTEAD = "extend_instead_of_redeclare"
_KIND_ORDER = {REMOVE_DUPLICATE: 0, EXTRACT_SUPER: 1, EXTEND_INSTEAD: 2}

# Upper bound on candidate shared-signature sets explored by the group rule.
MAX_CONCEPTS = 5000


@dataclass(frozen=True)
class RefactoringSuggestion:
    kind: str
    subjects: tuple[str, ...]
    affected_classes: tuple[str, ...]
    narrative: tuple[str, ...]
    removed_declarations: int
    shared_keys: tuple[str, ...] = ()
    target: str | None = None
    placeholder_names: bool = False


def _short(model: CodeModel, iid: str) -> str:
    decl = model.interfaces.get(iid)
    return decl.qualified_name if decl is not None else iid


def _dependents(model: CodeModel, iid: str) -> tuple[list[str], list[str], list[str]]:
    implementers = sorted(c.id for c in model.classes.values() if iid in c.implements)
    subs = sorted(d.id for d in model.interfaces.values() if iid in d.extends)
    users = sorted(clients(model, iid))
    return implementers, subs, users


def _rank(model: CodeModel, keys: dict[str, frozenset[str]], iid: str) -> tuple[int, int, str]:
    implementers, subs, users = _dependents(model, iid)
    # Larger, more depended-upon interfaces survive; the id breaks ties.
    return (len(keys[iid]), len(implementers) + len(subs) + len(users), iid)


def _removal_targets(model: CodeModel, keys: dict[str, frozenset[str]]) -> dict[str, str]:
    targets: dict[str, str] = {}
    ranks = {iid: _rank(model, keys, iid) for iid in keys}
    for a in sorted(duplicate_interfaces(model)):
        implementers, subs, _ = _dependents(model, a)
        # A strict superset would force implementers to grow; only clients can retarget to one.
        superset_ok = not implementers and not subs
        candidates = [
            b
            for b in keys
            if b != a
            and keys[a] <= keys[b]
            and (ranks[b] > ranks[a] if keys[a] == keys[b] else superset_ok)
        ]
        if candidates:
            # Closest superset first, then the strongest survivor.
            targets[a] = min(candidates, key=lambda b: (len(keys[b]), -ranks[b][1], b))
    resolved = {}
    for a, b in targets.items():
        seen = {a}
        while b in targets and b not in seen:
            seen.add(b)
            b = targets[b]
        resolved[a] = b
    return resolved


def _remove_duplicates(model: CodeModel, keys: dict[str, frozenset[str]]) -> list[RefactoringSuggestion]:
    out = []
    for a, b in sorted(_removal_targets(model, keys).items()):
        implementers, subs, users = _dependents(model, a)
        name_a, name_b = _short(model, a), _short(model, b)
        steps = [f"Make class {c} implement {name_b} instead of {name_a}." for c in implementers]
        steps += [f"Make interface {_short(model, s)} extend {name_b} instead of {name_a}." for s in subs]
        if users:
            steps.append(f"Retype references to {name_a} as {name_b} in: {', '.join(users)}.")
        steps.append(f"Remove interface {name_a}; every method it declares is also declared by {name_b}.")
        out.append(
            RefactoringSuggestion(
                kind=REMOVE_DUPLICATE,
                subjects=(a, b),
                affected_classes=tuple(sorted(set(implementers) | set(users))),
                narrative=tuple(steps),
                removed_declarations=len(keys[a]),
                shared_keys=tuple(sorted(keys[a])),
                target=b,
            )
        )
    return out


def _shared_sets(dup_keys: dict[str, frozenset[str]]) -> set[frozenset[str]]:
    concepts: set[frozenset[str]] = set()
    for iid in sorted(dup_keys):
        ks = dup_keys[iid]
        if len(ks) < 2:
            continue
        new = {ks}
        for existing in concepts:
            common = existing & ks
            if len(common) >= 2:
                new.add(common)
        concepts |= new
        if len(concepts) > MAX_CONCEPTS:
            logger.warning("shared-signature search truncated after %d candidate sets", MAX_CONCEPTS)
            break
    return concepts


def _groups(model: CodeModel, keys: dict[str, frozenset[str]], removed: set[str]) -> list[RefactoringSuggestion]:
    live = {iid: ks for iid, ks in keys.items() if iid not in removed}
    counts: dict[str, int] = {}
    for ks in live.values():
        for k in ks:
            counts[k] = counts.get(k, 0) + 1
    dup_keys = {iid: frozenset(k for k in ks if counts[k] >= 2) for iid, ks in live.items()}
    candidates = []
    for shared in _shared_sets(dup_keys):
        members = frozenset(iid for iid, ks in live.items() if shared <= ks)
        if len(members) >= 3:
            candidates.append((shared, members))
    # Keep groups not strictly contained (by members) in another group.
    maximal = [
        (s, m) for s, m in candidates if not any(m < m2 or (m == m2 and s < s2) for s2, m2 in candidates)
    ]
    out = []
    for shared, members in sorted(maximal, key=lambda sm: (sorted(sm[1]), sorted(sm[0]))):
        carriers = sorted((iid for iid in members if live[iid] == shared), key=lambda i: _rank(model, keys, i), reverse=True)
        host = carriers[0] if carriers else None
        others = sorted(members - {host} if host else members)
        host_name = _short(model, host) if host else "<SharedInterface>"
        steps = []
        if host is None:
            steps.append(f"Extract a new interface {host_name} (placeholder name) declaring the {len(shared)} shared methods.")
        member_set = set(members) | ({host} if host else set())
        for iid in others:
            if not (model.ancestors(iid) & member_set):
                steps.append(f"Make {_short(model, iid)} a sub-interface of {host_name}.")
        steps.append(
            f"Remove the {len(shared)} shared method declarations from: "
            + ", ".join(_short(model, i) for i in others) + "."
        )
        placeholder = host is None
        simple = {}
        for iid in sorted(member_set):
            simple.setdefault(model.interfaces[iid].simple_name, []).append(iid)
        for name, same in sorted(simple.items()):
            if len(same) > 1:
                placeholder = True
                keep = host if host in same else same[0]
                renamed = [i for i in same if i != keep]
                steps.append(
                    f"Rename {', '.join(_short(model, i) for i in renamed)} (placeholder: <{name}Variant>), "
                    f"it shares its simple name with {_short(model, keep)}."
                )
        affected = set()
        for iid in members:
            affected |= {c.id for c in model.classes.values() if iid in c.implements}
        out.append(
            RefactoringSuggestion(
                kind=EXTRACT_SUPER,
                subjects=tuple(sorted(members)),
                affected_classes=tuple(sorted(affected)),
                narrative=tuple(steps),
                removed_declarations=len(shared) * (len(members) - 1),
                shared_keys=tuple(sorted(shared)),
                target=host,
                placeholder_names=placeholder,
            )
        )
    return out


def _redeclarations(model: CodeModel, keys: dict[str, frozenset[str]]) -> list[RefactoringSuggestion]:
    out = []
    for iid in sorted(keys):
        for ancestor in sorted(model.ancestors(iid)):
            shared = keys[iid] & keys.get(ancestor, frozenset())
            if not shared:
                continue
            out.append(
                RefactoringSuggestion(
                    kind=EXTEND_INSTEAD,
                    subjects=(iid, ancestor),
                    affected_classes=(),
                    narrative=(
                        f"{_short(model, iid)} already inherits {len(shared)} of its methods from "
                        f"{_short(model, ancestor)}; delete the re-declarations.",
                    ),
                    removed_declarations=len(shared),
                    shared_keys=tuple(sorted(shared)),
                    target=ancestor,
                )
            )
    return out


def suggest_refactorings(model: CodeModel) -> list[RefactoringSuggestion]:
    """All suggestions, most declarations removed first."""
    keys = {iid: frozenset(ks) for iid, ks in interface_keys(model).items()}
    removals = _remove_duplicates(model, keys)
    removed = {s.subjects[0] for s in removals}
    suggestions = [*removals, *_groups(model, keys, removed), *_redeclarations(model, keys)]
    suggestions.sort(key=lambda s: (-s.removed_declarations, _KIND_ORDER[s.kind], s.subjects))
    return suggestions


def suggestions_by_kind(suggestions: Iterable[RefactoringSuggestion], kind: str) -> list[RefactoringSuggestion]:
    return [s for s in suggestions if s.kind == kind]
