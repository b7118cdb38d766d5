"""Duplicate method declarations across interfaces.

A signature key is the resolved return type, the name and the resolved
parameter types. Two public signatures declared in different interfaces are
identical when their keys are equal; everything in this module is derived from
bucketing public signatures by key.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import EmptyModel
from .model import CodeModel, MethodSignature

SignatureKey = str


def signature_key(sig: MethodSignature) -> SignatureKey:
    return sig.key


def signatures_identical(s1: MethodSignature, s2: MethodSignature) -> bool:
    return signature_key(s1) == signature_key(s2)


@dataclass(frozen=True, slots=True)
class DuplicateGroup:
    key: SignatureKey
    declaring_interfaces: tuple[str, ...]
    signature: MethodSignature

    def __post_init__(self) -> None:
        if len(self.declaring_interfaces) < 2:
            raise ValueError("a duplicate group spans at least two interfaces")

    @property
    def method_name(self) -> str:
        return self.signature.name

    def pairs(self) -> list[tuple[str, str]]:
        return list(combinations(self.declaring_interfaces, 2))


@dataclass(frozen=True, slots=True)
class ClonePairRecord:
    interface_a: str
    interface_b: str
    shared_keys: frozenset[SignatureKey]

    def __post_init__(self) -> None:
        if self.interface_a >= self.interface_b:
            raise ValueError("clone pair ids must be in sorted order")
        if not self.shared_keys:
            raise ValueError("a clone pair shares at least one signature")


def interface_keys(model: CodeModel) -> dict[str, list[SignatureKey]]:
    """Public signature keys of every interface, in declaration order."""
    return {
        iid: [signature_key(s) for s in decl.public_signatures]
        for iid, decl in model.interfaces.items()
    }


def _declarers(model: CodeModel) -> dict[SignatureKey, list[str]]:
    by_key: dict[SignatureKey, list[str]] = defaultdict(list)
    for iid, keys in interface_keys(model).items():
        for key in dict.fromkeys(keys):
            by_key[key].append(iid)
    return by_key


def duplicate_groups(model: CodeModel) -> list[DuplicateGroup]:
    """One group per signature key declared by two or more interfaces, sorted by key."""
    representative: dict[SignatureKey, MethodSignature] = {}
    for decl in model.interfaces.values():
        for sig in decl.public_signatures:
            representative.setdefault(signature_key(sig), sig)
    return [
        DuplicateGroup(key, tuple(sorted(ids)), representative[key])
        for key, ids in sorted(_declarers(model).items())
        if len(ids) >= 2
    ]


def compute_idm(model: CodeModel) -> dict[str, int]:
    """Number of each interface's public signatures that some other interface also declares."""
    declarers = _declarers(model)
    return {
        iid: sum(1 for key in keys if len(declarers[key]) >= 2)
        for iid, keys in interface_keys(model).items()
    }


def compute_dm(model: CodeModel) -> int:
    # Every copy counts: foo declared in A and B contributes 2.
    return sum(compute_idm(model).values())


def total_size(model: CodeModel) -> int:
    return sum(decl.size for decl in model.interfaces.values())


def compute_rdm(model: CodeModel) -> Fraction:
    """Duplicate declarations over all declared public methods, as an exact fraction."""
    total = total_size(model)
    if total == 0:
        raise EmptyModel("no public interface methods in the model")
    return Fraction(compute_dm(model), total)


def duplicate_interfaces(model: CodeModel) -> set[str]:
    idm = compute_idm(model)
    return {
        iid for iid, decl in model.interfaces.items() if decl.size >= 1 and idm[iid] == decl.size
    }


def clone_pairs(model: CodeModel) -> list[ClonePairRecord]:
    shared: dict[tuple[str, str], set[SignatureKey]] = defaultdict(set)
    for key, ids in _declarers(model).items():
        for a, b in combinations(sorted(ids), 2):
            shared[(a, b)].add(key)
    return [ClonePairRecord(a, b, frozenset(keys)) for (a, b), keys in sorted(shared.items())]


def clone_degree(model: CodeModel) -> dict[str, int]:
    """Number of other interfaces each interface shares at least one signature with."""
    degree = dict.fromkeys(model.interfaces, 0)
    for rec in clone_pairs(model):
        degree[rec.interface_a] += 1
        degree[rec.interface_b] += 1
    return degree
