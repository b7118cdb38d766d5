"""Interface usage cohesion and the correlation statistics used on it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .clones import clone_degree, compute_idm
from .errors import DegenerateSample, UnknownInterface
from .model import CodeModel

PEARSON = "pearson"
SPEARMAN = "spearman"


@dataclass(frozen=True, slots=True)
class IucRecord:
    interface_id: str
    client_count: int
    iuc: float | None  # None when the interface has no client

    @property
    def defined(self) -> bool:
        return self.iuc is not None


def clients(model: CodeModel, interface_id: str) -> dict[str, set[tuple[str, int]]]:
    """Client classes of an interface mapped to the (name, arity) pairs they call.

    Classes in the interface's implementation closure are never clients.
    """
    implementers = model.implementation_closure(interface_id)
    used: dict[str, set[tuple[str, int]]] = {}
    for site in model.sites_for(interface_id):
        if site.client_class in implementers:
            continue
        used.setdefault(site.client_class, set()).add((site.method_name, site.arg_count))
    return used


def compute_iuc(model: CodeModel, interface_id: str) -> IucRecord:
    """Mean over clients of the fraction of the interface's methods each client uses."""
    decl = model.interfaces.get(interface_id)
    if decl is None:
        raise UnknownInterface(interface_id)
    methods = [(s.name, s.arity) for s in decl.public_signatures]
    if not methods:
        return IucRecord(interface_id, 0, None)
    usage = clients(model, interface_id)
    if not usage:
        return IucRecord(interface_id, 0, None)
    ratios = [sum(1 for m in methods if m in called) / len(methods) for called in usage.values()]
    return IucRecord(interface_id, len(usage), math.fsum(ratios) / len(ratios))


@dataclass(frozen=True, slots=True)
class CorrelationResult:
    method: str
    coefficient: float
    determination: float
    n: int


def determination(r: float) -> float:
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"correlation coefficient out of range: {r}")
    return r * r


def fractional_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the mean of the ranks they span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mid = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mid
        i = j + 1
    return ranks


def _pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise DegenerateSample("correlation undefined for a constant sample")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation(xs: Sequence[float], ys: Sequence[float], method: str = PEARSON) -> CorrelationResult:
    if len(xs) != len(ys):
        raise ValueError("samples must have equal length")
    if len(xs) < 3:
        raise DegenerateSample(f"need at least 3 paired values, got {len(xs)}")
    if len(set(xs)) == 1 or len(set(ys)) == 1:
        raise DegenerateSample("correlation undefined for a constant sample")
    if method == PEARSON:
        r = _pearson([float(x) for x in xs], [float(y) for y in ys])
    elif method == SPEARMAN:
        r = _pearson(fractional_ranks(xs), fractional_ranks(ys))
    else:
        raise ValueError(f"unknown correlation method: {method!r}")
    return CorrelationResult(method, r, determination(r), len(xs))


@dataclass(frozen=True, slots=True)
class MetricRow:
    interface_id: str
    qualified_name: str
    size: int
    idm: int
    iuc: float | None
    client_count: int
    clone_degree: int


def metric_table(model: CodeModel) -> list[MetricRow]:
    """One row per interface of a filtered model, sorted by id. Missing IUC stays ``None``."""
    idm = compute_idm(model)
    degree = clone_degree(model)
    rows = []
    for iid, decl in model.interfaces.items():
        rec = compute_iuc(model, iid)
        rows.append(
            MetricRow(iid, decl.qualified_name, decl.size, idm[iid], rec.iuc, rec.client_count, degree[iid])
        )
    rows.sort(key=lambda r: r.interface_id)
    return rows
