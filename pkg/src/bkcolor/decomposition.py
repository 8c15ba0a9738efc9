"""Clique / near-clique partition, triple families and structural audits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Any

from .graph import Graph, is_clique, nonedge_pairs_in_neighborhood


@dataclass(frozen=True)
class DecompositionParams:
    density_threshold: int
    near_clique_ratio: Fraction = Fraction(4, 5)
    min_clique_fraction: Fraction = Fraction(4, 5)

    def __post_init__(self):
        object.__setattr__(self, "near_clique_ratio", Fraction(self.near_clique_ratio).limit_denominator(10**6))
        object.__setattr__(self, "min_clique_fraction", Fraction(self.min_clique_fraction).limit_denominator(10**6))
        if self.density_threshold < 0:
            raise ValueError("density_threshold must be >= 0")
        if not Fraction(1, 2) < self.near_clique_ratio <= 1:
            raise ValueError("near_clique_ratio must lie in (1/2, 1]")
        if self.min_clique_fraction < 0:
            raise ValueError("min_clique_fraction must be >= 0")

    def to_dict(self) -> dict[str, Any]:
        return {
            "density_threshold": self.density_threshold,
            "near_clique_ratio": str(self.near_clique_ratio),
            "min_clique_fraction": str(self.min_clique_fraction),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "DecompositionParams":
        return cls(int(d["density_threshold"]), Fraction(d["near_clique_ratio"]), Fraction(d["min_clique_fraction"]))


def default_params(delta: int) -> DecompositionParams:
    """Density threshold ``floor(delta^2/50 - delta/10)`` clamped at zero, ratios 4/5."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    threshold = Fraction(delta * delta, 50) - Fraction(delta, 10)
    return DecompositionParams(max(0, math.floor(threshold)))


@dataclass(frozen=True)
class DenseSet:
    clique: tuple[int, ...]
    special: int | None = None

    @property
    def is_near_clique(self) -> bool:
        return self.special is not None

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.special is None:
            return self.clique
        return tuple(sorted(self.clique + (self.special,)))


@dataclass(frozen=True)
class Partition:
    dense_sets: tuple[DenseSet, ...]
    leftover: tuple[int, ...]
    params: DecompositionParams

    @cached_property
    def leftover_set(self) -> frozenset[int]:
        return frozenset(self.leftover)

    @property
    def near_clique_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.dense_sets) if s.special is not None]

    def owner(self, n: int) -> list[int]:
        """Per-vertex dense-set index, ``-1`` for leftover vertices."""
        out = [-1] * n
        for i, s in enumerate(self.dense_sets):
            for v in s.vertices:
                out[v] = i
        return out

    def validate(self, g: Graph) -> list[str]:
        """Cover and DenseSet invariant violations (empty when well formed)."""
        problems = []
        seen: dict[int, str] = {}
        parts = [(f"S{i}", s.vertices) for i, s in enumerate(self.dense_sets)] + [("L", self.leftover)]
        for label, vs in parts:
            for v in vs:
                if v in seen:
                    problems.append(f"vertex {v} in both {seen[v]} and {label}")
                seen[v] = label
        missing = set(range(g.n)) - seen.keys()
        if missing:
            problems.append(f"vertices not covered: {sorted(missing)}")
        for i, s in enumerate(self.dense_sets):
            if not is_clique(g, s.clique):
                problems.append(f"S{i}: clique part is not a clique")
            if s.special is not None:
                if s.special in s.clique:
                    problems.append(f"S{i}: special vertex inside clique")
                k = sum(1 for c in s.clique if g.has_edge(s.special, c))
                if k < math.ceil(self.params.near_clique_ratio * len(s.clique)):
                    problems.append(f"S{i}: special vertex has only {k} clique neighbours")
        return problems

    def to_dict(self) -> dict[str, Any]:
        return {
            "dense_sets": [{"clique": list(s.clique), "special": s.special} for s in self.dense_sets],
            "leftover": list(self.leftover),
            "params": self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Partition":
        return cls(
            tuple(DenseSet(tuple(s["clique"]), s["special"]) for s in d["dense_sets"]),
            tuple(d["leftover"]),
            DecompositionParams.from_dict(d["params"]),
        )


@dataclass(frozen=True)
class TripleFamily:
    clique_index: int
    triples: tuple[tuple[int, int, int], ...] = field(default_factory=tuple)

    @property
    def vertices(self) -> set[int]:
        return {x for t in self.triples for x in t}

    def __len__(self) -> int:
        return len(self.triples)


def find_dense_vertices(g: Graph, params: DecompositionParams) -> list[int]:
    t = params.density_threshold
    return [v for v in range(g.n) if nonedge_pairs_in_neighborhood(g, v) < t]


def build_partition(g: Graph, params: DecompositionParams | None = None, delta: int | None = None) -> Partition:
    """Greedy id-ordered partition into cliques, near-cliques and leftover vertices.

    Each unassigned dense vertex seeds a clique grown greedily (by id) inside
    its closed neighbourhood; cliques smaller than ``min_clique_fraction * delta``
    are discarded. Special vertices are attached afterwards, lowest id first.
    ``delta`` overrides ``g.delta`` when ``g`` is a piece of a larger graph.
    """
    if delta is None:
        delta = g.delta
    if params is None:
        params = default_params(max(delta, 1))
    assigned = [False] * g.n
    cliques: list[list[int]] = []
    min_size = params.min_clique_fraction * delta
    for v in find_dense_vertices(g, params):
        if assigned[v]:
            continue
        clique = [v]
        common = g.neighbor_set(v)
        for u in g.adjacency[v]:
            if assigned[u] or u not in common:
                continue
            clique.append(u)
            common = common & g.neighbor_set(u)
        if len(clique) >= max(min_size, 1):
            clique.sort()
            cliques.append(clique)
            for u in clique:
                assigned[u] = True

    dense_sets = []
    for clique in cliques:
        need = params.near_clique_ratio * len(clique)
        counts: dict[int, int] = {}
        for c in clique:
            for u in g.adjacency[c]:
                if not assigned[u]:
                    counts[u] = counts.get(u, 0) + 1
        special = next((u for u in sorted(counts) if counts[u] >= need), None)
        if special is not None:
            assigned[special] = True
        dense_sets.append(DenseSet(tuple(clique), special))
    leftover = tuple(v for v in range(g.n) if not assigned[v])
    return Partition(tuple(dense_sets), leftover, params)


def find_triples(g: Graph, partition: Partition, i: int, k: float | Fraction = Fraction(1, 9)) -> TripleFamily:
    """Greedy maximal family of disjoint triples ``(c, a, b)`` around clique ``i``.

    ``c`` lies in the clique; ``a < b`` are neighbours of ``c`` outside it, each
    with at most ``p + 3`` neighbours in the clique (``p = delta - |C_i|``).
    At most ``floor(k * delta)`` triples are returned.
    """
    if not 0 <= i < len(partition.dense_sets):
        raise IndexError(f"no dense set {i}")
    k = Fraction(k).limit_denominator(10**9)
    if not 0 <= k <= Fraction(1, 9):
        raise ValueError("k must lie in (0, 1/9]")
    clique = partition.dense_sets[i].clique
    members = set(clique)
    cap = math.floor(k * g.delta)
    p = g.delta - len(clique)
    used: set[int] = set()
    triples: list[tuple[int, int, int]] = []

    def into_clique(x: int) -> int:
        return sum(1 for y in g.adjacency[x] if y in members)

    light = {}
    for c in clique:
        if len(triples) >= cap:
            break
        if c in used:
            continue
        outside = []
        for x in g.adjacency[c]:
            if x in members or x in used:
                continue
            if x not in light:
                light[x] = into_clique(x) <= p + 3
            if light[x]:
                outside.append(x)
        if len(outside) >= 2:
            a, b = outside[0], outside[1]
            triples.append((c, a, b))
            used.update((c, a, b))
    return TripleFamily(i, tuple(triples))


# -- audits ------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    label: str
    detail: str
    vertices: tuple[int, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "detail": self.detail, "vertices": list(self.vertices)}


def _candidate_cliques(g: Graph, min_size: int) -> list[tuple[int, ...]]:
    import networkx as nx

    if g.n == 0 or min_size > g.delta + 1:
        return []
    ng = nx.k_core(g.to_networkx(), max(min_size - 1, 0))
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(ng) if len(c) >= min_size)


def audit_partition(g: Graph, partition: Partition) -> list[Finding]:
    """Check the structural statements expected of a minimal counterexample.

    Candidate cliques are maximal cliques with at least
    ``max(3, ceil(min_clique_fraction * delta))`` vertices. Findings are
    informational; ordinary input graphs may violate any of them.
    """
    findings: list[Finding] = []
    delta = g.delta
    floor_size = max(3, math.ceil(partition.params.min_clique_fraction * delta))
    cands = _candidate_cliques(g, floor_size)
    sets = [set(c) for c in cands]

    for a in range(len(cands)):
        hits = []
        for b in range(len(cands)):
            if a == b or not sets[a] & sets[b]:
                continue
            hits.append(b)
            if a < b:
                small, large = sorted((sets[a], sets[b]), key=len)
                if len(small - large) > 1:
                    findings.append(Finding("clique-overlap", f"cliques {cands[a]} and {cands[b]} share {len(sets[a] & sets[b])} vertices", tuple(sorted(sets[a] & sets[b]))))
                if len(cands[a]) >= delta - 1 and len(cands[b]) >= delta - 1:
                    findings.append(Finding("delta1-disjoint", f"(delta-1)-cliques {cands[a]} and {cands[b]} intersect", tuple(sorted(sets[a] & sets[b]))))
        if len(hits) >= 2:
            findings.append(Finding("clique-meets-two", f"clique {cands[a]} meets {len(hits)} other cliques", cands[a]))

    for clique, limit, label in ((c, 4, "p1") for c in cands if len(c) == delta - 1):
        findings.extend(_external_heavy(g, clique, limit, label))
    for clique, limit, label in ((c, 5, "p2") for c in cands if len(c) == delta - 2):
        findings.extend(_external_heavy(g, clique, limit, label))

    for i, s in enumerate(partition.dense_sets):
        members = set(s.clique)
        p = delta - len(s.clique)
        for v in s.clique:
            heavy = [x for x in g.adjacency[v] if x not in members and sum(1 for y in g.adjacency[x] if y in members) > p + 3]
            if len(heavy) > 1 or (heavy and g.degree(v) == delta - 1):
                findings.append(Finding("p-3", f"vertex {v} of C{i} has {len(heavy)} outside neighbours with > {p + 3} neighbours in C{i}", (v, *heavy)))
    return findings


def _external_heavy(g: Graph, clique: tuple[int, ...], limit: int, label: str) -> list[Finding]:
    members = set(clique)
    counts: dict[int, int] = {}
    for c in clique:
        for x in g.adjacency[c]:
            if x not in members:
                counts[x] = counts.get(x, 0) + 1
    out = [Finding(label, f"vertex {x} has {k} > {limit} neighbours in clique {clique}", (x,)) for x, k in sorted(counts.items()) if k > limit]
    low = [c for c in clique if g.degree(c) == g.delta - 1]
    if len(low) > limit:
        out.append(Finding(label, f"{len(low)} > {limit} vertices of clique {clique} have degree delta-1", tuple(low)))
    return out
