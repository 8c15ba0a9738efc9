"""Bad events over a partial coloring and the Moser-Tardos resampling loop."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterator

from .coloring import PartialColoring, RandomSource, compute_Zv, conflict_delete, random_coloring, repeated_color_count
from .decomposition import Partition, TripleFamily
from .graph import Coloring, Graph

logger = logging.getLogger(__name__)

AV, EI, FI = "Av", "Ei", "Fi"


@dataclass(frozen=True, order=True)
class BadEvent:
    kind: str
    index: int

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index}

    def __str__(self) -> str:
        return f"{self.kind}({self.index})"


@dataclass
class ResampleTrace:
    steps: list[tuple[int, BadEvent, tuple[int, ...]]] = field(default_factory=list)
    terminated: bool = False
    raw: tuple[int, ...] = ()

    @property
    def total_steps(self) -> int:
        return len(self.steps)

    def records(self) -> Iterator[dict]:
        for step, event, resampled in self.steps:
            yield {"step": step, "event": event.to_dict(), "resampled": list(resampled)}

    def write_jsonl(self, fh: IO[str]) -> None:
        for rec in self.records():
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def event_family(partition: Partition) -> list[BadEvent]:
    """All events in scan order: A_v by vertex, then E_i, then F_i."""
    events = [BadEvent(AV, v) for v in partition.leftover]
    events += [BadEvent(EI, i) for i in partition.near_clique_indices]
    events += [BadEvent(FI, i) for i in range(len(partition.dense_sets))]
    return events


def occurs_Av(g: Graph, partition: Partition, phi: PartialColoring, v: int) -> bool:
    if v not in partition.leftover_set:
        raise ValueError(f"vertex {v} is not a leftover vertex")
    return compute_Zv(g, phi, v) < 2


def occurs_Ei(g: Graph, partition: Partition, phi: PartialColoring, i: int) -> bool:
    s = partition.dense_sets[i]
    if s.special is None:
        raise ValueError(f"dense set {i} is not a near-clique")
    a = phi.assignment
    nb = g.neighbor_set(s.special)
    uncolored = sum(1 for x in s.clique if x in nb and a[x] is None)
    return uncolored < 2


def qualifying_clique_vertices(g: Graph, partition: Partition, phi: PartialColoring | list, i: int) -> list[int]:
    """Uncolored vertices of ``C_i`` whose neighbourhood carries two repeated colors."""
    a = phi.assignment if isinstance(phi, PartialColoring) else phi
    return [x for x in partition.dense_sets[i].clique if a[x] is None and repeated_color_count(g, a, x) >= 2]


def occurs_Fi(g: Graph, partition: Partition, phi: PartialColoring, i: int) -> bool:
    s = partition.dense_sets[i]
    a = phi.assignment
    found = 0
    for x in s.clique:
        if a[x] is None and repeated_color_count(g, a, x) >= 2:
            found += 1
            if found == 2:
                return False
    return True


def occurs(g: Graph, partition: Partition, phi: PartialColoring, event: BadEvent) -> bool:
    if event.kind == AV:
        return occurs_Av(g, partition, phi, event.index)
    if event.kind == EI:
        return occurs_Ei(g, partition, phi, event.index)
    if event.kind == FI:
        return occurs_Fi(g, partition, phi, event.index)
    raise ValueError(f"unknown event kind {event.kind!r}")


def vbl(g: Graph, partition: Partition, event: BadEvent) -> list[int]:
    """Vertices whose colors determine ``event``."""
    if event.kind == AV:
        return g.ball([event.index], 2)
    s = partition.dense_sets[event.index]
    if event.kind == EI:
        if s.special is None:
            raise ValueError(f"dense set {event.index} is not a near-clique")
        return g.ball(s.vertices, 1)
    if event.kind == FI:
        return g.ball(s.vertices, 2)
    raise ValueError(f"unknown event kind {event.kind!r}")


def compute_Mi(g: Graph, partition: Partition, phi: PartialColoring, family: TripleFamily) -> int:
    """Triples with uncolored clique vertex, outer colors present on the clique, and private colors."""
    a = phi.assignment
    clique_colors = {a[x] for x in partition.dense_sets[family.clique_index].clique if a[x] is not None}
    per_triple = [{a[x] for x in t if a[x] is not None} for t in family.triples]
    uses: dict[int, int] = {}
    for cols in per_triple:
        for c in cols:
            uses[c] = uses.get(c, 0) + 1
    count = 0
    for (c, x, y), cols in zip(family.triples, per_triple):
        if a[c] is not None or a[x] is None or a[y] is None:
            continue
        if a[x] not in clique_colors or a[y] not in clique_colors:
            continue
        if any(uses[col] > 1 for col in cols):
            continue
        count += 1
    return count


def first_occurring(g: Graph, partition: Partition, phi: PartialColoring, events: list[BadEvent]) -> BadEvent | None:
    for e in events:
        if occurs(g, partition, phi, e):
            return e
    return None


def expected_resample_bound(num_events: int, d: int) -> float:
    """Expected resampling steps under the symmetric witness ``x = 1/(d+1)``: ``num_events / d``."""
    if d < 1:
        raise ValueError("dependency degree must be >= 1")
    return num_events / d


def default_cap(num_events: int, delta: int) -> int:
    d_estimate = max(1, min(3 * delta**5, num_events - 1))
    return int(10 * max(1.0, expected_resample_bound(num_events, d_estimate)))


def moser_tardos(
    g: Graph,
    partition: Partition,
    q: int,
    rng: RandomSource,
    cap: int | None = None,
) -> tuple[PartialColoring, ResampleTrace]:
    """Resample the first occurring bad event until none occurs or ``cap`` steps are spent.

    Returns the final partial coloring (after conflict deletion) and the trace.
    The raw pre-deletion assignment of the final state is kept on
    ``trace.raw`` for replay checks.
    """
    if q < 1:
        raise ValueError("palette size must be >= 1")
    events = event_family(partition)
    if cap is None:
        cap = default_cap(len(events), g.delta)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    rounds = [0] * g.n
    col = list(random_coloring(g, q, rng).assignment)
    phi = conflict_delete(g, Coloring(tuple(col), q))
    trace = ResampleTrace()
    vbl_cache: dict[BadEvent, list[int]] = {}
    while True:
        bad = first_occurring(g, partition, phi, events)
        if bad is None:
            trace.terminated = True
            break
        if trace.total_steps >= cap:
            break
        targets = vbl_cache.get(bad)
        if targets is None:
            targets = vbl_cache[bad] = vbl(g, partition, bad)
        for x in targets:
            rounds[x] += 1
            col[x] = rng.color(x, rounds[x], q)
        trace.steps.append((trace.total_steps + 1, bad, tuple(targets)))
        phi = conflict_delete(g, Coloring(tuple(col), q))
    trace.raw = tuple(col)
    logger.debug("moser_tardos: %d steps, terminated=%s", trace.total_steps, trace.terminated)
    return phi, trace
