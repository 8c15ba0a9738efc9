"""Random palette assignment, conflict deletion and neighbourhood color statistics."""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .graph import Coloring, Graph

_MASK64 = (1 << 64) - 1


class RandomSource:
    """Counter-based generator keyed by ``(seed, vertex, round)``.

    Each draw is a pure function of its key, so redrawing one vertex never
    shifts the stream seen by any other vertex. Words come from keyed
    BLAKE2b, which gives the same bytes on every platform.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & _MASK64
        self._key = self.seed.to_bytes(8, "little")

    def word(self, vertex: int, round_: int, attempt: int = 0) -> int:
        msg = vertex.to_bytes(8, "little") + round_.to_bytes(8, "little") + attempt.to_bytes(4, "little")
        return int.from_bytes(hashlib.blake2b(msg, key=self._key, digest_size=8).digest(), "little")

    def color(self, vertex: int, round_: int, q: int) -> int:
        """Uniform color in ``1..q`` by rejection on the 64-bit word."""
        if q < 1:
            raise ValueError("palette size must be >= 1")
        limit = (1 << 64) - ((1 << 64) % q)
        attempt = 0
        while True:
            w = self.word(vertex, round_, attempt)
            if w < limit:
                return w % q + 1
            attempt += 1

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


@dataclass(frozen=True)
class PartialColoring:
    """Assignment of colors ``1..q`` or ``None`` (uncolored) to each vertex."""

    assignment: tuple[int | None, ...]
    q: int

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int | None:
        return self.assignment[v]

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.assignment) if c is None]

    def is_total(self) -> bool:
        return all(c is not None for c in self.assignment)

    def is_proper(self, g: Graph) -> bool:
        a = self.assignment
        return not any(a[u] is not None and a[u] == a[v] for u, v in g.edges())

    def to_json(self) -> list[int | None]:
        return list(self.assignment)

    @classmethod
    def from_json(cls, data: Sequence[int | None], q: int) -> "PartialColoring":
        return cls(tuple(data), q)


def random_coloring(g: Graph, q: int, rng: RandomSource, rounds: Sequence[int] | None = None) -> Coloring:
    if q < 1:
        raise ValueError("palette size must be >= 1")
    if rounds is None:
        return Coloring(tuple(rng.color(v, 0, q) for v in range(g.n)), q)
    return Coloring(tuple(rng.color(v, rounds[v], q) for v in range(g.n)), q)


def conflict_delete(g: Graph, col: Coloring | Sequence[int | None]) -> PartialColoring:
    """Uncolor both endpoints of every monochromatic edge."""
    raw = col.assignment if isinstance(col, (Coloring, PartialColoring)) else tuple(col)
    q = col.q if isinstance(col, (Coloring, PartialColoring)) else max((c for c in raw if c is not None), default=1)
    out = list(raw)
    for u in range(g.n):
        cu = raw[u]
        if cu is None:
            continue
        for v in g.adjacency[u]:
            if raw[v] == cu:
                out[u] = None
                break
    return PartialColoring(tuple(out), q)


def _neighbor_colors(g: Graph, phi: PartialColoring | Sequence[int | None], v: int) -> Counter:
    a = phi.assignment if isinstance(phi, PartialColoring) else phi
    return Counter(a[u] for u in g.adjacency[v] if a[u] is not None)


def compute_Zv(g: Graph, phi: PartialColoring, v: int) -> int:
    """Non-adjacent neighbour pairs whose shared color occurs nowhere else in ``N(v)``."""
    a = phi.assignment
    holders: dict[int, list[int]] = {}
    for u in g.adjacency[v]:
        c = a[u]
        if c is not None:
            holders.setdefault(c, []).append(u)
    return sum(1 for hs in holders.values() if len(hs) == 2 and not g.has_edge(hs[0], hs[1]))


def repeated_color_count(g: Graph, phi: PartialColoring | Sequence[int | None], v: int) -> int:
    """Number of colors carried by at least two colored neighbours of ``v``."""
    return sum(1 for k in _neighbor_colors(g, phi, v).values() if k >= 2)
