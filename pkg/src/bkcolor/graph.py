"""Simple undirected graphs, DIMACS I/O and exact small-instance oracles."""
from __future__ import annotations

import bisect
import logging
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

#: Default vertex-count cutoffs for the exact oracles.
CHROMATIC_CUTOFF = 40
CLIQUE_CUTOFF = 60


class DimacsError(ValueError):
    """Raised on malformed DIMACS ``.col`` input."""


class OracleTooLarge(ValueError):
    """Raised when an exact oracle is called above its vertex cutoff."""


class ChromaticLimitExceeded(RuntimeError):
    """Raised when no coloring within the requested palette limit exists."""

    def __init__(self, limit: int):
        super().__init__(f"chi > {limit}")
        self.limit = limit


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted tuples. Membership tests go through per-vertex
    frozensets, and bitset views (python ints) are built lazily for the
    dense-neighbourhood computations.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._sets: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.m = sum(len(a) for a in self.adjacency) // 2
        self.delta = max((len(a) for a in self.adjacency), default=0)

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adjacency), ((u, v) for u, nb in enumerate(adjacency) for v in nb))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adjacency[u]
        i = bisect.bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @cached_property
    def bitsets(self) -> tuple[int, ...]:
        out = []
        for row in self.adjacency:
            mask = 0
            for v in row:
                mask |= 1 << v
            out.append(mask)
        return tuple(out)

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0..k-1``; returns it with the new->old id map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u in keep for v in self.adjacency[u] if u < v and v in index]
        return Graph(len(keep), edges), keep

    def ball(self, sources: Iterable[int], radius: int) -> list[int]:
        """Sorted vertices within ``radius`` hops of any source."""
        seen = set(sources)
        frontier = list(seen)
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, delta={self.delta})"


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors ``1..q`` to every vertex."""

    assignment: tuple[int, ...]
    q: int

    def __post_init__(self):
        for c in self.assignment:
            if c is None or not 1 <= c <= self.q:
                raise ValueError(f"color {c!r} outside palette [1..{self.q}]")

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment))

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify_coloring`; ``edge`` is the first monochromatic edge."""

    proper: bool
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.proper

    def __str__(self) -> str:
        return "proper" if self.proper else f"violation at edge {self.edge}"


# -- DIMACS ------------------------------------------------------------------

def parse_dimacs(text: str | bytes) -> Graph:
    """Parse a DIMACS ``.col`` document (1-based ids) into a 0-based :class:`Graph`."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if n < 0 or declared_m < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
        elif tag == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed edge {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex id out of range in {line!r}")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing problem line")
    g = Graph(n, edges)
    if g.m != declared_m:
        warnings.warn(f"header declares {declared_m} edges, found {g.m} distinct edges", stacklevel=2)
    return g


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- neighbourhood primitives ------------------------------------------------

def nonedge_pairs_in_neighborhood(g: Graph, v: int) -> int:
    """Number of unordered non-adjacent pairs inside ``N(v)``."""
    bits = g.bitsets
    nmask = bits[v]
    d = len(g.adjacency[v])
    inside_edges = sum((bits[u] & nmask).bit_count() for u in g.adjacency[v]) // 2
    return d * (d - 1) // 2 - inside_edges


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for i, u in enumerate(vs):
        nb = g.neighbor_set(u)
        for w in vs[i + 1:]:
            if w not in nb:
                return False
    return True


def verify_coloring(g: Graph, colors: Coloring | Sequence[int]) -> Verdict:
    """Check properness; reports the lexicographically smallest monochromatic edge."""
    assignment = colors.assignment if isinstance(colors, Coloring) else colors
    if len(assignment) != g.n:
        raise ValueError(f"assignment has {len(assignment)} entries, graph has {g.n} vertices")
    for u in range(g.n):
        cu = assignment[u]
        for v in g.adjacency[u]:
            if v > u and assignment[v] == cu:
                return Verdict(False, (u, v))
    return Verdict(True)


# -- exact oracles -----------------------------------------------------------

def brute_force_chromatic(g: Graph, limit: int | None = None, cutoff: int = CHROMATIC_CUTOFF) -> tuple[int, Coloring]:
    """Exact chromatic number by DSATUR branch and bound.

    Returns ``(chi, witness)``. Raises :class:`ChromaticLimitExceeded` when
    ``chi`` would exceed ``limit``.
    """
    n = g.n
    if n > cutoff:
        raise OracleTooLarge(f"n={n} exceeds chromatic oracle cutoff {cutoff}")
    if limit is None:
        limit = g.delta + 1
    if n == 0:
        return 0, Coloring((), 1)
    adj = g.adjacency

    # greedy upper bound in DSATUR order
    best = _dsatur_greedy(g)
    best_k = max(best)
    if best_k > limit:
        best_k = limit + 1
        best = None
    lower = 1 if g.m == 0 else 2

    colors = [0] * n
    # per-vertex count of neighbours holding each color
    counts = [[0] * (n + 2) for _ in range(n)]
    sat = [0] * n

    def pick() -> int:
        cand, key = -1, (-1, -1)
        for v in range(n):
            if colors[v] == 0:
                k = (sat[v], len(adj[v]))
                if k > key:
                    cand, key = v, k
        return cand

    def assign(v: int, c: int) -> None:
        colors[v] = c
        for w in adj[v]:
            row = counts[w]
            if row[c] == 0:
                sat[w] += 1
            row[c] += 1

    def unassign(v: int, c: int) -> None:
        colors[v] = 0
        for w in adj[v]:
            row = counts[w]
            row[c] -= 1
            if row[c] == 0:
                sat[w] -= 1

    def search(colored: int, used: int) -> bool:
        nonlocal best, best_k
        if colored == n:
            best, best_k = list(colors), used
            return used <= lower
        v = pick()
        row = counts[v]
        for c in range(1, min(used + 1, best_k - 1) + 1):
            if row[c]:
                continue
            assign(v, c)
            done = search(colored + 1, max(used, c))
            unassign(v, c)
            if done:
                return True
        return False

    search(0, 0)
    if best is None:
        raise ChromaticLimitExceeded(limit)
    return best_k, Coloring(tuple(best), best_k)


def _dsatur_greedy(g: Graph) -> list[int]:
    n = g.n
    colors = [0] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] == 0), key=lambda u: (len(seen[u]), g.degree(u), -u))
        c = 1
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in g.adjacency[v]:
            seen[w].add(c)
    return colors


def clique_number_exact(g: Graph, cutoff: int = CLIQUE_CUTOFF) -> tuple[int, list[int]]:
    """Exact clique number with greedy-coloring bounds (MCQ style).

    Returns ``(omega, witness)``.
    """
    if g.n > cutoff:
        raise OracleTooLarge(f"n={g.n} exceeds clique oracle cutoff {cutoff}")
    if g.n == 0:
        return 0, []
    bits = g.bitsets
    best: list[int] = []

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential coloring of the candidate set; returns (vertex, color) ascending by color
        out = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~bits[v] & ~low
                uncolored &= ~low
                out.append((v, color))
        return out

    def expand(current: list[int], cand: int) -> None:
        nonlocal best
        order = color_bound(cand)
        for v, c in reversed(order):
            if len(current) + c <= len(best):
                return
            current.append(v)
            nxt = cand & bits[v]
            if nxt:
                expand(current, nxt)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return len(best), sorted(best)
