"""Greedy extension of a partial (q)-coloring and a generator of extension-ready instances."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .coloring import PartialColoring, repeated_color_count
from .decomposition import DenseSet, Partition, default_params
from .events import qualifying_clique_vertices
from .graph import Coloring, Graph


class ExtensionError(RuntimeError):
    """No free color was available for a vertex during extension."""

    def __init__(self, vertex: int, phase: str):
        super().__init__(f"no free color for vertex {vertex} in phase {phase}")
        self.vertex = vertex
        self.phase = phase


@dataclass(frozen=True)
class Violation:
    condition: str
    target: int
    detail: str

    def __str__(self) -> str:
        return f"({self.condition}) {self.detail}"


def check_extension_preconditions(g: Graph, partition: Partition, phi: PartialColoring, q: int) -> list[Violation]:
    """Conditions (i)-(iii) for the greedy extension; an empty list means ready."""
    if q < 1:
        raise ValueError("palette size must be >= 1")
    a = phi.assignment
    out = []
    for v in partition.leftover:
        r = repeated_color_count(g, a, v)
        if r < 2:
            out.append(Violation("i", v, f"leftover vertex {v} sees {r} repeated colors"))
    for i in partition.near_clique_indices:
        s = partition.dense_sets[i]
        nb = g.neighbor_set(s.special)
        k = sum(1 for x in s.clique if x in nb and a[x] is None)
        if k < 2:
            out.append(Violation("ii", i, f"special vertex {s.special} of S{i} has {k} uncolored clique neighbours"))
    for i in range(len(partition.dense_sets)):
        k = len(qualifying_clique_vertices(g, partition, a, i))
        if k < 2:
            out.append(Violation("iii", i, f"C{i} has {k} uncolored vertices with two repeated colors"))
    return out


def _smallest_free(g: Graph, a: list, v: int, q: int) -> int | None:
    taken = {a[u] for u in g.adjacency[v]}
    for c in range(1, q + 1):
        if c not in taken:
            return c
    return None


def extend_coloring(g: Graph, partition: Partition, phi: PartialColoring, q: int) -> Coloring:
    """Complete ``phi`` to a proper coloring with colors ``1..q``.

    Order: near-clique special vertices, then each clique with its two
    withheld vertices colored last, then the leftover vertices. Every step
    takes the smallest free color and raises :class:`ExtensionError` if none
    exists.
    """
    a = list(phi.assignment)

    def paint(v: int, phase: str) -> None:
        c = _smallest_free(g, a, v, q)
        if c is None:
            raise ExtensionError(v, phase)
        a[v] = c

    for i in partition.near_clique_indices:
        v = partition.dense_sets[i].special
        if a[v] is None:
            paint(v, "special")

    for i, s in enumerate(partition.dense_sets):
        pending = [x for x in s.clique if a[x] is None]
        if not pending:
            continue
        withheld = qualifying_clique_vertices(g, partition, a, i)[:2]
        if len(withheld) < 2:
            # fewer than two qualifying vertices; still withhold the smallest uncolored ones
            withheld = (withheld + [x for x in pending if x not in withheld])[:2]
        for y in pending:
            if y not in withheld:
                paint(y, "clique")
        for y in withheld:
            paint(y, "withheld")

    for v in partition.leftover:
        if a[v] is None:
            paint(v, "leftover")

    # vertices outside every part can only appear with hand-built partitions
    for v in range(g.n):
        if a[v] is None:
            paint(v, "rest")
    return Coloring(tuple(a), q)


def generate_extension_instance(
    seed: int,
    delta: int,
    num_sets: int,
    near_fraction: float = 0.5,
) -> tuple[Graph, Partition, PartialColoring]:
    """Build a graph of maximum degree ``delta`` with a partial coloring meeting (i)-(iii).

    Each dense set is a clique of size ``delta - 2`` in which two vertices
    ``w, x`` stay uncolored; each of them is wired to colored helper vertices
    whose colors also occur on the clique, giving it two repeated colors.
    ``round(near_fraction * num_sets)`` sets get a special vertex adjacent to
    ``ceil(4/5 (delta - 2))`` clique vertices, ``w`` and ``x`` among them.
    Helpers live in leftover blocks ``K_{r,r}``; each side carries two colors
    twice, so every leftover vertex sees two repeated colors. Ids are shuffled.
    """
    if delta < 6:
        raise ValueError("delta must be >= 6")
    if num_sets < 0 or not 0 <= near_fraction <= 1:
        raise ValueError("num_sets must be >= 0 and near_fraction in [0, 1]")
    rng = random.Random(seed)
    q = delta - 1
    m = delta - 2
    special_deg = math.ceil(Fraction(4, 5) * m)
    n_near = round(near_fraction * num_sets)
    if n_near and special_deg >= m:
        raise ValueError(f"delta={delta} leaves no room for a near-clique special vertex")

    palette = list(range(1, q + 1))
    rng.shuffle(palette)
    side_a, side_b = palette[:2], palette[2:4]

    colors: list[int | None] = []
    nbrs: list[set[int]] = []
    leftover: list[int] = []
    helpers: list[int] = []

    def new_vertex(color: int | None) -> int:
        colors.append(color)
        nbrs.append(set())
        return len(colors) - 1

    def link(u: int, v: int) -> None:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def new_block(r: int) -> None:
        left = [new_vertex(side_a[j // 2] if j < 4 else None) for j in range(r)]
        right = [new_vertex(side_b[j // 2] if j < 4 else None) for j in range(r)]
        for u in left:
            for v in right:
                link(u, v)
        leftover.extend(left + right)
        helpers.extend(left[:4])

    def take_helper(color: int, t: int) -> int:
        free = [h for h in helpers if colors[h] == color and len(nbrs[h]) < delta and h not in nbrs[t]]
        if not free:
            new_block(rng.randint(4, max(4, delta - 4)))
            return take_helper(color, t)
        return min(free, key=lambda h: (len(nbrs[h]), h))

    if num_sets == 0:
        new_block(delta)

    near_ids = set(rng.sample(range(num_sets), n_near))
    raw_sets = []
    for i in range(num_sets):
        others = palette[2:]
        rng.shuffle(others)
        clique_colors = side_a + others[: m - 4]
        rng.shuffle(clique_colors)
        colored = [new_vertex(c) for c in clique_colors]
        w, x = new_vertex(None), new_vertex(None)
        members = colored + [w, x]
        for j, u in enumerate(members):
            for v in members[j + 1:]:
                link(u, v)
        # optionally leave one more clique vertex uncolored (never a side_a carrier)
        spare = [y for y in colored if colors[y] not in side_a]
        if spare and rng.random() < 0.5:
            colors[rng.choice(spare)] = None
        for t in (w, x):
            for col in side_a:
                link(t, take_helper(col, t))
        special = None
        if i in near_ids:
            special = new_vertex(None)
            rest = list(colored)
            rng.shuffle(rest)
            for y in [w, x] + rest[: special_deg - 2]:
                link(special, y)
        else:
            # lift w to degree delta so the instance attains its nominal maximum degree
            link(w, take_helper(rng.choice(side_a), w))
        raw_sets.append((members, special))

    n = len(colors)
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph(n, ((perm[u], perm[v]) for u in range(n) for v in nbrs[u] if u < v))
    if g.delta != delta:
        raise ValueError(f"construction reached maximum degree {g.delta}, expected {delta}")
    relabelled: list[int | None] = [None] * n
    for old, c in enumerate(colors):
        relabelled[perm[old]] = c
    sets = sorted(
        (DenseSet(tuple(sorted(perm[v] for v in members)), None if s is None else perm[s]) for members, s in raw_sets),
        key=lambda s: s.clique[0],
    )
    partition = Partition(tuple(sets), tuple(sorted(perm[v] for v in leftover)), default_params(delta))
    return g, partition, PartialColoring(tuple(relabelled), q)
