"""Brooks colorer, degree peeling and the end-to-end coloring pipeline."""
from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .coloring import RandomSource
from .decomposition import DecompositionParams, Partition, build_partition, default_params
from .events import ResampleTrace, default_cap, event_family, moser_tardos
from .extension import ExtensionError, check_extension_preconditions, extend_coloring
from .graph import CHROMATIC_CUTOFF, Coloring, Graph, brute_force_chromatic, verify_coloring

logger = logging.getLogger(__name__)

MODES = ("auto", "pipeline", "greedy", "brooks", "exact")

#: Degree thresholds quoted for the existence theorem; reported, never used to gate execution.
THEORY_THRESHOLD = 7.4e9
ABSTRACT_THRESHOLD = 7.3e9
DELTA_MIN_REPORTED = 7_327_700_972


# -- Brooks ------------------------------------------------------------------

def _greedy_in_order(g: Graph, order, palette: int, preset: dict[int, int] | None = None) -> list[int]:
    colors = [0] * g.n
    if preset:
        for v, c in preset.items():
            colors[v] = c
    for v in order:
        taken = {colors[u] for u in g.adjacency[v]}
        c = 1
        while c in taken:
            c += 1
        if c > palette:
            raise AssertionError(f"greedy step at vertex {v} exceeded palette {palette}")
        colors[v] = c
    return colors


def _bfs_order(g: Graph, root: int, removed: frozenset[int] = frozenset()) -> list[int]:
    seen = {root}
    order = [root]
    dq = deque([root])
    while dq:
        u = dq.popleft()
        for w in g.adjacency[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                order.append(w)
                dq.append(w)
    return order


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def brooks_coloring(g: Graph) -> Coloring:
    """Proper coloring of a connected graph with at most ``max(delta, omega)`` colors.

    Complete graphs get ``n`` colors and odd cycles 3. Otherwise, when some
    vertex has degree below ``delta`` the vertices are colored greedily in
    reverse BFS order from it. Regular graphs are split at a cut vertex, or
    colored from a vertex ``x`` with two non-adjacent neighbours ``y, z``
    such that ``G - y - z`` stays connected (``y, z`` share a color, ``x``
    goes last).
    """
    n = g.n
    if n == 0:
        return Coloring((), 1)
    if len(g.components()) != 1:
        raise ValueError("brooks_coloring expects a connected graph")
    delta = g.delta
    if _is_complete(g):
        return Coloring(tuple(range(1, n + 1)), n)
    if delta == 2 and g.m == n:
        # cycle: alternate along the cycle, third color closes an odd one
        colors = _greedy_in_order(g, _cycle_walk(g), 3)
        return Coloring(tuple(colors), max(colors))
    low = next((v for v in range(n) if g.degree(v) < delta), None)
    if low is not None:
        order = _bfs_order(g, low)
        colors = _greedy_in_order(g, reversed(order), delta)
        return Coloring(tuple(colors), delta)
    return Coloring(tuple(_brooks_regular(g)), delta)


def _cycle_walk(g: Graph) -> list[int]:
    walk = [0]
    prev, cur = None, 0
    while True:
        nxt = next(w for w in g.adjacency[cur] if w != prev)
        if nxt == 0:
            return walk
        walk.append(nxt)
        prev, cur = cur, nxt


def _brooks_regular(g: Graph) -> list[int]:
    import networkx as nx

    delta = g.delta
    nxg = g.to_networkx()
    cuts = sorted(nx.articulation_points(nxg))
    if cuts:
        v = cuts[0]
        colors = [0] * g.n
        rest = nxg.copy()
        rest.remove_node(v)
        for comp in sorted(nx.connected_components(rest), key=min):
            piece, ids = g.subgraph(set(comp) | {v})
            root = ids.index(v)
            local = _greedy_in_order(piece, reversed(_bfs_order(piece, root)), delta)
            # swap colors so the cut vertex always ends up with color 1
            cv = local[root]
            for i, old in enumerate(ids):
                c = local[i]
                colors[old] = 1 if c == cv else (cv if c == 1 else c)
        return colors

    u = 0
    rest = nxg.copy()
    rest.remove_node(u)
    inner_cuts = set(nx.articulation_points(rest))
    if not inner_cuts:
        nu = g.neighbor_set(u)
        for w in g.adjacency[u]:
            z = next((z for z in g.adjacency[w] if z != u and z not in nu), None)
            if z is not None:
                x, y = w, u
                break
        else:  # pragma: no cover - only complete graphs lack a distance-2 pair
            raise AssertionError("regular non-complete graph without a distance-2 pair")
    else:
        x = u
        leaves = []
        for block in nx.biconnected_components(rest):
            if len(block & inner_cuts) == 1:
                leaves.append(block)
        nu = g.neighbor_set(u)
        picks = []
        for block in sorted(leaves, key=min)[:2]:
            picks.append(min(b for b in block if b not in inner_cuts and b in nu))
        y, z = picks
    removed = frozenset((y, z))
    order = _bfs_order(g, x, removed)
    colors = _greedy_in_order(g, reversed(order), delta, preset={y: 1, z: 1})
    return colors


# -- peeling -----------------------------------------------------------------

def peel_low_degree(g: Graph, delta: int | None = None) -> tuple[Graph, list[int], list[int]]:
    """Repeatedly delete a smallest-id vertex of current degree ``< delta - 1``.

    Returns ``(core, core_ids, stack)``: the induced core, its new->old id
    map and the deletion order.
    """
    import heapq

    if delta is None:
        delta = g.delta
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    heap = [v for v in range(g.n) if deg[v] < delta - 1]
    heapq.heapify(heap)
    queued = set(heap)
    stack = []
    while heap:
        v = heapq.heappop(heap)
        alive[v] = False
        stack.append(v)
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < delta - 1 and w not in queued:
                    queued.add(w)
                    heapq.heappush(heap, w)
    core, ids = g.subgraph(v for v in range(g.n) if alive[v])
    return core, ids, stack


def reinsert_and_color(core_coloring: Coloring | list, core_ids: list[int], stack: list[int], g: Graph, q: int) -> Coloring:
    """Color peeled vertices in reverse deletion order with the smallest free color."""
    colors: list[int | None] = [None] * g.n
    core_colors = core_coloring.assignment if isinstance(core_coloring, Coloring) else core_coloring
    for i, old in enumerate(core_ids):
        colors[old] = core_colors[i]
    for v in reversed(stack):
        taken = {colors[u] for u in g.adjacency[v]}
        c = next((c for c in range(1, q + 1) if c not in taken), None)
        if c is None:
            raise ExtensionError(v, "reinsert")
        colors[v] = c
    return Coloring(tuple(colors), q)


# -- orchestration -----------------------------------------------------------

@dataclass
class PipelineConfig:
    mode: str = "auto"
    q_override: int | None = None
    seed: int = 0
    resample_cap: int | None = None
    pipeline_floor: int = 20
    params: DecompositionParams | None = None
    oracle_cutoff: int = CHROMATIC_CUTOFF

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.q_override is not None and self.q_override < 1:
            raise ValueError("q_override must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "q_override": self.q_override,
            "seed": self.seed,
            "resample_cap": self.resample_cap,
            "pipeline_floor": self.pipeline_floor,
            "params": None if self.params is None else self.params.to_dict(),
            "oracle_cutoff": self.oracle_cutoff,
        }


@dataclass
class PipelineReport:
    mode_requested: str
    mode_used: str = ""
    n: int = 0
    m: int = 0
    delta: int = 0
    q_target: int = 0
    colors_used: int = 0
    target_met: bool = False
    resample_steps: int = 0
    resample_cap: int | None = None
    terminated: bool | None = None
    num_events: int = 0
    num_dense_sets: int = 0
    num_near_cliques: int = 0
    leftover_size: int = 0
    core_size: int = 0
    peeled: int = 0
    omega_at_least_delta: bool = False
    fallback_taken: bool = False
    fallback_reason: str | None = None
    verification: str = "unverified"
    theory_threshold: float = THEORY_THRESHOLD
    wall_time: dict[str, float] = field(default_factory=dict)
    trace: ResampleTrace | None = field(default=None, repr=False)
    partition: Partition | None = field(default=None, repr=False)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out = {
            "mode_requested": self.mode_requested,
            "mode_used": self.mode_used,
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "q_target": self.q_target,
            "colors_used": self.colors_used,
            "target_met": self.target_met,
            "resample_steps": self.resample_steps,
            "resample_cap": self.resample_cap,
            "terminated": self.terminated,
            "num_events": self.num_events,
            "num_dense_sets": self.num_dense_sets,
            "num_near_cliques": self.num_near_cliques,
            "leftover_size": self.leftover_size,
            "core_size": self.core_size,
            "peeled": self.peeled,
            "omega_at_least_delta": self.omega_at_least_delta,
            "fallback_taken": self.fallback_taken,
            "fallback_reason": self.fallback_reason,
            "verification": self.verification,
            "theory_threshold": self.theory_threshold,
            "abstract_threshold": ABSTRACT_THRESHOLD,
            "delta_min_reported": DELTA_MIN_REPORTED,
        }
        if include_timing:
            out["wall_time"] = dict(self.wall_time)
        return out


class PipelineFailure(RuntimeError):
    pass


def contains_delta_clique(g: Graph, delta: int | None = None) -> bool:
    """Exact test for a clique on ``delta`` vertices (``delta = Δ(G)`` by default).

    A vertex of such a clique has degree ``delta - 1`` or ``delta``; in the
    latter case all non-edges of its neighbourhood meet one vertex.
    """
    if delta is None:
        delta = g.delta
    if delta <= 1:
        return g.n >= delta
    bits = g.bitsets
    for v in range(g.n):
        d = g.degree(v)
        if d < delta - 1:
            continue
        nmask = bits[v]
        missing = {}
        for u in g.adjacency[v]:
            k = (nmask & ~bits[u] & ~(1 << u)).bit_count()
            if k:
                missing[u] = k
        if d == delta - 1:
            if not missing:
                return True
            continue
        # d == delta: drop one vertex x so that the rest is a clique
        total = sum(missing.values()) // 2
        if total == 0:
            return True
        if any(k == total for k in missing.values()):
            return True
    return False


def greedy_coloring(g: Graph) -> Coloring:
    """Smallest-last (degeneracy order) greedy coloring."""
    import networkx as nx

    if g.n == 0:
        return Coloring((), 1)
    raw = nx.coloring.greedy_color(g.to_networkx(), strategy="smallest_last")
    colors = tuple(raw[v] + 1 for v in range(g.n))
    return Coloring(colors, max(colors))


def _brooks_all(g: Graph) -> Coloring:
    colors = [0] * g.n
    for comp in g.components():
        piece, ids = g.subgraph(comp)
        local = brooks_coloring(piece)
        for i, old in enumerate(ids):
            colors[old] = local.assignment[i]
    return Coloring(tuple(colors), max(colors, default=1))


def _run_pipeline(g: Graph, config: PipelineConfig, q: int, report: PipelineReport) -> Coloring:
    clock = time.perf_counter
    t0 = clock()
    core, core_ids, stack = peel_low_degree(g, g.delta)
    report.core_size, report.peeled = core.n, len(stack)
    report.wall_time["peel"] = clock() - t0

    core_colors: list[int] = []
    if core.n:
        t0 = clock()
        params = config.params or default_params(max(g.delta, 1))
        # size thresholds follow G's maximum degree, which the core may not attain
        partition = build_partition(core, params, delta=g.delta)
        report.partition = partition
        report.num_dense_sets = len(partition.dense_sets)
        report.num_near_cliques = len(partition.near_clique_indices)
        report.leftover_size = len(partition.leftover)
        report.num_events = len(event_family(partition))
        report.wall_time["decompose"] = clock() - t0

        t0 = clock()
        cap = config.resample_cap or default_cap(report.num_events, g.delta)
        report.resample_cap = cap
        phi, trace = moser_tardos(core, partition, q, RandomSource(config.seed), cap)
        report.trace = trace
        report.resample_steps = trace.total_steps
        report.terminated = trace.terminated
        report.wall_time["resample"] = clock() - t0
        if not trace.terminated:
            raise PipelineFailure(f"resampling cap exhausted after {trace.total_steps} steps")

        t0 = clock()
        violations = check_extension_preconditions(core, partition, phi, q)
        if violations:
            raise PipelineFailure(f"extension preconditions violated: {violations[0]}")
        core_colors = list(extend_coloring(core, partition, phi, q).assignment)
        report.wall_time["extend"] = clock() - t0
    else:
        report.terminated = True

    t0 = clock()
    full = reinsert_and_color(core_colors, core_ids, stack, g, q)
    report.wall_time["reinsert"] = clock() - t0
    return full


def color_graph(g: Graph, config: PipelineConfig | None = None) -> tuple[Coloring, PipelineReport]:
    """Color ``g`` and return the verified coloring with its report.

    ``auto`` runs the resampling pipeline with palette ``delta - 1`` when
    ``delta`` reaches ``pipeline_floor`` and no ``delta``-clique exists;
    otherwise, and whenever a pipeline stage fails, it falls back to a
    Brooks coloring with at most ``max(delta, omega)`` colors.
    """
    config = config or PipelineConfig()
    clock = time.perf_counter
    start = clock()
    delta = g.delta
    report = PipelineReport(mode_requested=config.mode, n=g.n, m=g.m, delta=delta)
    q = config.q_override or max(delta - 1, 1)
    report.q_target = q
    mode = config.mode

    if mode == "exact" and g.n > config.oracle_cutoff:
        raise ValueError(f"exact mode needs n <= {config.oracle_cutoff}, got {g.n}")

    if mode == "auto":
        t0 = clock()
        report.omega_at_least_delta = delta >= 1 and contains_delta_clique(g)
        report.wall_time["route"] = clock() - t0
        if report.omega_at_least_delta or delta < config.pipeline_floor:
            mode = "brooks"
        else:
            mode = "pipeline"

    if mode == "pipeline":
        try:
            coloring = _run_pipeline(g, config, q, report)
            report.mode_used = "pipeline"
        except (PipelineFailure, ExtensionError) as exc:
            logger.info("pipeline fell back to Brooks: %s", exc)
            report.fallback_taken = True
            report.fallback_reason = str(exc)
            t0 = clock()
            coloring = _brooks_all(g)
            report.wall_time["brooks"] = clock() - t0
            report.mode_used = "brooks"
    elif mode == "brooks":
        t0 = clock()
        coloring = _brooks_all(g)
        report.wall_time["brooks"] = clock() - t0
        report.mode_used = "brooks"
    elif mode == "greedy":
        coloring = greedy_coloring(g)
        report.mode_used = "greedy"
    else:
        t0 = clock()
        _, coloring = brute_force_chromatic(g, limit=max(g.n, 1), cutoff=config.oracle_cutoff)
        if g.n == 0:
            coloring = Coloring((), 1)
        report.wall_time["exact"] = clock() - t0
        report.mode_used = "exact"

    verdict = verify_coloring(g, coloring)
    if not verdict.proper:
        raise AssertionError(f"{report.mode_used} produced an improper coloring: {verdict}")
    report.verification = str(verdict)
    report.colors_used = coloring.colors_used
    report.target_met = report.colors_used <= max(delta - 1, 0) or g.n == 0
    report.wall_time["total"] = clock() - start
    return coloring, report
