"""scikit-learn style wrappers around the coloring pipeline and the decomposition."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decomposition import DecompositionParams, audit_partition, build_partition, default_params
from .pipeline import PipelineConfig, color_graph
from .validation import check_graph


def _params(delta: int, density_threshold, near_clique_ratio, min_clique_fraction) -> DecompositionParams:
    base = default_params(max(delta, 1))
    return DecompositionParams(
        base.density_threshold if density_threshold is None else int(density_threshold),
        Fraction(near_clique_ratio).limit_denominator(10**6),
        Fraction(min_clique_fraction).limit_denominator(10**6),
    )


class GraphColorer(ClusterMixin, BaseEstimator):
    """Proper vertex coloring; colors are exposed as cluster labels.

    Parameters
    ----------
    mode : {"auto", "pipeline", "greedy", "brooks", "exact"}
        ``auto`` targets ``delta - 1`` colors through resampling and greedy
        extension when the graph allows it and falls back to Brooks.
    q : int or None
        Palette for the pipeline; ``None`` means ``delta - 1``.
    seed : int
        Key of the counter-based generator.
    resample_cap : int or None
        Maximum resampling steps; ``None`` derives it from the event count.
    pipeline_floor : int
        Below this maximum degree ``auto`` goes straight to Brooks.
    density_threshold, near_clique_ratio, min_clique_fraction
        Decomposition thresholds; ``density_threshold=None`` uses
        ``floor(delta^2/50 - delta/10)``.

    Attributes
    ----------
    labels_ : ndarray of shape (n_vertices,)
        Colors in ``1..n_colors_``.
    coloring_ : Coloring
    report_ : PipelineReport
    n_colors_ : int
    """

    def __init__(
        self,
        mode: str = "auto",
        q: int | None = None,
        seed: int = 0,
        resample_cap: int | None = None,
        pipeline_floor: int = 20,
        density_threshold: int | None = None,
        near_clique_ratio: float = 0.8,
        min_clique_fraction: float = 0.8,
    ):
        self.mode = mode
        self.q = q
        self.seed = seed
        self.resample_cap = resample_cap
        self.pipeline_floor = pipeline_floor
        self.density_threshold = density_threshold
        self.near_clique_ratio = near_clique_ratio
        self.min_clique_fraction = min_clique_fraction

    def fit(self, X, y=None):
        g = check_graph(X)
        config = PipelineConfig(
            mode=self.mode,
            q_override=self.q,
            seed=self.seed,
            resample_cap=self.resample_cap,
            pipeline_floor=self.pipeline_floor,
            params=_params(g.delta, self.density_threshold, self.near_clique_ratio, self.min_clique_fraction),
        )
        self.coloring_, self.report_ = color_graph(g, config)
        self.labels_ = np.asarray(self.coloring_.assignment, dtype=np.int64)
        self.n_colors_ = self.coloring_.colors_used
        self.n_vertices_ = g.n
        return self

    def score(self, X, y=None) -> float:
        """Negative number of colors used, so larger is better."""
        check_is_fitted(self, "labels_")
        return -float(self.n_colors_)


class CliqueDecomposer(TransformerMixin, BaseEstimator):
    """Partition vertices into cliques, near-cliques and leftovers.

    ``transform`` returns, per vertex, ``[set_index, role]`` where
    ``set_index`` is ``-1`` for leftover vertices and ``role`` is 0 for
    leftover, 1 for a clique member and 2 for a special vertex.
    """

    def __init__(self, density_threshold: int | None = None, near_clique_ratio: float = 0.8, min_clique_fraction: float = 0.8, audit: bool = True):
        self.density_threshold = density_threshold
        self.near_clique_ratio = near_clique_ratio
        self.min_clique_fraction = min_clique_fraction
        self.audit = audit

    def fit(self, X, y=None):
        g = check_graph(X)
        self.params_ = _params(g.delta, self.density_threshold, self.near_clique_ratio, self.min_clique_fraction)
        self.partition_ = build_partition(g, self.params_)
        self.findings_ = audit_partition(g, self.partition_) if self.audit else []
        self.n_vertices_ = g.n
        return self

    def transform(self, X):
        check_is_fitted(self, "partition_")
        g = check_graph(X)
        if g.n != self.n_vertices_:
            raise ValueError(f"fitted on {self.n_vertices_} vertices, got {g.n}")
        out = np.zeros((g.n, 2), dtype=np.int64)
        out[:, 0] = -1
        for i, s in enumerate(self.partition_.dense_sets):
            out[list(s.clique), 0] = i
            out[list(s.clique), 1] = 1
            if s.special is not None:
                out[s.special] = (i, 2)
        return out
