"""Input coercion so the estimators accept the usual graph containers."""
from __future__ import annotations

from typing import Any

import numpy as np

from .graph import Graph


def check_graph(X: Any) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a :class:`Graph`, a networkx graph, a square dense or scipy
    sparse adjacency matrix (non-zero = edge), or a sequence of adjacency
    lists. The diagonal of a matrix must be zero.
    """
    if isinstance(X, Graph):
        return X
    try:
        import networkx as nx
    except ImportError:  # pragma: no cover
        nx = None
    if nx is not None and isinstance(X, nx.Graph):
        if X.is_directed() or X.is_multigraph():
            raise ValueError("only simple undirected graphs are supported")
        nodes = sorted(X.nodes) if all(isinstance(v, int) for v in X.nodes) else list(X.nodes)
        index = {v: i for i, v in enumerate(nodes)}
        return Graph(len(nodes), ((index[u], index[v]) for u, v in X.edges))
    try:
        import scipy.sparse as sp
    except ImportError:  # pragma: no cover
        sp = None
    if sp is not None and sp.issparse(X):
        A = sp.coo_matrix(X)
        _check_square(A.shape)
        if np.any((A.row == A.col) & (A.data != 0)):
            raise ValueError("adjacency matrix has non-zero diagonal (self-loops)")
        _check_symmetric_sparse(A)
        return Graph(A.shape[0], ((int(i), int(j)) for i, j, x in zip(A.row, A.col, A.data) if x != 0 and i < j))
    if isinstance(X, np.ndarray) or (isinstance(X, (list, tuple)) and X and isinstance(X[0], (list, tuple, np.ndarray)) and len(X[0]) == len(X) and _looks_binary(X)):
        A = np.asarray(X)
        if A.ndim != 2:
            raise ValueError(f"expected a 2-d adjacency matrix, got shape {A.shape}")
        _check_square(A.shape)
        if np.any(np.diag(A) != 0):
            raise ValueError("adjacency matrix has non-zero diagonal (self-loops)")
        if not np.array_equal(A != 0, (A != 0).T):
            raise ValueError("adjacency matrix is not symmetric")
        rows, cols = np.nonzero(np.triu(A != 0, 1))
        return Graph(A.shape[0], zip(rows.tolist(), cols.tolist()))
    if isinstance(X, (list, tuple)):
        return Graph.from_adjacency(X)
    raise TypeError(f"cannot interpret {type(X).__name__} as a graph")


def _looks_binary(X) -> bool:
    return all(all(x in (0, 1, True, False) for x in row) for row in X)


def _check_square(shape) -> None:
    if len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {shape}")


def _check_symmetric_sparse(A) -> None:
    pairs = {(int(i), int(j)) for i, j, x in zip(A.row, A.col, A.data) if x != 0}
    if any((j, i) not in pairs for i, j in pairs):
        raise ValueError("adjacency matrix is not symmetric")


def check_palette(q: int | None, delta: int) -> int:
    if q is None:
        return max(delta - 1, 1)
    if int(q) != q or q < 1:
        raise ValueError(f"palette size must be a positive integer, got {q!r}")
    return int(q)
