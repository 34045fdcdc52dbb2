"""Input validation helpers for the estimator API."""

import numbers

import numpy as np
import scipy.sparse as sp

from .graph import Graph


def check_graph(X):
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, or a square adjacency matrix (dense or scipy
    sparse) where a non-zero ``X[i, j]`` is an edge ``i -> j``. Weights are
    ignored.
    """
    if isinstance(X, Graph):
        return X
    if sp.issparse(X):
        X = sp.coo_array(X)
        if X.shape[0] != X.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
        mask = X.data != 0
        return Graph.from_edges(np.column_stack([X.row[mask], X.col[mask]]), n=X.shape[0])
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
    return Graph.from_edges(np.argwhere(X != 0), n=X.shape[0])


def check_damping(d):
    if not isinstance(d, numbers.Real) or not 0.0 < d < 1.0:
        raise ValueError(f"damping must lie in (0, 1), got {d!r}")
    return float(d)


def check_initial_fluid(v, n):
    v = np.asarray(v, dtype=float)
    if v.shape != (n,):
        raise ValueError(f"initial fluid has shape {v.shape}, expected ({n},)")
    if (v < 0).any() or not np.isfinite(v).all():
        raise ValueError("initial fluid must be finite and non-negative")
    return v
