"""Scikit-learn style ranking estimators.

Each estimator is fitted on a graph (a :class:`~fluidrank.graph.Graph` or a
square adjacency matrix) and exposes the per-node ``scores_`` plus the cost
of the computation. ``fit_transform`` returns the scores.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .analysis import canonical_order, fr_scores, loc_scores, scale_history
from .diffusion import Custom, DiffusionConfig, Uniform, run_diffusion
from .validation import check_damping, check_graph, check_initial_fluid


class _RankerMixin:
    def fit_transform(self, X, y=None):
        return self.fit(X, y).scores_

    def transform(self, X=None):
        """Return the fitted scores. ``X`` is ignored; scores belong to the fitted graph."""
        check_is_fitted(self, "scores_")
        return self.scores_

    @property
    def ranking_(self):
        check_is_fitted(self, "scores_")
        return canonical_order(self.scores_)

    def _store_run(self, result):
        self.history_ = result.h
        self.fluid_ = result.f
        self.n_diffusions_ = result.diffusions
        self.coordinate_uses_ = result.coordinate_uses
        self.cost_ = result.cost_iterations
        self.trace_ = result.trace


class FluidRank(_RankerMixin, BaseEstimator):
    """Integer-part diffusion ranking.

    Starting from fluid ``alpha`` at every node (or ``initial_fluid``), only
    whole multiples of ``beta`` are ever diffused, so the run ends after a
    finite number of diffusions. Scores are ``history + fluid`` or, with
    ``score="h"``, the history alone.

    Parameters
    ----------
    damping : float, default=0.85
    alpha : float, default=1.0
        Initial fluid per node. Larger values move the ranking towards
        PageRank; ``pagerank_estimate_`` is within ``1 / (alpha - 1)`` of it in L1.
    beta : float, default=1.0
        Diffusion quantum.
    schedule : {"cyclic", "greedy", "sync"}, default="cyclic"
    score : {"h+f", "h"}, default="h+f"
    initial_fluid : array-like of shape (n_nodes,), default=None
        Personalized starting fluid; overrides ``alpha``.

    Attributes
    ----------
    scores_, history_, fluid_ : ndarray of shape (n_nodes,)
    pagerank_estimate_ : ndarray of shape (n_nodes,)
        ``history_`` rescaled by ``(1 - damping) / (alpha * n_nodes)``.
    cost_ : float
        Coordinate uses of the transition matrix divided by the edge count.
    n_diffusions_ : int
    trace_ : ConvergenceTrace
    """

    def __init__(self, damping=0.85, alpha=1.0, beta=1.0, schedule="cyclic",
                 score="h+f", initial_fluid=None):
        self.damping = damping
        self.alpha = alpha
        self.beta = beta
        self.schedule = schedule
        self.score = score
        self.initial_fluid = initial_fluid

    def fit(self, X, y=None):
        g = check_graph(X)
        d = check_damping(self.damping)
        if self.score not in ("h+f", "h"):
            raise ValueError(f"score must be 'h+f' or 'h', got {self.score!r}")
        if not self.beta > 0:
            raise ValueError("FluidRank needs beta > 0; use PageRank for full diffusion")
        if self.initial_fluid is None:
            f0 = Uniform(self.alpha)
        else:
            f0 = Custom(check_initial_fluid(self.initial_fluid, g.n))
        cfg = DiffusionConfig(d=d, beta=self.beta, initial_fluid=f0, schedule=self.schedule)
        result = run_diffusion(g, cfg)
        self._store_run(result)
        self.scores_ = fr_scores(result, include_fluid=self.score == "h+f").scores
        self.pagerank_estimate_ = (
            scale_history(result.h, self.alpha, d, g.n) if g.n else np.zeros(0)
        )
        self.n_nodes_ = g.n
        return self


class PageRank(_RankerMixin, BaseEstimator):
    """PageRank by full-fluid diffusion.

    ``solver="diteration"`` diffuses node by node (D-iteration);
    ``solver="jacobi"`` diffuses all nodes in synchronous rounds, which is
    the classical Jacobi iteration. Both stop when the remaining fluid
    guarantees an L1 error of at most ``epsilon`` (``None`` means ``1 / n``).

    Dangling nodes absorb what they receive, so scores sum to less than one
    when the graph has dangling nodes.
    """

    def __init__(self, damping=0.85, epsilon=None, solver="diteration",
                 stop_rule="bounded", personalization=None):
        self.damping = damping
        self.epsilon = epsilon
        self.solver = solver
        self.stop_rule = stop_rule
        self.personalization = personalization

    def fit(self, X, y=None):
        g = check_graph(X)
        d = check_damping(self.damping)
        schedules = {"diteration": "cyclic", "greedy": "greedy", "jacobi": "sync"}
        if self.solver not in schedules:
            raise ValueError(f"solver must be one of {sorted(schedules)}, got {self.solver!r}")
        n = max(g.n, 1)
        epsilon = 1.0 / n if self.epsilon is None else self.epsilon
        if self.personalization is None:
            f0 = np.full(g.n, (1.0 - d) / n)
        else:
            f0 = check_initial_fluid(self.personalization, g.n)
        cfg = DiffusionConfig(
            d=d, beta=0.0, initial_fluid=Custom(f0), epsilon=epsilon,
            schedule=schedules[self.solver], stop_rule=self.stop_rule,
        )
        result = run_diffusion(g, cfg)
        self._store_run(result)
        self.scores_ = result.h
        self.epsilon_ = epsilon
        self.n_nodes_ = g.n
        return self


class InDegreeRank(_RankerMixin, BaseEstimator):
    """Rank nodes by their number of incoming links."""

    def fit(self, X, y=None):
        g = check_graph(X)
        self.scores_ = loc_scores(g).scores
        self.cost_ = 0.0
        self.n_diffusions_ = 0
        self.n_nodes_ = g.n
        return self
