"""Fluid diffusion engine.

A run keeps a history vector ``h`` and a fluid vector ``f``. Diffusing node
``i`` moves an amount ``a`` of its fluid into its history and spreads
``a * d / outdeg(i)`` to each successor. The granularity ``beta`` picks the
amount:

* ``beta > 0``: only whole multiples of ``beta`` move, ``a = floor(f_i / beta) * beta``.
  The run stops after finitely many diffusions, once every ``f_i < beta``.
  ``beta = 1`` with ``f0 = alpha * 1`` gives the integer-part ranking (FI).
* ``beta = 0``: all fluid moves (D-iteration). The run stops once
  ``|f|_1 <= epsilon * (1 - d)``, which bounds the L1 distance of ``h`` to its
  limit by ``epsilon``.

Schedules: ``cyclic`` sweeps ``0..n-1`` repeatedly, ``greedy`` always picks
the largest fluid (smallest id on ties), ``sync`` diffuses every node at
once from the previous fluid vector (Jacobi rounds).

Cost is counted in coordinate uses of the transition matrix: diffusing node
``i`` costs ``outdeg(i)``. One iteration is ``L`` coordinate uses.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .analysis import RankVector
from .exceptions import IneligibleNodeError, NumericError

SCHEDULES = ("cyclic", "greedy", "sync")
STOP_RULES = ("bounded", "naive")


@dataclass(frozen=True)
class Uniform:
    """Initial fluid ``alpha`` at every node."""

    alpha: float = 1.0

    def vector(self, n):
        return np.full(n, float(self.alpha))


@dataclass(frozen=True, eq=False)
class Custom:
    """Arbitrary non-negative initial fluid (personalization vector)."""

    v: np.ndarray

    def vector(self, n):
        v = np.array(self.v, dtype=float)
        if v.shape != (n,):
            raise ValueError(f"initial fluid has shape {v.shape}, expected ({n},)")
        return v


@dataclass(frozen=True)
class DiffusionConfig:
    d: float = 0.85
    beta: float = 1.0
    initial_fluid: object = field(default_factory=Uniform)
    epsilon: float = 1e-6
    schedule: str = "cyclic"
    stop_rule: str = "bounded"

    def __post_init__(self):
        if not 0.0 < self.d < 1.0:
            raise ValueError(f"damping must lie in (0, 1), got {self.d}")
        if not self.beta >= 0.0 or not np.isfinite(self.beta):
            raise ValueError(f"beta must be a finite value >= 0, got {self.beta}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}, got {self.schedule!r}")
        if self.stop_rule not in STOP_RULES:
            raise ValueError(f"stop_rule must be one of {STOP_RULES}, got {self.stop_rule!r}")
        if isinstance(self.initial_fluid, Uniform):
            if not self.initial_fluid.alpha > 0:
                raise ValueError("alpha must be > 0")
        elif isinstance(self.initial_fluid, Custom):
            v = np.asarray(self.initial_fluid.v, dtype=float)
            if v.ndim != 1 or (v < 0).any() or not np.isfinite(v).all():
                raise ValueError("custom initial fluid must be a finite non-negative vector")
        else:
            raise TypeError("initial_fluid must be Uniform or Custom")

    def threshold(self):
        """Residual level at which a ``beta = 0`` run stops; -1 for quantized runs."""
        if self.beta > 0:
            return -1.0
        if self.stop_rule == "naive":
            return self.epsilon
        return self.epsilon * (1.0 - self.d)


@dataclass
class DiffusionState:
    h: np.ndarray
    f: np.ndarray
    coordinate_uses: int = 0
    cursor: int = 0
    diffusions: int = 0

    @classmethod
    def start(cls, f0):
        f = np.array(f0, dtype=float)
        return cls(h=np.zeros_like(f), f=f)


@dataclass(frozen=True, eq=False)
class ConvergenceTrace:
    """Samples of ``(cost in iterations, |f|_1)`` along a run."""

    cost_iterations: np.ndarray
    residual: np.ndarray

    @property
    def samples(self):
        return list(zip(self.cost_iterations.tolist(), self.residual.tolist()))

    def __len__(self):
        return len(self.cost_iterations)


@dataclass(frozen=True, eq=False)
class DiffusionResult:
    h: np.ndarray
    f: np.ndarray
    coordinate_uses: int
    diffusions: int
    n_edges: int
    trace: ConvergenceTrace
    cursor: int = 0

    @property
    def cost_iterations(self):
        return self.coordinate_uses / self.n_edges if self.n_edges else 0.0


def diffuse_once(state, g, d, beta, i):
    """Diffuse node ``i`` in place and return ``state``.

    Raises :class:`IneligibleNodeError` when node ``i`` has nothing to diffuse
    (``f_i < beta``, or ``f_i == 0`` when ``beta == 0``).
    """
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")
    a = _kernels.diffusible_amount(state.f[i], float(beta))
    if not a > 0.0:
        raise IneligibleNodeError(f"node {i} holds {state.f[i]!r}, below granularity {beta!r}")
    if not np.isfinite(a):
        raise NumericError(f"non-finite fluid at node {i}")
    deg = _kernels.apply_diffusion(i, a, g.indptr, g.indices, float(d), state.h, state.f)
    state.coordinate_uses += int(deg)
    state.diffusions += 1
    return state


def run_diffusion(g, cfg, state=None):
    """Run the diffusion described by ``cfg`` on ``g`` until its stopping rule.

    A ``state`` from a previous run may be passed to resume it; otherwise the
    run starts from ``h = 0`` and ``f = cfg.initial_fluid``.
    """
    if state is None:
        state = DiffusionState.start(cfg.initial_fluid.vector(g.n))
    elif state.f.shape != (g.n,) or state.h.shape != (g.n,):
        raise ValueError("state does not match graph size")
    L = g.n_edges
    if g.n == 0:
        empty = ConvergenceTrace(np.zeros(1), np.zeros(1))
        return DiffusionResult(np.zeros(0), np.zeros(0), 0, 0, L, empty)

    h, f = state.h, state.f
    args = (g.indptr, g.indices, float(cfg.d), float(cfg.beta), h, f, int(state.coordinate_uses))
    threshold = cfg.threshold()
    with np.errstate(over="ignore", invalid="ignore"):
        if cfg.schedule == "cyclic":
            out = _kernels.run_cyclic(*args, int(state.cursor), threshold, L)
        elif cfg.schedule == "greedy":
            out = _kernels.run_greedy(*args, threshold, L)
        else:
            out = _kernels.run_sync(*args, threshold, L)
    status, uses, cursor, diffusions, trace_uses, trace_res = out
    if status != 0 or not (np.isfinite(h).all() and np.isfinite(f).all()):
        raise NumericError("diffusion produced non-finite values")

    state.coordinate_uses = int(uses)
    state.cursor = int(cursor)
    state.diffusions += int(diffusions)
    trace_cost = np.asarray(trace_uses, dtype=float) / L if L else np.zeros(len(trace_uses))
    trace = ConvergenceTrace(trace_cost, np.asarray(trace_res, dtype=float))
    return DiffusionResult(
        h=h.copy(), f=f.copy(), coordinate_uses=int(uses), diffusions=state.diffusions,
        n_edges=L, trace=trace, cursor=int(cursor),
    )


def pagerank_oracle(g, d, epsilon):
    """PageRank scores ``(1-d)/n (I-P)^-1 1`` to L1 precision ``epsilon``.

    Computed by full-fluid diffusion (``beta = 0``, cyclic) from
    ``f0 = (1-d)/n``.
    """
    if g.n < 1:
        raise ValueError("graph has no nodes")
    cfg = DiffusionConfig(
        d=d, beta=0.0, initial_fluid=Custom(np.full(g.n, (1.0 - d) / g.n)),
        epsilon=epsilon, schedule="cyclic",
    )
    return RankVector(run_diffusion(g, cfg).h, "PR")
