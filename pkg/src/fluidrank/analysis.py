"""Score vectors, PageRank error bounds and top-k overlap."""

from dataclasses import dataclass

import numpy as np

METHODS = ("FR", "H_only", "PR", "LOC")


@dataclass(frozen=True, eq=False)
class RankVector:
    """Per-node scores. Ordered by score descending, then node id ascending."""

    scores: np.ndarray
    method: str

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float)
        if scores.ndim != 1:
            raise ValueError("scores must be one-dimensional")
        if not np.isfinite(scores).all():
            raise ValueError("scores must be finite")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        object.__setattr__(self, "scores", scores)

    def __len__(self):
        return self.scores.shape[0]

    def order(self):
        return canonical_order(self.scores)


def canonical_order(scores):
    """Node ids sorted by score descending, ties broken by ascending id."""
    scores = np.asarray(scores, dtype=float)
    return np.lexsort((np.arange(scores.shape[0]), -scores))


def _check_lengths(a, b):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")


def fr_scores(result, include_fluid=True):
    """Ranking from a finished quantized run: ``h + f``, or ``h`` alone."""
    h = np.asarray(result.h, dtype=float)
    if not include_fluid:
        return RankVector(h.copy(), "H_only")
    f = np.asarray(result.f, dtype=float)
    _check_lengths(h, f)
    return RankVector(h + f, "FR")


def loc_scores(g):
    """In-degree ranking."""
    return RankVector(g.in_degree.astype(float), "LOC")


def scale_history(h, alpha, d, n):
    """Rescale FI history to the PageRank scale: ``h * (1-d) / (alpha * n)``."""
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    return np.asarray(h, dtype=float) * ((1.0 - d) / (alpha * n))


def l1_distance(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_lengths(a, b)
    return float(np.abs(a - b).sum())


@dataclass(frozen=True)
class BoundReport:
    l1_error: float
    bound: float
    componentwise_ok: bool
    max_violation: float
    tolerance: float = 0.0

    @property
    def l1_ok(self):
        return self.l1_error <= self.bound + self.tolerance

    @property
    def ok(self):
        return self.componentwise_ok and self.l1_ok


def check_theorem_bound(x, h, alpha, d, tolerance=0.0):
    """Check the FI approximation of PageRank against its error bound.

    With ``s = h * (1-d) / (alpha * n)`` the scaled history of an FI run
    started from ``alpha * 1``, PageRank ``x`` satisfies componentwise
    ``0 <= x - s <= s / (alpha - 1)`` and hence ``|x - s|_1 <= 1 / (alpha - 1)``.
    ``tolerance`` absorbs the precision at which ``x`` itself was computed.
    For ``alpha <= 1`` the bound is infinite and only ``x >= s`` is checked.
    """
    xs = x.scores if isinstance(x, RankVector) else np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    _check_lengths(xs, h)
    n = xs.shape[0]
    scaled = scale_history(h, alpha, d, n)
    gap = xs - scaled
    if alpha > 1:
        bound = 1.0 / (alpha - 1.0)
        upper = gap - scaled / (alpha - 1.0)
    else:
        bound = np.inf
        upper = np.zeros_like(gap)
    violation = np.maximum(-gap, upper)
    max_violation = float(max(violation.max(), 0.0)) if n else 0.0
    return BoundReport(
        l1_error=float(np.abs(gap).sum()),
        bound=bound,
        componentwise_ok=bool(max_violation <= tolerance),
        max_violation=max_violation,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class OverlapCurve:
    fractions: tuple
    overlaps: tuple

    @property
    def points(self):
        return list(zip(self.fractions, self.overlaps))


def top_k(scores, k):
    return canonical_order(scores)[:k]


def top_overlap(a, b, fractions):
    """Share of common nodes between the top ``max(1, floor(f * n))`` of two rankings."""
    sa = a.scores if isinstance(a, RankVector) else np.asarray(a, dtype=float)
    sb = b.scores if isinstance(b, RankVector) else np.asarray(b, dtype=float)
    _check_lengths(sa, sb)
    n = sa.shape[0]
    if n == 0:
        raise ValueError("cannot compare empty rankings")
    order_a, order_b = canonical_order(sa), canonical_order(sb)
    fracs, overlaps = [], []
    for frac in fractions:
        if not 0.0 < frac <= 1.0:
            raise ValueError(f"fraction must lie in (0, 1], got {frac}")
        # tolerate 0.29 * 100 = 28.999999999999996
        k = max(1, int(np.floor(frac * n + 1e-9)))
        common = np.intersect1d(order_a[:k], order_b[:k], assume_unique=True).size
        fracs.append(float(frac))
        overlaps.append(common / k)
    return OverlapCurve(tuple(fracs), tuple(overlaps))
