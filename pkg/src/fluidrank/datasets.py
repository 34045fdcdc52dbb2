"""Random graph generators for tests and benchmarks."""

import numpy as np
from sklearn.utils import check_random_state

from .graph import Graph


def make_random_graph(n, p, random_state=None):
    """Directed Erdos-Renyi graph: each ordered pair ``(i, j)`` is an edge with probability ``p``."""
    rng = check_random_state(random_state)
    mask = rng.random_sample((n, n)) < p
    return Graph.from_edges(np.argwhere(mask), n=n)


def make_web_graph(n, avg_out=12.9, dangling=0.041, self_loops=0.236, intra_host=0.8,
                   mean_host_size=25, in_exponent=1.0, out_exponent=1.0, random_state=None):
    """Random graph with web-crawl-like structure.

    Nodes are grouped into consecutive "hosts" of geometric size. ``avg_out * n``
    links are drawn with sources proportional to ``rank ** -out_exponent`` over
    randomly permuted ranks; a share ``intra_host`` of them stay inside the
    source's host (uniform target), the rest pick a global target proportional
    to ``rank ** -in_exponent``. A ``dangling`` share of nodes lose all
    out-links, every other node keeps at least one, and a ``self_loops`` share
    of non-dangling nodes link to themselves. Duplicate draws collapse, so the
    final edge count is below ``avg_out * n``.

    Defaults follow the first-thousand-node prefix of a uk-2007 web crawl
    (link density, dangling and self-loop shares).
    """
    rng = check_random_state(random_state)

    sizes = []
    while sum(sizes) < n:
        sizes.append(int(rng.geometric(1.0 / mean_host_size)) + 1)
    host = np.repeat(np.arange(len(sizes)), sizes)[:n]
    host_start = np.concatenate([[0], np.cumsum(sizes)])

    def zipf_weights(exponent):
        w = rng.permutation((np.arange(n) + 1.0) ** -exponent)
        return w / w.sum()

    w_in, w_out = zipf_weights(in_exponent), zipf_weights(out_exponent)
    m = int(round(avg_out * n))
    src = rng.choice(n, size=m, p=w_out)
    dst = rng.choice(n, size=m, p=w_in)
    local = rng.random_sample(m) < intra_host
    h = host[src[local]]
    lo, hi = host_start[h], np.minimum(host_start[h + 1], n)
    dst[local] = lo + (rng.random_sample(lo.size) * (hi - lo)).astype(np.int64)

    is_dangling = rng.random_sample(n) < dangling
    keep = ~is_dangling[src]
    orphans = np.setdiff1d(np.flatnonzero(~is_dangling), src[keep])
    src = np.concatenate([src[keep], orphans])
    dst = np.concatenate([dst[keep], rng.choice(n, size=orphans.size, p=w_in)])
    loops = np.flatnonzero((rng.random_sample(n) < self_loops) & ~is_dangling)
    edges = np.vstack([np.column_stack([src, dst]), np.column_stack([loops, loops])])
    return Graph.from_edges(edges, n=n)
