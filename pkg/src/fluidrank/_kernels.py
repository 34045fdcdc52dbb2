"""Compiled inner loops of the diffusion engine.

All kernels mutate ``h`` and ``f`` in place and return
``(status, coordinate_uses, cursor, diffusions, trace_uses, trace_residual)``.
``status`` is 0 on success and -1 when a non-finite amount was met.
``threshold < 0`` selects the quantized stopping rule (no eligible node);
otherwise the run stops once ``|f|_1 <= threshold``.
"""

import numpy as np
from numba import njit

DUST = 1e-12
# greedy treats fluids this close (relative) to the max as tied; ties go to the smallest id
TIE = 1e-12


@njit(cache=True)
def diffusible_amount(fi, beta):
    if beta == 0.0:
        return fi if fi > 0.0 else 0.0
    return np.floor(fi / beta + DUST) * beta


@njit(cache=True)
def apply_diffusion(i, a, indptr, indices, d, h, f):
    """Move ``a`` from ``f[i]`` to ``h[i]`` and push ``a*d/outdeg`` downstream."""
    h[i] += a
    rest = f[i] - a
    f[i] = rest if rest > 0.0 else 0.0
    start = indptr[i]
    deg = indptr[i + 1] - start
    if deg > 0:
        share = a * d / deg
        for k in range(start, start + deg):
            f[indices[k]] += share
    return deg


@njit(cache=True)
def _loss(a, deg, d):
    return a if deg == 0 else a * (1.0 - d)


@njit(cache=True)
def _done(res, threshold, f):
    # incremental residual drifts; confirm with an exact sum
    if res > threshold:
        return False, res
    exact = f.sum()
    return exact <= threshold, exact


@njit(cache=True)
def run_cyclic(indptr, indices, d, beta, h, f, uses, cursor, threshold, n_edges):
    n = f.shape[0]
    diffusions = 0
    res = f.sum()
    trace_uses = [uses]
    trace_res = [res]
    next_mark = (uses // n_edges + 1) * n_edges if n_edges > 0 else -1
    quantized = threshold < 0.0
    if not quantized:
        stop, res = _done(res, threshold, f)
        if stop:
            return 0, uses, cursor, diffusions, trace_uses, trace_res
    idle = 0
    while idle < n:
        i = cursor
        cursor += 1
        if cursor == n:
            cursor = 0
        a = diffusible_amount(f[i], beta)
        if a <= 0.0:
            idle += 1
            continue
        if not np.isfinite(a):
            return -1, uses, cursor, diffusions, trace_uses, trace_res
        idle = 0
        deg = apply_diffusion(i, a, indptr, indices, d, h, f)
        uses += deg
        diffusions += 1
        res -= _loss(a, deg, d)
        if next_mark > 0 and uses >= next_mark:
            trace_uses.append(uses)
            trace_res.append(res)
            next_mark = (uses // n_edges + 1) * n_edges
        if not quantized:
            stop, res = _done(res, threshold, f)
            if stop:
                break
    res = f.sum()
    if trace_uses[-1] != uses or trace_res[-1] != res:
        trace_uses.append(uses)
        trace_res.append(res)
    return 0, uses, cursor, diffusions, trace_uses, trace_res


@njit(cache=True)
def _greedy_pick(f):
    """Smallest id whose fluid is within rounding of the maximum."""
    top = f.max()
    cut = top - TIE * abs(top)
    for i in range(f.size):
        if f[i] >= cut:
            return i
    return 0


@njit(cache=True)
def run_greedy(indptr, indices, d, beta, h, f, uses, threshold, n_edges):
    diffusions = 0
    res = f.sum()
    trace_uses = [uses]
    trace_res = [res]
    next_mark = (uses // n_edges + 1) * n_edges if n_edges > 0 else -1
    quantized = threshold < 0.0
    while True:
        if not quantized:
            stop, res = _done(res, threshold, f)
            if stop:
                break
        i = _greedy_pick(f)
        a = diffusible_amount(f[i], beta)
        if a <= 0.0:
            break
        if not np.isfinite(a):
            return -1, uses, 0, diffusions, trace_uses, trace_res
        deg = apply_diffusion(i, a, indptr, indices, d, h, f)
        uses += deg
        diffusions += 1
        res -= _loss(a, deg, d)
        if next_mark > 0 and uses >= next_mark:
            trace_uses.append(uses)
            trace_res.append(res)
            next_mark = (uses // n_edges + 1) * n_edges
    res = f.sum()
    if trace_uses[-1] != uses or trace_res[-1] != res:
        trace_uses.append(uses)
        trace_res.append(res)
    return 0, uses, 0, diffusions, trace_uses, trace_res


@njit(cache=True)
def run_sync(indptr, indices, d, beta, h, f, uses, threshold, n_edges):
    n = f.shape[0]
    diffusions = 0
    res = f.sum()
    trace_uses = [uses]
    trace_res = [res]
    quantized = threshold < 0.0
    amounts = np.empty(n)
    pushed = np.empty(n)
    while True:
        if not quantized and res <= threshold:
            break
        active = 0
        for i in range(n):
            a = diffusible_amount(f[i], beta)
            if not np.isfinite(a):
                return -1, uses, 0, diffusions, trace_uses, trace_res
            amounts[i] = a
            if a > 0.0:
                active += 1
        if active == 0:
            break
        pushed[:] = 0.0
        for i in range(n):
            a = amounts[i]
            if a <= 0.0:
                continue
            h[i] += a
            rest = f[i] - a
            f[i] = rest if rest > 0.0 else 0.0
            start = indptr[i]
            deg = indptr[i + 1] - start
            if deg > 0:
                share = a * d / deg
                for k in range(start, start + deg):
                    pushed[indices[k]] += share
            uses += deg
        for j in range(n):
            f[j] += pushed[j]
        diffusions += active
        res = f.sum()
        trace_uses.append(uses)
        trace_res.append(res)
    return 0, uses, 0, diffusions, trace_uses, trace_res
