"""JIT-compiled kernels; semantics match :mod:`lexforge.kernels._numpy`."""

import numpy as np
from numba import njit


@njit(cache=True)
def _sorted_intersection(a, b):
    i = 0
    j = 0
    count = 0
    while i < a.shape[0] and j < b.shape[0]:
        if a[i] == b[j]:
            count += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return count


@njit(cache=True)
def closed_overlap(indptr, indices):
    # rows must have sorted column indices
    n = indptr.shape[0] - 1
    out = np.zeros(indices.shape[0], dtype=np.float64)
    for i in range(n):
        row_i = indices[indptr[i]:indptr[i + 1]]
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            row_j = indices[indptr[j]:indptr[j + 1]]
            # i is in N[j] and j is in N[i]; the self terms add exactly 2
            out[p] = _sorted_intersection(row_i, row_j) + 2.0
    return out


@njit(cache=True)
def _step_into(indptr, indices, weights, inv_deg, dangling, e, alpha, x, out):
    n = indptr.shape[0] - 1
    dmass = 0.0
    for i in range(n):
        if dangling[i]:
            dmass += x[i]
    tele = alpha * dmass + (1.0 - alpha)
    for j in range(n):
        acc = 0.0
        for p in range(indptr[j], indptr[j + 1]):
            i = indices[p]
            acc += weights[p] * x[i] * inv_deg[i]
        out[j] = alpha * acc + tele * e[j]


@njit(cache=True)
def power_step(indptr, indices, weights, inv_deg, dangling, e, alpha, x):
    out = np.empty_like(x)
    _step_into(indptr, indices, weights, inv_deg, dangling, e, alpha, x, out)
    return out


@njit(cache=True)
def power_iterate(indptr, indices, weights, inv_deg, dangling, e, alpha, tol, max_iter, x0):
    x = x0.copy()
    nxt = np.empty_like(x)
    residual = np.inf
    it = 0
    while it < max_iter:
        _step_into(indptr, indices, weights, inv_deg, dangling, e, alpha, x, nxt)
        residual = 0.0
        for k in range(x.shape[0]):
            residual += abs(nxt[k] - x[k])
        x, nxt = nxt, x
        it += 1
        if residual < tol:
            break
    return x, it, residual
