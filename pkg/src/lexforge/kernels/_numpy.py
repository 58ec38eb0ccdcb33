"""Vectorised reference kernels (no JIT)."""

import numpy as np
import scipy.sparse as sp


def closed_overlap(indptr, indices):
    """Size of the shared closed neighbourhood ``|(N[i]+i) & (N[j]+j)|`` for
    every stored entry (i, j) of a symmetric 0/1 pattern, aligned with
    ``indices``."""
    n = len(indptr) - 1
    nnz = len(indices)
    if nnz == 0:
        return np.zeros(0)
    a = sp.csr_matrix((np.ones(nnz), indices, indptr), shape=(n, n))
    a = a + sp.identity(n, format="csr")
    prod = (a @ a).tocsr()
    rows = np.repeat(np.arange(n), np.diff(indptr))
    return np.asarray(prod[rows, indices]).ravel()


def power_step(indptr, indices, weights, inv_deg, dangling, e, alpha, x):
    """One iteration of ``x <- alpha*P x + (alpha*dangling_mass + 1-alpha) e``.

    ``weights`` is the symmetric adjacency in CSR; column-stochastic
    ``P = W D^-1`` is applied as a gather over each row.
    """
    n = len(indptr) - 1
    y = x * inv_deg
    rows = np.repeat(np.arange(n), np.diff(indptr))
    walk = np.bincount(rows, weights=weights * y[indices], minlength=n)
    dmass = x[dangling].sum()
    return alpha * walk + (alpha * dmass + (1.0 - alpha)) * e


def power_iterate(indptr, indices, weights, inv_deg, dangling, e, alpha, tol, max_iter, x0):
    """Iterate from ``x0`` until the L1 change drops below ``tol``.

    Returns ``(x, iterations, residual)``.
    """
    x = x0.copy()
    residual = np.inf
    it = 0
    while it < max_iter:
        nxt = power_step(indptr, indices, weights, inv_deg, dangling, e, alpha, x)
        residual = np.abs(nxt - x).sum()
        x = nxt
        it += 1
        if residual < tol:
            break
    return x, it, residual
