"""Builders shared by the test modules."""

import numpy as np

from lexforge.corpus_io import DepToken, ParsedSentence
from lexforge.graph import SynonymyGraph


def sentence(*rows) -> ParsedSentence:
    """rows: (surface, pos, head, deprel), ids assigned 1..n."""
    return ParsedSentence(tuple(DepToken(i, *row) for i, row in enumerate(rows, 1)))


def random_tree(rng: np.random.Generator, n: int) -> ParsedSentence:
    """Random dependency tree: each node attaches to an earlier node of a
    random permutation, then ids are shuffled by that permutation."""
    order = rng.permutation(n) + 1
    head = {int(order[0]): 0}
    for k in range(1, n):
        head[int(order[k])] = int(order[rng.integers(0, k)])
    rels = ["ATT", "SBV", "VOB", "ADV", "DE", "COO", "RAD"]
    tags = ["a", "n", "v", "u", "d", "i"]
    return sentence(*[(f"w{i}", tags[rng.integers(len(tags))], head[i], rels[rng.integers(len(rels))])
                      for i in range(1, n + 1)])


def graph_from_weights(w: np.ndarray, tags=None) -> SynonymyGraph:
    """Wrap a symmetric non-negative matrix (zero diagonal) as a graph."""
    n = w.shape[0]
    words = tuple(f"v{i:03d}" for i in range(n))
    indptr = [0]
    indices, weights = [], []
    for i in range(n):
        nz = np.nonzero(w[i])[0]
        indices.extend(nz)
        weights.extend(w[i, nz])
        indptr.append(len(indices))
    return SynonymyGraph(words, tuple(tags or ["unknown"] * n),
                         np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64),
                         np.array(weights, dtype=np.float64))


def random_weights(rng: np.random.Generator, n: int, density: float = 0.3,
                   dangling: int = 0) -> np.ndarray:
    """Random symmetric weights; the last ``dangling`` nodes are isolated."""
    upper = np.triu(rng.random((n, n)) < density, 1) * rng.uniform(0.05, 1.0, (n, n))
    w = upper + upper.T
    if dangling:
        w[n - dangling:, :] = 0.0
        w[:, n - dangling:] = 0.0
    return w


def dense_pagerank(w: np.ndarray, e: np.ndarray, alpha: float) -> np.ndarray:
    """Direct solve of (I - alpha P) y = (1 - alpha) e with P = W D^-1,
    renormalised so dangling mass is returned through e."""
    n = w.shape[0]
    deg = w.sum(axis=1)
    p = np.zeros_like(w)
    for i in range(n):
        if deg[i] > 0:
            p[:, i] = w[i, :] / deg[i]
    y = np.linalg.solve(np.eye(n) - alpha * p, (1 - alpha) * e)
    return y / y.sum()
