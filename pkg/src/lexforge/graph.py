"""Bootstrap vocabulary expansion and the cosine-weighted synonymy graph."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .corpus_io import Thesaurus

UNKNOWN_TAG = "unknown"
# weight kept on a synonym edge whose cosine comes out as zero
EDGE_FLOOR = 1e-6


def bootstrap_expand(origin: Iterable[str], thesaurus: Thesaurus,
                     max_rounds: int | None = None) -> set[str]:
    """Grow ``origin`` with synonyms of its members until nothing new appears.

    Synonymy is taken as undirected. ``max_rounds`` caps the number of
    expansion rounds; ``None`` runs to closure.
    """
    result = set(origin)
    if not result:
        raise ValueError("bootstrap origin must be non-empty")
    adj = thesaurus.symmetric()
    frontier = deque(sorted(result))
    rounds = 0
    while frontier and (max_rounds is None or rounds < max_rounds):
        nxt = deque()
        for w in frontier:
            for s in adj.get(w, ()):
                if s not in result:
                    result.add(s)
                    nxt.append(s)
        frontier = nxt
        rounds += 1
    return result


def synonym_vector(word: str, thesaurus: Thesaurus, vocab: Sequence[str],
                   include_self: bool = False) -> np.ndarray:
    """Boolean indicator over ``vocab`` of the (symmetrised) synonyms of ``word``."""
    if word not in vocab:
        raise ValueError(f"{word!r} is not in the vocabulary")
    syns = set(thesaurus.synonyms(word))
    syns.update(h for h, s in thesaurus.entries.items() if word in s)
    syns.discard(word)
    if include_self:
        syns.add(word)
    return np.array([w in syns for w in vocab], dtype=bool)


def cosine_weight(sv_i, sv_j) -> float:
    a = np.asarray(sv_i, dtype=np.float64)
    b = np.asarray(sv_j, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"vector length mismatch: {a.shape} vs {b.shape}")
    na2 = float(a @ a)
    nb2 = float(b @ b)
    if na2 == 0.0 or nb2 == 0.0:
        return 0.0
    # one sqrt of the product keeps identical 0/1 vectors at exactly 1.0
    return min(1.0, float(a @ b) / math.sqrt(na2 * nb2))


@dataclass(frozen=True, eq=False)
class SynonymyGraph:
    """Undirected weighted graph stored as a symmetric CSR matrix.

    ``words`` is sorted, so node index order is lexicographic word order.
    Column indices within each row are sorted.
    """

    words: tuple[str, ...]
    tags: tuple[str, ...]
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.words)})

    @property
    def n_nodes(self) -> int:
        return len(self.words)

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    def index(self, word: str) -> int:
        return self._index[word]

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def weight(self, i: int, j: int) -> float:
        row = self.neighbors(i)
        k = np.searchsorted(row, j)
        if k < len(row) and row[k] == j:
            return float(self.weights[self.indptr[i] + k])
        return 0.0

    def dense(self) -> np.ndarray:
        n = self.n_nodes
        out = np.zeros((n, n))
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        out[rows, self.indices] = self.weights
        return out

    def edges(self) -> Iterator[tuple[str, str, float]]:
        """Each undirected edge once, with the lexicographically smaller word first."""
        for i in range(self.n_nodes):
            for p in range(self.indptr[i], self.indptr[i + 1]):
                j = self.indices[p]
                if i < j:
                    yield self.words[i], self.words[j], float(self.weights[p])

    def dump(self, sink) -> None:
        """Write the edge list as ``word_i<TAB>word_j<TAB>weight``."""
        lines = [f"{a}\t{b}\t{w!r}\n" for a, b, w in self.edges()]
        sink.write("".join(lines).encode("utf-8"))

    def with_scaled_weights(self, factor: float) -> "SynonymyGraph":
        return SynonymyGraph(self.words, self.tags, self.indptr, self.indices,
                             self.weights * factor)


def build_graph(vocab: Iterable[str], thesaurus: Thesaurus,
                tags: Mapping[str, str] | None = None) -> SynonymyGraph:
    """Connect synonymous vocabulary words, weighting each edge by cosine
    similarity of the two words' synonym vectors.

    Each vector also marks the word itself, so two words that only list each
    other still get weight 1.
    """
    words = tuple(sorted(set(vocab)))
    index = {w: i for i, w in enumerate(words)}
    adj = thesaurus.symmetric()
    rows: list[list[int]] = []
    for w in words:
        nb = sorted(index[s] for s in adj.get(w, ()) if s in index and s != w)
        rows.append(nb)
    indptr = np.zeros(len(words) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(r) for r in rows])
    indices = np.fromiter((j for r in rows for j in r), dtype=np.int64, count=int(indptr[-1]))

    overlap = kernels.closed_overlap(indptr, indices)
    closed_deg = np.diff(indptr).astype(np.float64) + 1.0
    src = np.repeat(np.arange(len(words)), np.diff(indptr))
    weights = overlap / np.sqrt(closed_deg[src] * closed_deg[indices])
    weights = np.minimum(weights, 1.0)
    weights[weights <= 0.0] = EDGE_FLOOR

    tags = tags or {}
    node_tags = tuple(tags.get(w, UNKNOWN_TAG) for w in words)
    return SynonymyGraph(words, node_tags, indptr, indices, weights)
