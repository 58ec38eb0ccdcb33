"""Topic-sensitive PageRank over the synonymy graph and top-K selection."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import LexforgeError, kernels
from .corpus_io import NEGATIVE, POSITIVE, Lexicon, LexiconEntry
from .graph import SynonymyGraph

log = logging.getLogger(__name__)


class TopicError(LexforgeError):
    """A teleport topic matched no node of the graph."""


class ConvergenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PropagationConfig:
    alpha: float = 0.85
    beta: float = 0.0
    tol: float = 1e-8
    max_iter: int = 200
    k: int = 200
    topic_pos_tags: frozenset[str] = field(default=frozenset({"a"}))

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True, eq=False)
class Transition:
    """Random-walk normalisation of a symmetric adjacency.

    Node i sends ``W[i, j] / deg(i)`` of its mass to j. ``inv_deg`` is zero on
    dangling nodes, whose mass is routed through the teleport vector instead.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    inv_deg: np.ndarray
    dangling: np.ndarray

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    def out_probabilities(self, i: int) -> np.ndarray:
        return self.weights[self.indptr[i]:self.indptr[i + 1]] * self.inv_deg[i]

    def dense(self) -> np.ndarray:
        """Column-stochastic ``P`` with ``P[j, i]`` = probability of i -> j
        (dangling columns are zero)."""
        n = self.n
        w = np.zeros((n, n))
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        w[rows, self.indices] = self.weights
        return w * self.inv_deg[None, :]


def row_stochastic_transition(graph: SynonymyGraph) -> Transition:
    n = graph.n_nodes
    rows = np.repeat(np.arange(n), np.diff(graph.indptr))
    strength = np.bincount(rows, weights=graph.weights, minlength=n)
    dangling = strength <= 0.0
    inv_deg = np.zeros(n)
    inv_deg[~dangling] = 1.0 / strength[~dangling]
    return Transition(graph.indptr, graph.indices, graph.weights, inv_deg, dangling)


@dataclass(frozen=True, eq=False)
class TeleportDistribution:
    weights: np.ndarray

    def __post_init__(self):
        w = self.weights
        if w.ndim != 1 or len(w) == 0:
            raise ValueError("teleport vector must be 1-d and non-empty")
        if (w < 0).any() or not (w > 0).any():
            raise ValueError("teleport weights must be non-negative with positive mass")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"teleport weights sum to {w.sum()!r}, not 1")


def _uniform_on(mask: np.ndarray) -> TeleportDistribution:
    e = np.zeros(len(mask))
    e[mask] = 1.0 / mask.sum()
    return TeleportDistribution(e)


def make_teleport_seeds(graph: SynonymyGraph, seeds: Iterable) -> TeleportDistribution:
    """Uniform teleport over seed words present in the graph.

    ``seeds`` may hold plain words or objects with a ``word`` attribute.
    """
    mask = np.zeros(graph.n_nodes, dtype=bool)
    missing = 0
    for s in seeds:
        w = getattr(s, "word", s)
        if w in graph:
            mask[graph.index(w)] = True
        else:
            missing += 1
    if missing:
        log.warning("%d seed(s) not in the synonymy graph were ignored", missing)
    if not mask.any():
        raise TopicError("no seed word occurs in the synonymy graph")
    return _uniform_on(mask)


def make_teleport_pos(graph: SynonymyGraph, tags: Iterable[str]) -> TeleportDistribution:
    tags = set(tags)
    mask = np.array([t in tags for t in graph.tags], dtype=bool)
    if not mask.any():
        raise TopicError(f"no graph node carries a tag in {sorted(tags)}")
    return _uniform_on(mask)


@dataclass(frozen=True, eq=False)
class RankVector:
    scores: np.ndarray
    iteration_count: int = 0
    residual: float = 0.0


def pagerank(transition: Transition, e: TeleportDistribution,
             cfg: PropagationConfig) -> RankVector:
    """Power iteration ``x <- alpha P x + (1 - alpha) e`` starting at ``e``.

    Mass on dangling nodes re-enters through ``e``. Stops once the L1 change
    falls below ``cfg.tol``; hitting ``cfg.max_iter`` first emits a
    :class:`ConvergenceWarning` and returns the last iterate.
    """
    t = transition
    x0 = e.weights.astype(np.float64)
    x, it, residual = kernels.power_iterate(
        t.indptr, t.indices, t.weights, t.inv_deg, t.dangling, x0,
        float(cfg.alpha), float(cfg.tol), int(cfg.max_iter), x0)
    residual = float(residual)
    if residual >= cfg.tol:
        warnings.warn(f"PageRank stopped after {it} iterations with L1 residual {residual:.3e}",
                      ConvergenceWarning, stacklevel=2)
    return RankVector(x, int(it), residual)


def iterates(transition: Transition, e: TeleportDistribution, alpha: float,
             n_steps: int) -> Iterator[np.ndarray]:
    """Yield ``x^0 = e`` and the next ``n_steps`` power-iteration vectors."""
    t = transition
    x = e.weights.astype(np.float64)
    yield x
    for _ in range(n_steps):
        x = kernels.power_step(t.indptr, t.indices, t.weights, t.inv_deg, t.dangling,
                               e.weights, float(alpha), x)
        yield x


def combine(x1: RankVector, x2: RankVector, beta: float) -> RankVector:
    """Convex mix ``beta * x1 + (1 - beta) * x2``."""
    if x1.scores.shape != x2.scores.shape:
        raise ValueError("rank vectors cover different node sets")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    if beta == 1.0:
        scores = x1.scores.copy()
    elif beta == 0.0:
        scores = x2.scores.copy()
    else:
        scores = beta * x1.scores + (1.0 - beta) * x2.scores
    return RankVector(scores, max(x1.iteration_count, x2.iteration_count),
                      max(x1.residual, x2.residual))


def topic_rank(graph: SynonymyGraph, transition: Transition, seeds,
               cfg: PropagationConfig) -> RankVector:
    """Mix of a POS-tag-topic run (weight beta) and a seed-topic run.

    A run whose mixing weight is zero is skipped, so its topic need not exist.
    """
    if cfg.beta == 1.0:
        return pagerank(transition, make_teleport_pos(graph, cfg.topic_pos_tags), cfg)
    seed_rank = pagerank(transition, make_teleport_seeds(graph, seeds), cfg)
    if cfg.beta == 0.0:
        return seed_rank
    pos_rank = pagerank(transition, make_teleport_pos(graph, cfg.topic_pos_tags), cfg)
    return combine(pos_rank, seed_rank, cfg.beta)


def ranked_words(graph: SynonymyGraph, rank: RankVector,
                 exclusions: Iterable[str] = ()) -> list[tuple[str, float]]:
    """All (word, score) pairs by descending score, ties lexicographic."""
    excl = set(exclusions)
    pairs = [(w, float(s)) for w, s in zip(graph.words, rank.scores) if w not in excl]
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return pairs


def top_k_general_words(graph: SynonymyGraph, pos_rank: RankVector, neg_rank: RankVector,
                        k: int, exclusions: Iterable[str] = ()) -> Lexicon:
    """Label the K best words of each ranking; a word in both lists keeps only
    the polarity where it scores higher (positive on a tie)."""
    if pos_rank.scores.shape != neg_rank.scores.shape or len(pos_rank.scores) != graph.n_nodes:
        raise ValueError("rank vectors do not match the graph")
    top_pos = dict(ranked_words(graph, pos_rank, exclusions)[:k])
    top_neg = dict(ranked_words(graph, neg_rank, exclusions)[:k])
    entries = []
    for w, s in top_pos.items():
        if w in top_neg and top_neg[w] > s:
            continue
        entries.append(LexiconEntry(w, POSITIVE, s))
    for w, s in top_neg.items():
        if w in top_pos and top_pos[w] >= s:
            continue
        entries.append(LexiconEntry(w, NEGATIVE, s))
    return Lexicon(tuple(entries)).normalized()


def dump_ranking(graph: SynonymyGraph, rank: RankVector, sink) -> None:
    """Write ``word<TAB>score<TAB>rank`` lines, best first (rank starts at 1)."""
    lines = [f"{w}\t{s!r}\t{r}\n" for r, (w, s) in enumerate(ranked_words(graph, rank), 1)]
    sink.write("".join(lines).encode("utf-8"))
