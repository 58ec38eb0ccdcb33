"""Seed scoring from pros/cons comment fields and threshold-based selection."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .corpus_io import NEGATIVE, POSITIVE, CommentRecord, Lexicon, LexiconEntry

DEFAULT_SEED_TAGS = frozenset({"a", "i"})


@dataclass(frozen=True)
class SeedCandidate:
    word: str
    pos: str
    cp: int
    cn: int
    sps: float
    sns: float

    @property
    def freq(self) -> int:
        return self.cp + self.cn


@dataclass(frozen=True)
class SeedSelectionConfig:
    lambda_p: float = 0.75
    lambda_n: float = 0.70
    min_freq: int = 30
    min_len: int = 2
    seed_pos_tags: frozenset[str] = field(default=DEFAULT_SEED_TAGS)

    def __post_init__(self):
        if not (0.0 <= self.lambda_p <= 1.0 and 0.0 <= self.lambda_n <= 1.0):
            raise ValueError("lambda_p and lambda_n must lie in [0, 1]")
        if self.min_freq < 1:
            raise ValueError("min_freq must be >= 1")
        if self.min_len < 1:
            raise ValueError("min_len must be >= 1")
        if not self.seed_pos_tags:
            raise ValueError("seed_pos_tags must not be empty")


def _count(comments: Iterable[CommentRecord], tags) -> tuple[Counter, Counter, Counter]:
    cp: Counter = Counter()
    cn: Counter = Counter()
    word_tags: Counter = Counter()
    for c in comments:
        for tok in c.pros:
            if tok.pos in tags:
                cp[tok.surface] += 1
                word_tags[tok.surface, tok.pos] += 1
        for tok in c.cons:
            if tok.pos in tags:
                cn[tok.surface] += 1
                word_tags[tok.surface, tok.pos] += 1
    return cp, cn, word_tags


def count_polarity_frequencies(comments: Iterable[CommentRecord],
                               seed_pos_tags=DEFAULT_SEED_TAGS) -> dict[str, tuple[int, int]]:
    """Raw token counts per word in pros (cp) and cons (cn).

    Only tokens tagged with one of ``seed_pos_tags`` are counted. A word seen
    in both fields of one comment counts toward both.
    """
    cp, cn, _ = _count(comments, frozenset(seed_pos_tags))
    return {w: (cp[w], cn[w]) for w in sorted(set(cp) | set(cn))}


def score_seed(cp: int, cn: int) -> tuple[float, float]:
    """Return ``(sps, sns)`` = ``(cp/(cp+cn), cn/(cp+cn))``.

    The larger ratio is divided directly and the smaller one taken as its
    complement; the complement of a value in [0.5, 1] is exact in binary
    floating point, so ``sps + sns == 1`` holds exactly.
    """
    if cp < 0 or cn < 0:
        raise ValueError("counts must be non-negative")
    total = cp + cn
    if total == 0:
        raise ValueError("score_seed needs cp + cn > 0")
    if cp >= cn:
        sps = cp / total
        return sps, 1.0 - sps
    sns = cn / total
    return 1.0 - sns, sns


def score_candidates(comments: Iterable[CommentRecord],
                     seed_pos_tags=DEFAULT_SEED_TAGS) -> list[SeedCandidate]:
    """Count and score every candidate, sorted by word.

    A candidate's ``pos`` is its most frequent counted tag (ties lexicographic).
    """
    cp, cn, word_tags = _count(comments, frozenset(seed_pos_tags))
    tags_by_word: dict[str, Counter] = {}
    for (w, tag), n in word_tags.items():
        tags_by_word.setdefault(w, Counter())[tag] = n
    out = []
    for w in sorted(set(cp) | set(cn)):
        tag = min(tags_by_word[w].items(), key=lambda kv: (-kv[1], kv[0]))[0]
        sps, sns = score_seed(cp[w], cn[w])
        out.append(SeedCandidate(w, tag, cp[w], cn[w], sps, sns))
    return out


def passes_filters(c: SeedCandidate, cfg: SeedSelectionConfig) -> bool:
    """Length and frequency rules; length is counted in characters."""
    return len(c.word) >= cfg.min_len and c.freq >= cfg.min_freq


def _rank(cands, score):
    return sorted(cands, key=lambda c: (-score(c), -c.freq, c.word))


def select_seeds(candidates: Iterable[SeedCandidate],
                 cfg: SeedSelectionConfig) -> tuple[list[SeedCandidate], list[SeedCandidate]]:
    """Pick positive (sps > lambda_p) and negative (sns > lambda_n) seeds."""
    eligible = [c for c in candidates if passes_filters(c, cfg)]
    pos = _rank([c for c in eligible if c.sps > cfg.lambda_p], lambda c: c.sps)
    neg = _rank([c for c in eligible if c.sns > cfg.lambda_n], lambda c: c.sns)
    return pos, neg


def seeds_to_lexicon(seeds: Iterable[SeedCandidate], polarity: str) -> Lexicon:
    if polarity == POSITIVE:
        entries = (LexiconEntry(c.word, POSITIVE, c.sps) for c in seeds)
    elif polarity == NEGATIVE:
        entries = (LexiconEntry(c.word, NEGATIVE, c.sns) for c in seeds)
    else:
        raise ValueError(polarity)
    return Lexicon(tuple(entries)).normalized()
