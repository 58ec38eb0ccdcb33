"""Ranking precision, set precision/recall/F1 and a lexicon-vote classifier."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import LexforgeError
from .corpus_io import (NEGATIVE, POSITIVE, Lexicon, ParseIssue, Token, _lines,
                        _report, parse_token)

log = logging.getLogger(__name__)

NEUTRAL = "neutral"
LABELS = (POSITIVE, NEGATIVE, NEUTRAL)
_DATASET_LABELS = {"pos": POSITIVE, "neg": NEGATIVE}


class EvaluationError(LexforgeError, ValueError):
    pass


@dataclass(frozen=True)
class LabeledRanking:
    items: tuple[tuple[str, str], ...]

    def __post_init__(self):
        for w, label in self.items:
            if label not in LABELS:
                raise EvaluationError(f"bad label {label!r} for {w!r}")

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class GoldLexicon:
    positive: frozenset[str]
    negative: frozenset[str]

    def __post_init__(self):
        both = self.positive & self.negative
        if both:
            raise EvaluationError(f"gold polarities overlap: {sorted(both)[:5]}")

    @classmethod
    def from_lexicon(cls, lexicon: Lexicon) -> "GoldLexicon":
        return cls(frozenset(lexicon.words(POSITIVE)), frozenset(lexicon.words(NEGATIVE)))

    def words(self) -> frozenset[str]:
        return self.positive | self.negative


def precision_at_n(ranking: LabeledRanking, n: int, relevant=frozenset({POSITIVE})) -> float:
    """Share of the first ``n`` ranked words whose label is in ``relevant``.

    Neutral words count as misses.
    """
    if not 1 <= n <= len(ranking):
        raise EvaluationError(f"n={n} outside 1..{len(ranking)}")
    relevant = set(relevant)
    hits = sum(1 for _, label in ranking.items[:n] if label in relevant)
    return hits / n


def f1_score(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def prf1(extracted: Iterable[str], gold: Iterable[str]) -> tuple[float, float, float]:
    extracted, gold = set(extracted), set(gold)
    if not gold:
        raise EvaluationError("gold set is empty")
    tp = len(extracted & gold)
    p = tp / len(extracted) if extracted else 0.0
    r = tp / len(gold)
    return p, r, f1_score(p, r)


def classify_sentence(tokens: Sequence, lexicon: Lexicon) -> str:
    """Vote: +1 per token found among positive entries, -1 per negative one.

    Tokens may be plain strings or :class:`Token` pairs; a zero score is
    classified positive.
    """
    if len(lexicon) == 0:
        raise EvaluationError("lexicon is empty")
    pos, neg = lexicon.words(POSITIVE), lexicon.words(NEGATIVE)
    score = 0
    for tok in tokens:
        w = getattr(tok, "surface", tok)
        score += (w in pos) - (w in neg)
    return NEGATIVE if score < 0 else POSITIVE


def evaluate_classification(dataset: Sequence[tuple[Sequence, str]], lexicon: Lexicon) -> float:
    if not dataset:
        raise EvaluationError("classification dataset is empty")
    correct = sum(classify_sentence(toks, lexicon) == gold for toks, gold in dataset)
    return correct / len(dataset)


def parse_classification_dataset(source, issues: list[ParseIssue] | None = None
                                 ) -> list[tuple[tuple[Token, ...], str]]:
    """``label<TAB>surface_POS ...`` per line, label in {pos, neg}."""
    out = []
    for lineno, text in _lines(source):
        if text is None:
            _report(issues, "dataset", ParseIssue(lineno, "invalid UTF-8"))
            continue
        if not text.strip():
            continue
        label, sep, rest = text.partition("\t")
        if not sep or label not in _DATASET_LABELS:
            _report(issues, "dataset", ParseIssue(lineno, f"bad label or missing tab: {text[:40]!r}"))
            continue
        try:
            toks = tuple(parse_token(t) for t in rest.split())
        except ValueError as exc:
            _report(issues, "dataset", ParseIssue(lineno, str(exc)))
            continue
        out.append((toks, _DATASET_LABELS[label]))
    return out


def parse_labels(source, issues: list[ParseIssue] | None = None) -> dict[str, str]:
    """Human judgements for P@N: ``word<TAB>label`` with label in
    positive/negative/neutral."""
    out: dict[str, str] = {}
    for lineno, text in _lines(source):
        if text is None or not text.strip() or text.startswith("#"):
            if text is None:
                _report(issues, "labels", ParseIssue(lineno, "invalid UTF-8"))
            continue
        fields = text.split("\t")
        if len(fields) != 2 or fields[1] not in LABELS:
            _report(issues, "labels", ParseIssue(lineno, f"bad label line {text[:40]!r}"))
            continue
        out[fields[0]] = fields[1]
    return out


def parse_rank_dump(source) -> list[str]:
    """Words of a ``word<TAB>score<TAB>rank`` dump in file order."""
    words = []
    for lineno, text in _lines(source):
        if text and text.strip():
            words.append(text.split("\t", 1)[0])
    return words


def label_ranking(words: Iterable[str], labels: dict[str, str]) -> LabeledRanking:
    """Attach labels; unjudged words are treated as neutral."""
    return LabeledRanking(tuple((w, labels.get(w, NEUTRAL)) for w in words))


def label_counts(ranking: LabeledRanking) -> Counter:
    return Counter(label for _, label in ranking.items)
