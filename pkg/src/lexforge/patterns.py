"""Target extraction, syntactic/sequential pattern mining and DSSW matching.

A syntactic pattern is the dependency path from the sentiment slot to the
target slot. An upward step from node u renders as ``deprel(u)+`` and a
downward step into node v as ``deprel(v)-``::

    (S) DE+ ATT+ (T)

A sequential pattern lists the POS tags strictly between the two slots in
surface order; the slot that comes first is written first::

    (S) a u n (T)
    (T) d (S)
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import LexforgeError
from .corpus_io import (NEGATIVE, POSITIVE, FormatError, Lexicon, LexiconEntry,
                        ParsedSentence, ParseIssue, _lines, _report)

log = logging.getLogger(__name__)

S_SLOT = "(S)"
T_SLOT = "(T)"
UP = "up"
DOWN = "down"

SYN = "syn"
SEQ = "seq"
PATTERNS_HEADER = "# lexforge-patterns v1"

DEFAULT_NOUN_TAGS = frozenset({"n"})
DEFAULT_CANDIDATE_TAGS = frozenset({"a", "i"})


class PatternError(LexforgeError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class SyntacticPattern:
    steps: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.steps:
            raise PatternError("syntactic pattern needs at least one step")
        for label, direction in self.steps:
            if direction not in (UP, DOWN) or not label or any(c.isspace() for c in label):
                raise PatternError(f"bad step ({label!r}, {direction!r})")

    def render(self) -> str:
        body = " ".join(label + ("+" if d == UP else "-") for label, d in self.steps)
        return f"{S_SLOT} {body} {T_SLOT}"

    @classmethod
    def parse(cls, text: str) -> "SyntacticPattern":
        parts = text.split()
        if len(parts) < 3 or parts[0] != S_SLOT or parts[-1] != T_SLOT:
            raise PatternError(f"not a syntactic pattern: {text!r}")
        steps = []
        for p in parts[1:-1]:
            if len(p) < 2 or p[-1] not in "+-":
                raise PatternError(f"bad step {p!r} in {text!r}")
            steps.append((p[:-1], UP if p[-1] == "+" else DOWN))
        return cls(tuple(steps))

    def __str__(self) -> str:
        return self.render()


S_FIRST = "S-before-T"
T_FIRST = "T-before-S"


@dataclass(frozen=True, order=True)
class SequentialPattern:
    orientation: str
    pos_sequence: tuple[str, ...] = ()

    def __post_init__(self):
        if self.orientation not in (S_FIRST, T_FIRST):
            raise PatternError(f"bad orientation {self.orientation!r}")
        if any(not t or any(c.isspace() for c in t) or t in (S_SLOT, T_SLOT)
               for t in self.pos_sequence):
            raise PatternError(f"bad POS sequence {self.pos_sequence!r}")

    def render(self) -> str:
        first, last = (S_SLOT, T_SLOT) if self.orientation == S_FIRST else (T_SLOT, S_SLOT)
        return " ".join((first, *self.pos_sequence, last))

    @classmethod
    def parse(cls, text: str) -> "SequentialPattern":
        parts = text.split()
        if len(parts) < 2 or {parts[0], parts[-1]} != {S_SLOT, T_SLOT}:
            raise PatternError(f"not a sequential pattern: {text!r}")
        orientation = S_FIRST if parts[0] == S_SLOT else T_FIRST
        return cls(orientation, tuple(parts[1:-1]))

    def __str__(self) -> str:
        return self.render()


def _check_pair(sentence: ParsedSentence, s_index: int, t_index: int) -> None:
    n = len(sentence)
    if not (1 <= s_index <= n and 1 <= t_index <= n):
        raise PatternError(f"slot index out of range 1..{n}: ({s_index}, {t_index})")
    if s_index == t_index:
        raise PatternError("sentiment and target slots must differ")


def _ancestors(sentence: ParsedSentence, index: int) -> list[int]:
    chain = [index]
    while sentence[chain[-1]].head != 0:
        chain.append(sentence[chain[-1]].head)
    return chain


def syntactic_pattern(sentence: ParsedSentence, s_index: int, t_index: int) -> SyntacticPattern:
    """Tree path S -> lowest common ancestor -> T."""
    _check_pair(sentence, s_index, t_index)
    up_chain = _ancestors(sentence, s_index)
    down_chain = _ancestors(sentence, t_index)
    on_up = set(up_chain)
    lca_pos = next(k for k, node in enumerate(down_chain) if node in on_up)
    lca = down_chain[lca_pos]
    steps = [(sentence[u].deprel, UP) for u in up_chain[:up_chain.index(lca)]]
    steps += [(sentence[v].deprel, DOWN) for v in reversed(down_chain[:lca_pos])]
    return SyntacticPattern(tuple(steps))


def sequential_pattern(sentence: ParsedSentence, s_index: int, t_index: int,
                       max_gap: int | None = 10) -> SequentialPattern | None:
    """POS tags strictly between the slots, or None if more than ``max_gap``."""
    _check_pair(sentence, s_index, t_index)
    lo, hi = sorted((s_index, t_index))
    if max_gap is not None and hi - lo - 1 > max_gap:
        return None
    between = tuple(sentence[k].pos for k in range(lo + 1, hi))
    return SequentialPattern(S_FIRST if s_index < t_index else T_FIRST, between)


@dataclass(frozen=True)
class TargetSet:
    words: Mapping[str, int]
    noun_tags: frozenset[str] = DEFAULT_NOUN_TAGS

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    def occurrences(self, sentence: ParsedSentence) -> list[int]:
        return [t.index for t in sentence.tokens
                if t.pos in self.noun_tags and t.surface in self.words]


def extract_targets(corpus: Iterable[ParsedSentence], gamma_d: int = 100,
                    noun_tags=DEFAULT_NOUN_TAGS) -> TargetSet:
    """Nouns whose noun-tagged frequency is strictly greater than ``gamma_d``."""
    noun_tags = frozenset(noun_tags)
    freq: Counter = Counter()
    for sent in corpus:
        for tok in sent.tokens:
            if tok.pos in noun_tags:
                freq[tok.surface] += 1
    return TargetSet({w: n for w, n in sorted(freq.items()) if n > gamma_d}, noun_tags)


@dataclass
class PatternStats:
    support: int = 0
    pos_support: int = 0
    neg_support: int = 0

    def add(self, polarity: str) -> None:
        self.support += 1
        if polarity == POSITIVE:
            self.pos_support += 1
        else:
            self.neg_support += 1


@dataclass(frozen=True)
class PatternLibrary:
    syntactic: tuple[tuple[SyntacticPattern, PatternStats], ...] = ()
    sequential: tuple[tuple[SequentialPattern, PatternStats], ...] = ()
    max_gap: int | None = 10
    _syn_index: dict = field(default=None, compare=False, repr=False)
    _seq_index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_syn_index", dict(self.syntactic))
        object.__setattr__(self, "_seq_index", dict(self.sequential))

    def __len__(self) -> int:
        return len(self.syntactic) + len(self.sequential)

    def lookup(self, pattern) -> PatternStats | None:
        if isinstance(pattern, SyntacticPattern):
            return self._syn_index.get(pattern)
        return self._seq_index.get(pattern)

    def __contains__(self, pattern) -> bool:
        return self.lookup(pattern) is not None


def _top(counts: dict, tau: int):
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1].support, kv[0].render()))
    return tuple(ranked[:max(tau, 0)])


def build_pattern_library(corpus: Iterable[ParsedSentence], general: Lexicon,
                          targets: TargetSet, tau_syn: int = 200, tau_seq: int = 200,
                          max_gap: int | None = 10) -> PatternLibrary:
    """Count both pattern kinds over every (general word, target) occurrence
    pair and keep the ``tau`` most frequent of each kind.

    Each pattern also tallies how often its instantiating general word was
    positive or negative.
    """
    polarity = general.polarity_of()
    syn: dict[SyntacticPattern, PatternStats] = {}
    seq: dict[SequentialPattern, PatternStats] = {}
    for sent in corpus:
        t_occ = targets.occurrences(sent)
        if not t_occ:
            continue
        for tok in sent.tokens:
            pol = polarity.get(tok.surface)
            if pol is None:
                continue
            for t in t_occ:
                if t == tok.index:
                    continue
                syn.setdefault(syntactic_pattern(sent, tok.index, t), PatternStats()).add(pol)
                sp = sequential_pattern(sent, tok.index, t, max_gap)
                if sp is not None:
                    seq.setdefault(sp, PatternStats()).add(pol)
    if not syn and not seq:
        log.warning("no general word co-occurs with a target word; pattern library is empty")
    return PatternLibrary(_top(syn, tau_syn), _top(seq, tau_seq), max_gap)


def extract_dssw(corpus: Iterable[ParsedSentence], library: PatternLibrary,
                 targets: TargetSet, candidate_tags=DEFAULT_CANDIDATE_TAGS,
                 general: Lexicon | None = None, min_matches: int = 1) -> Lexicon:
    """Words tagged with ``candidate_tags`` that reach a target through a
    library pattern.

    The score is the number of matching (candidate, target) occurrence pairs.
    Polarity follows the summed positive vs negative support of all matched
    patterns, positive on ties. Words already in ``general`` stay in the
    output with ``known=True``.
    """
    candidate_tags = frozenset(candidate_tags)
    known = general.words() if general is not None else set()
    matches: Counter = Counter()
    pos_votes: Counter = Counter()
    neg_votes: Counter = Counter()
    for sent in corpus:
        t_occ = targets.occurrences(sent)
        if not t_occ:
            continue
        for tok in sent.tokens:
            if tok.pos not in candidate_tags:
                continue
            for t in t_occ:
                if t == tok.index:
                    continue
                hits = [library.lookup(syntactic_pattern(sent, tok.index, t))]
                sp = sequential_pattern(sent, tok.index, t, library.max_gap)
                if sp is not None:
                    hits.append(library.lookup(sp))
                hits = [h for h in hits if h is not None]
                if not hits:
                    continue
                matches[tok.surface] += 1
                for h in hits:
                    pos_votes[tok.surface] += h.pos_support
                    neg_votes[tok.surface] += h.neg_support
    entries = []
    for w, n in matches.items():
        if n < min_matches:
            continue
        pol = POSITIVE if pos_votes[w] >= neg_votes[w] else NEGATIVE
        entries.append(LexiconEntry(w, pol, float(n), known=w in known))
    return Lexicon(tuple(entries)).normalized()


def write_library(library: PatternLibrary, sink) -> None:
    lines = [PATTERNS_HEADER]
    for kind, items in ((SYN, library.syntactic), (SEQ, library.sequential)):
        for p, st in items:
            lines.append(f"{kind}\t{p.render()}\t{st.support}\t{st.pos_support}\t{st.neg_support}")
    sink.write(("\n".join(lines) + "\n").encode("utf-8"))


def read_library(source, max_gap: int | None = 10,
                 issues: list[ParseIssue] | None = None) -> PatternLibrary:
    """Inverse of :func:`write_library`; row order is preserved."""
    syn, seq = [], []
    header_seen = False
    for lineno, text in _lines(source):
        if text is None:
            _report(issues, "patterns", ParseIssue(lineno, "invalid UTF-8"))
            continue
        if not header_seen:
            if text.strip() != PATTERNS_HEADER:
                raise FormatError(f"missing pattern header {PATTERNS_HEADER!r}")
            header_seen = True
            continue
        if not text.strip() or text.startswith("#"):
            continue
        fields = text.split("\t")
        try:
            if len(fields) != 5:
                raise ValueError(f"expected 5 fields, got {len(fields)}")
            kind, form = fields[0], fields[1]
            st = PatternStats(*(int(f) for f in fields[2:]))
            if kind == SYN:
                syn.append((SyntacticPattern.parse(form), st))
            elif kind == SEQ:
                seq.append((SequentialPattern.parse(form), st))
            else:
                raise ValueError(f"unknown kind {kind!r}")
        except (ValueError, PatternError) as exc:
            _report(issues, "patterns", ParseIssue(lineno, str(exc)))
    return PatternLibrary(tuple(syn), tuple(seq), max_gap)
