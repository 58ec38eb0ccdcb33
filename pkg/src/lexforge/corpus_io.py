"""Readers and writers for the on-disk formats used by the pipeline.

All files are UTF-8. Line-oriented formats are parsed leniently: a bad line
is skipped and reported as a :class:`ParseIssue`, while structural problems
in a dependency block reject only that block.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator, NamedTuple

from . import LexforgeError

log = logging.getLogger(__name__)

POSITIVE = "positive"
NEGATIVE = "negative"
POLARITIES = (POSITIVE, NEGATIVE)

LEXICON_HEADER = "# lexforge-lexicon v1"


class FormatError(LexforgeError):
    """A whole input is unusable (e.g. missing header)."""


class ParseIssue(NamedTuple):
    """A recoverable problem found while reading; ``line`` is 1-based.

    For the parsed-corpus format ``line`` holds the sentence ordinal instead.
    """

    line: int
    message: str


class Token(NamedTuple):
    surface: str
    pos: str


@dataclass(frozen=True)
class CommentRecord:
    rating: float
    overall: tuple[Token, ...]
    pros: tuple[Token, ...]
    cons: tuple[Token, ...]


@dataclass(frozen=True)
class Thesaurus:
    """Word -> synonym set. Self-mentions never appear in a synonym set."""

    entries: dict[str, frozenset[str]] = field(default_factory=dict)

    def synonyms(self, word: str) -> frozenset[str]:
        return self.entries.get(word, frozenset())

    def words(self) -> set[str]:
        out = set(self.entries)
        for syns in self.entries.values():
            out.update(syns)
        return out

    def symmetric(self) -> dict[str, set[str]]:
        """Undirected view: a~b if either lists the other."""
        adj: dict[str, set[str]] = {}
        for head, syns in self.entries.items():
            adj.setdefault(head, set())
            for s in syns:
                adj[head].add(s)
                adj.setdefault(s, set()).add(head)
        return adj


class DepToken(NamedTuple):
    index: int
    surface: str
    pos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class ParsedSentence:
    tokens: tuple[DepToken, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, index: int) -> DepToken:
        # 1-based, matching the ID column
        if index < 1 or index > len(self.tokens):
            raise IndexError(index)
        return self.tokens[index - 1]

    @property
    def root(self) -> int:
        return next(t.index for t in self.tokens if t.head == 0)


@dataclass(frozen=True, order=True)
class LexiconEntry:
    word: str
    polarity: str
    score: float
    # set on extracted words that were already general sentiment words
    known: bool = field(default=False, compare=False)


def _entry_key(e: LexiconEntry):
    return (POLARITIES.index(e.polarity), -e.score, e.word)


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[LexiconEntry, ...] = ()

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.polarity not in POLARITIES:
                raise ValueError(f"bad polarity {e.polarity!r} for {e.word!r}")
            if not math.isfinite(e.score) or e.score < 0:
                raise ValueError(f"bad score {e.score!r} for {e.word!r}")
            if (e.word, e.polarity) in seen:
                raise ValueError(f"duplicate entry ({e.word}, {e.polarity})")
            seen.add((e.word, e.polarity))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries)

    def normalized(self) -> "Lexicon":
        return Lexicon(tuple(sorted(self.entries, key=_entry_key)))

    def words(self, polarity: str | None = None) -> set[str]:
        return {e.word for e in self.entries if polarity is None or e.polarity == polarity}

    def polarity_of(self) -> dict[str, str]:
        """Word -> polarity; a word listed under both takes the higher score
        (positive on ties)."""
        best: dict[str, LexiconEntry] = {}
        for e in self.normalized().entries:
            cur = best.get(e.word)
            if cur is None or e.score > cur.score:
                best[e.word] = e
        return {w: e.polarity for w, e in best.items()}


def _lines(source: BinaryIO | bytes | Iterable[bytes]) -> Iterator[tuple[int, str | None]]:
    """Yield (lineno, text) with the line terminator removed.

    ``text`` is None when the line is not valid UTF-8.
    """
    if isinstance(source, (bytes, bytearray)):
        source = bytes(source).splitlines(keepends=True)
    for lineno, raw in enumerate(source, 1):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            yield lineno, None
            continue
        if lineno == 1 and text.startswith("\ufeff"):
            text = text[1:]
        yield lineno, text.rstrip("\r\n")


def _report(issues: list[ParseIssue] | None, what: str, issue: ParseIssue) -> None:
    log.warning("%s: line %d: %s", what, issue.line, issue.message)
    if issues is not None:
        issues.append(issue)


def parse_token(text: str) -> Token:
    """Split ``surface_POS`` on the last underscore."""
    surface, sep, pos = text.rpartition("_")
    if not sep or not surface or not pos:
        raise ValueError(f"token {text!r} is not surface_POS")
    return Token(surface, pos)


def _parse_token_field(text: str) -> tuple[Token, ...]:
    return tuple(parse_token(t) for t in text.split())


def parse_comments(source, issues: list[ParseIssue] | None = None) -> list[CommentRecord]:
    """Read the 4-column comments format (rating, overall, pros, cons)."""
    records = []
    for lineno, text in _lines(source):
        if text is None:
            _report(issues, "comments", ParseIssue(lineno, "invalid UTF-8"))
            continue
        if not text.strip():
            continue
        fields = text.split("\t")
        if len(fields) != 4:
            _report(issues, "comments", ParseIssue(lineno, f"expected 4 fields, got {len(fields)}"))
            continue
        try:
            rating = float(fields[0])
            overall, pros, cons = (_parse_token_field(f) for f in fields[1:])
        except ValueError as exc:
            _report(issues, "comments", ParseIssue(lineno, str(exc)))
            continue
        records.append(CommentRecord(rating, overall, pros, cons))
    return records


def parse_thesaurus(source, issues: list[ParseIssue] | None = None) -> Thesaurus:
    """One entry per line: headword followed by its synonyms."""
    entries: dict[str, set[str]] = {}
    for lineno, text in _lines(source):
        if text is None:
            _report(issues, "thesaurus", ParseIssue(lineno, "invalid UTF-8"))
            continue
        words = text.split()
        if not words:
            continue
        head, syns = words[0], words[1:]
        entries.setdefault(head, set()).update(s for s in syns if s != head)
    return Thesaurus({w: frozenset(s) for w, s in entries.items()})


def _check_tree(tokens: list[DepToken]) -> str | None:
    n = len(tokens)
    if [t.index for t in tokens] != list(range(1, n + 1)):
        return "token ids are not contiguous from 1"
    roots = [t.index for t in tokens if t.head == 0]
    if len(roots) != 1:
        return f"expected exactly one root, found {len(roots)}"
    for t in tokens:
        if t.head < 0 or t.head > n:
            return f"head {t.head} of token {t.index} out of range"
        if t.head == t.index:
            return f"token {t.index} heads itself"
    # every node must reach the root without revisiting
    for t in tokens:
        seen = set()
        cur = t.index
        while cur != 0:
            if cur in seen:
                return f"cycle through token {cur}"
            seen.add(cur)
            cur = tokens[cur - 1].head
    return None


def parse_parsed_corpus(source, issues: list[ParseIssue] | None = None) -> list[ParsedSentence]:
    """Read blank-line separated ``ID FORM POS HEAD DEPREL`` blocks.

    Columns past the fifth are ignored. Invalid blocks are rejected whole;
    the issue's ``line`` field carries the 1-based sentence ordinal.
    """
    sentences = []
    ordinal = 0
    block: list[DepToken] = []
    error: str | None = None

    def close():
        nonlocal block, error, ordinal
        if not block and error is None:
            return
        ordinal += 1
        err = error or _check_tree(block)
        if err:
            _report(issues, "parsed corpus", ParseIssue(ordinal, f"sentence {ordinal} rejected: {err}"))
        else:
            sentences.append(ParsedSentence(tuple(block)))
        block, error = [], None

    for lineno, text in _lines(source):
        if text is None:
            error = error or f"invalid UTF-8 at line {lineno}"
            continue
        if not text.strip():
            close()
            continue
        if text.startswith("#"):
            continue
        cols = text.split("\t")
        if len(cols) < 5:
            error = error or f"line {lineno}: expected >=5 columns, got {len(cols)}"
            continue
        try:
            idx, head = int(cols[0]), int(cols[3])
        except ValueError:
            error = error or f"line {lineno}: non-integer ID or HEAD"
            continue
        if not cols[1] or not cols[2] or not cols[4]:
            error = error or f"line {lineno}: empty FORM, POS or DEPREL"
            continue
        block.append(DepToken(idx, cols[1], cols[2], head, cols[4]))
    close()
    return sentences


def write_lexicon(lexicon: Lexicon, sink: BinaryIO) -> None:
    lines = [LEXICON_HEADER]
    for e in lexicon.normalized().entries:
        lines.append(f"{e.word}\t{e.polarity}\t{e.score!r}")
    sink.write(("\n".join(lines) + "\n").encode("utf-8"))


def read_lexicon(source, issues: list[ParseIssue] | None = None) -> Lexicon:
    entries: list[LexiconEntry] = []
    seen: set[tuple[str, str]] = set()
    header_seen = False
    for lineno, text in _lines(source):
        if text is None:
            _report(issues, "lexicon", ParseIssue(lineno, "invalid UTF-8"))
            continue
        if not header_seen:
            if text.strip() != LEXICON_HEADER:
                raise FormatError(f"missing lexicon header {LEXICON_HEADER!r}")
            header_seen = True
            continue
        if not text.strip() or text.startswith("#"):
            continue
        fields = text.split("\t")
        if len(fields) != 3:
            _report(issues, "lexicon", ParseIssue(lineno, f"expected 3 fields, got {len(fields)}"))
            continue
        word, polarity, score_text = fields
        if polarity not in POLARITIES:
            _report(issues, "lexicon", ParseIssue(lineno, f"bad polarity {polarity!r}"))
            continue
        try:
            score = float(score_text)
        except ValueError:
            score = math.nan
        if not word or not math.isfinite(score) or score < 0:
            _report(issues, "lexicon", ParseIssue(lineno, f"bad entry {text!r}"))
            continue
        if (word, polarity) in seen:
            _report(issues, "lexicon", ParseIssue(lineno, f"duplicate ({word}, {polarity})"))
            continue
        seen.add((word, polarity))
        entries.append(LexiconEntry(word, polarity, score))
    return Lexicon(tuple(entries)).normalized()


def _open(path):
    return open(path, "rb")


def load_comments(path, issues=None) -> list[CommentRecord]:
    with _open(path) as f:
        return parse_comments(f, issues)


def load_thesaurus(path, issues=None) -> Thesaurus:
    with _open(path) as f:
        return parse_thesaurus(f, issues)


def load_parsed_corpus(path, issues=None) -> list[ParsedSentence]:
    with _open(path) as f:
        return parse_parsed_corpus(f, issues)


def load_lexicon(path, issues=None) -> Lexicon:
    with _open(path) as f:
        return read_lexicon(f, issues)


def save_lexicon(lexicon: Lexicon, path) -> None:
    with open(path, "wb") as f:
        write_lexicon(lexicon, f)
