"""``lexforge`` command line: seeds -> expand -> extract -> eval.

Each stage reads its inputs from the config and the previous stage's files
in the output directory, and writes its own files there.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path

from . import LexforgeError, __version__, kernels
from .config import ConfigError, PipelineConfig, read_config
from .corpus_io import (NEGATIVE, POSITIVE, FormatError, Lexicon, ParseIssue,
                        _lines, load_comments, load_lexicon, load_parsed_corpus,
                        load_thesaurus, save_lexicon)
from .evaluation import (evaluate_classification, label_ranking, parse_classification_dataset,
                         parse_labels, parse_rank_dump, precision_at_n, prf1)
from .graph import bootstrap_expand, build_graph
from .patterns import (build_pattern_library, extract_dssw, extract_targets, write_library)
from .propagation import (RankVector, TopicError, dump_ranking, row_stochastic_transition,
                          top_k_general_words, topic_rank)
from .seeds import SeedCandidate, passes_filters, score_candidates, seeds_to_lexicon, select_seeds

log = logging.getLogger("lexforge")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_STAGE = 4

POSITIVE_SEEDS = "positive_seeds.lex"
NEGATIVE_SEEDS = "negative_seeds.lex"
CANDIDATES = "candidates.tsv"
WORD_TAGS = "word_tags.tsv"
GENERAL = "general.lex"
RANK_POSITIVE = "rank_positive.tsv"
RANK_NEGATIVE = "rank_negative.tsv"
GRAPH_DUMP = "graph.tsv"
TARGETS = "targets.tsv"
PATTERNS = "patterns.tsv"
DSSW = "dssw.lex"
DSSW_NEW = "dssw_new.lex"

CANDIDATE_HEADER = "word\tpos\tcp\tcn\tsps\tsns\tpasses_filters"


class StageError(LexforgeError):
    """A stage cannot run (missing upstream output, undefined topic, ...)."""


def _write_text(path: Path, lines) -> None:
    with open(path, "wb") as f:
        f.write("".join(line + "\n" for line in lines).encode("utf-8"))


def _fmt(v) -> str:
    return f"{v:.6f}" if isinstance(v, float) else str(v)


def write_report(path: Path, rows) -> None:
    _write_text(path, ["metric\tvalue", *(f"{k}\t{_fmt(v)}" for k, v in rows)])


def _upstream(cfg: PipelineConfig, name: str, stage: str) -> Path:
    p = cfg.out / name
    if not p.is_file():
        raise StageError(f"{p} not found; run `lexforge {stage}` first")
    return p


# -- seeds ------------------------------------------------------------------

def cmd_seeds(cfg: PipelineConfig) -> list[tuple[str, object]]:
    cfg.require("comments")
    issues: list[ParseIssue] = []
    comments = load_comments(cfg.path("comments"), issues)
    cands = score_candidates(comments, cfg.seeds.seed_pos_tags)
    pos, neg = select_seeds(cands, cfg.seeds)

    tag_counts: Counter = Counter()
    for c in comments:
        for tok in (*c.overall, *c.pros, *c.cons):
            tag_counts[tok.surface, tok.pos] += 1
    best: dict[str, tuple[int, str]] = {}
    for (w, tag), n in tag_counts.items():
        if w not in best or (-n, tag) < (-best[w][0], best[w][1]):
            best[w] = (n, tag)

    cfg.out.mkdir(parents=True, exist_ok=True)
    save_lexicon(seeds_to_lexicon(pos, POSITIVE), cfg.out / POSITIVE_SEEDS)
    save_lexicon(seeds_to_lexicon(neg, NEGATIVE), cfg.out / NEGATIVE_SEEDS)
    _write_text(cfg.out / CANDIDATES, [CANDIDATE_HEADER] + [
        f"{c.word}\t{c.pos}\t{c.cp}\t{c.cn}\t{c.sps!r}\t{c.sns!r}\t{int(passes_filters(c, cfg.seeds))}"
        for c in cands])
    _write_text(cfg.out / WORD_TAGS, [f"{w}\t{best[w][1]}" for w in sorted(best)])
    rows = [
        ("comments", len(comments)),
        ("parse_issues", len(issues)),
        ("candidates", len(cands)),
        ("eligible_candidates", sum(passes_filters(c, cfg.seeds) for c in cands)),
        ("positive_seeds", len(pos)),
        ("negative_seeds", len(neg)),
    ]
    write_report(cfg.out / "seeds_report.tsv", rows)
    return rows


def read_candidates(path: Path) -> list[tuple[SeedCandidate, bool]]:
    out = []
    with open(path, "rb") as f:
        for lineno, text in _lines(f):
            if lineno == 1 or not text:
                continue
            w, pos, cp, cn, sps, sns, ok = text.split("\t")
            out.append((SeedCandidate(w, pos, int(cp), int(cn), float(sps), float(sns)), ok == "1"))
    return out


def _read_tags(path: Path) -> dict[str, str]:
    with open(path, "rb") as f:
        return dict(text.split("\t", 1) for _, text in _lines(f) if text)


# -- expand -----------------------------------------------------------------

def cmd_expand(cfg: PipelineConfig) -> list[tuple[str, object]]:
    cfg.require("thesaurus")
    pos_seeds = load_lexicon(_upstream(cfg, POSITIVE_SEEDS, "seeds"))
    neg_seeds = load_lexicon(_upstream(cfg, NEGATIVE_SEEDS, "seeds"))
    cands = read_candidates(_upstream(cfg, CANDIDATES, "seeds"))
    tags = _read_tags(_upstream(cfg, WORD_TAGS, "seeds"))
    thesaurus = load_thesaurus(cfg.path("thesaurus"))

    seed_words = pos_seeds.words() | neg_seeds.words()
    if cfg.origin == "all":
        origin = {c.word for c, _ in cands}
    elif cfg.origin == "filtered":
        origin = {c.word for c, ok in cands if ok}
    else:
        origin = set()
    origin |= seed_words
    if not origin:
        raise StageError("no seed candidates to expand; check the seeds stage output")

    # words the thesaurus never mentions carry no synonymy information
    known = thesaurus.words()
    vocab = {w for w in bootstrap_expand(origin, thesaurus, cfg.max_rounds) if w in known}
    if not vocab:
        raise StageError("propagation topic undefined: no seed candidate occurs in the thesaurus")
    graph = build_graph(vocab, thesaurus, tags)
    transition = row_stochastic_transition(graph)
    try:
        pos_rank: RankVector = topic_rank(graph, transition, pos_seeds.words(), cfg.positive)
        neg_rank: RankVector = topic_rank(graph, transition, neg_seeds.words(), cfg.negative)
    except TopicError as exc:
        raise StageError(f"propagation topic undefined: {exc}") from exc
    general = top_k_general_words(graph, pos_rank, neg_rank, cfg.k, cfg.exclusions)

    cfg.out.mkdir(parents=True, exist_ok=True)
    save_lexicon(general, cfg.out / GENERAL)
    with open(cfg.out / RANK_POSITIVE, "wb") as f:
        dump_ranking(graph, pos_rank, f)
    with open(cfg.out / RANK_NEGATIVE, "wb") as f:
        dump_ranking(graph, neg_rank, f)
    with open(cfg.out / GRAPH_DUMP, "wb") as f:
        graph.dump(f)
    rows = [
        ("origin_words", len(origin)),
        ("graph_nodes", graph.n_nodes),
        ("graph_edges", graph.n_edges),
        ("positive_iterations", pos_rank.iteration_count),
        ("negative_iterations", neg_rank.iteration_count),
        ("general_positive", len(general.words(POSITIVE))),
        ("general_negative", len(general.words(NEGATIVE))),
        ("kernel_backend", kernels.BACKEND),
    ]
    write_report(cfg.out / "expand_report.tsv", rows)
    return rows


# -- extract ----------------------------------------------------------------

def cmd_extract(cfg: PipelineConfig) -> list[tuple[str, object]]:
    cfg.require("parsed_corpus")
    general_path = cfg.path("general") or _upstream(cfg, GENERAL, "expand")
    if not Path(general_path).is_file():
        raise StageError(f"{general_path} not found; run `lexforge expand` first")
    general = load_lexicon(general_path)
    if len(general) == 0:
        raise StageError(f"general lexicon {general_path} is empty")
    issues: list[ParseIssue] = []
    corpus = load_parsed_corpus(cfg.path("parsed_corpus"), issues)
    pc = cfg.patterns
    targets = extract_targets(corpus, pc.gamma_d, pc.noun_tags)
    if not targets:
        log.warning("no noun occurs more than %d times; no targets", pc.gamma_d)
    library = build_pattern_library(corpus, general, targets, pc.tau_syn, pc.tau_seq, pc.max_gap)
    dssw = extract_dssw(corpus, library, targets, pc.candidate_tags, general, pc.min_matches)
    new = Lexicon(tuple(e for e in dssw if not e.known))

    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_text(cfg.out / TARGETS, [f"{w}\t{n}" for w, n in targets.words.items()])
    with open(cfg.out / PATTERNS, "wb") as f:
        write_library(library, f)
    save_lexicon(dssw, cfg.out / DSSW)
    save_lexicon(new, cfg.out / DSSW_NEW)
    rows = [
        ("sentences", len(corpus)),
        ("rejected_sentences", len(issues)),
        ("targets", len(targets)),
        ("syntactic_patterns", len(library.syntactic)),
        ("sequential_patterns", len(library.sequential)),
        ("dssw", len(dssw)),
        ("dssw_new", len(new)),
    ]
    write_report(cfg.out / "extract_report.tsv", rows)
    return rows


# -- eval -------------------------------------------------------------------

def cmd_eval(cfg: PipelineConfig) -> list[tuple[str, object]]:
    validate("eval", cfg)
    rows: list[tuple[str, object]] = []
    general_path = cfg.path("general") or cfg.out / GENERAL

    if cfg.path("gold") is not None:
        gold = load_lexicon(cfg.path("gold")).words()
        dssw = load_lexicon(_upstream(cfg, DSSW, "extract"))
        extracted = dssw.words()
        if cfg.exclude_known and Path(general_path).is_file():
            extracted -= load_lexicon(general_path).words()
        p, r, f1 = prf1(extracted, gold)
        rows += [("dssw.extracted", len(extracted)), ("dssw.gold", len(gold)),
                 ("dssw.precision", p), ("dssw.recall", r), ("dssw.f1", f1)]

    if cfg.path("labels") is not None:
        with open(cfg.path("labels"), "rb") as f:
            labels = parse_labels(f)
        for name, dump, relevant in (("positive", RANK_POSITIVE, POSITIVE),
                                     ("negative", RANK_NEGATIVE, NEGATIVE)):
            path = cfg.out / dump
            if not path.is_file():
                log.warning("%s missing; skipping P@N for %s ranking", path, name)
                continue
            with open(path, "rb") as f:
                ranking = label_ranking(parse_rank_dump(f), labels)
            for n in cfg.p_at_n:
                if n <= len(ranking):
                    rows.append((f"p_at_{n}.{name}", precision_at_n(ranking, n, {relevant})))

    if cfg.path("dataset") is not None:
        with open(cfg.path("dataset"), "rb") as f:
            dataset = parse_classification_dataset(f)
        rows.append(("classification.sentences", len(dataset)))
        for name, path in (("general", Path(general_path)), ("dssw", cfg.out / DSSW)):
            if path.is_file():
                lex = load_lexicon(path)
                if len(lex):
                    rows.append((f"classification.accuracy.{name}",
                                 evaluate_classification(dataset, lex)))

    cfg.out.mkdir(parents=True, exist_ok=True)
    write_report(cfg.out / "eval_report.tsv", rows)
    return rows


COMMANDS = {
    "seeds": cmd_seeds,
    "expand": cmd_expand,
    "extract": cmd_extract,
    "eval": cmd_eval,
}

_REQUIRED = {
    "seeds": ("comments",),
    "expand": ("thesaurus",),
    "extract": ("parsed_corpus",),
    "eval": (),
}


def validate(command: str, cfg: PipelineConfig) -> None:
    """Check every input path ``command`` will touch; raises ConfigError."""
    cfg.require(*_REQUIRED[command])
    cfg.check_optional("general")
    if command == "eval":
        if cfg.path("gold") is None and cfg.path("dataset") is None:
            raise ConfigError("nothing to evaluate: set paths.gold and/or paths.dataset")
        cfg.check_optional("gold", "dataset", "labels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexforge", description="Induce a domain-specific sentiment lexicon.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "seeds": "score candidates in pros/cons and select sentiment seeds",
        "expand": "expand seeds over the synonymy graph into general sentiment words",
        "extract": "mine patterns from a parsed corpus and extract domain sentiment words",
        "eval": "compute P/R/F1, P@N and classification accuracy",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("--config", required=True, help="INI configuration file")
        p.add_argument("--out", help="output directory (overrides paths.out)")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="SECTION.KEY=VALUE", help="override a config value")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = read_config(args.config, args.overrides, args.out)
        validate(args.command, cfg)
    except ConfigError as exc:
        print(f"lexforge: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rows = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"lexforge: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FormatError, UnicodeDecodeError, OSError) as exc:
        print(f"lexforge: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LexforgeError as exc:
        print(f"lexforge: {args.command} failed: {exc}", file=sys.stderr)
        return EXIT_STAGE
    for k, v in rows:
        print(f"{k}\t{_fmt(v)}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
