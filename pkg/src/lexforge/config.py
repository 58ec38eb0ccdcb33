"""INI pipeline configuration with every tuning default built in."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import LexforgeError
from .propagation import PropagationConfig
from .seeds import SeedSelectionConfig


class ConfigError(LexforgeError):
    pass


DEFAULTS: dict[str, dict[str, str]] = {
    "paths": {
        "comments": "",
        "thesaurus": "",
        "parsed_corpus": "",
        "general": "",
        "gold": "",
        "dataset": "",
        "labels": "",
        "out": "lexforge-out",
    },
    "seeds": {
        "lambda_p": "0.75",
        "lambda_n": "0.70",
        "min_freq": "30",
        "min_len": "2",
        "pos_tags": "a,i",
    },
    "graph": {
        # filtered: length+frequency survivors; seeds: selected seeds only; all
        "origin": "filtered",
        "max_rounds": "",
    },
    "propagation": {
        "alpha": "0.85",
        "tol": "1e-8",
        "max_iter": "200",
        "k": "200",
        "beta_pos": "0.0",
        "beta_neg": "0.75",
        "pos_topic_tags": "a",
        "neg_topic_tags": "i",
        "exclusions": "",
    },
    "patterns": {
        "gamma_d": "100",
        "tau_syn": "200",
        "tau_seq": "200",
        "max_gap": "10",
        "noun_tags": "n",
        "candidate_tags": "a,i",
        "min_matches": "1",
    },
    "eval": {
        "p_at_n": "10,50,100",
        "exclude_known": "false",
    },
}

_ORIGINS = ("filtered", "seeds", "all")


def _tags(text: str) -> frozenset[str]:
    return frozenset(t for t in (p.strip() for p in text.replace(";", ",").split(",")) if t)


@dataclass(frozen=True)
class PatternConfig:
    gamma_d: int = 100
    tau_syn: int = 200
    tau_seq: int = 200
    max_gap: int | None = 10
    noun_tags: frozenset[str] = frozenset({"n"})
    candidate_tags: frozenset[str] = frozenset({"a", "i"})
    min_matches: int = 1


@dataclass(frozen=True)
class PipelineConfig:
    paths: dict[str, Path | None]
    out: Path
    seeds: SeedSelectionConfig = field(default_factory=SeedSelectionConfig)
    origin: str = "filtered"
    max_rounds: int | None = None
    positive: PropagationConfig = field(default_factory=PropagationConfig)
    negative: PropagationConfig = field(
        default_factory=lambda: PropagationConfig(beta=0.75, topic_pos_tags=frozenset({"i"})))
    exclusions: frozenset[str] = frozenset()
    patterns: PatternConfig = field(default_factory=PatternConfig)
    p_at_n: tuple[int, ...] = (10, 50, 100)
    exclude_known: bool = False

    @property
    def k(self) -> int:
        return self.positive.k

    def path(self, name: str) -> Path | None:
        return self.paths.get(name)

    def require(self, *names: str) -> None:
        """Fail unless each named input path is configured and exists."""
        for name in names:
            p = self.paths.get(name)
            if p is None:
                raise ConfigError(f"paths.{name} is not set")
            if not p.is_file():
                raise ConfigError(f"paths.{name}: no such file {str(p)!r}")

    def check_optional(self, *names: str) -> None:
        for name in names:
            p = self.paths.get(name)
            if p is not None and not p.is_file():
                raise ConfigError(f"paths.{name}: no such file {str(p)!r}")


def read_config(path: str | os.PathLike | None, overrides: list[str] = (),
                out: str | None = None) -> PipelineConfig:
    """Load ``path`` (may be None for pure defaults), apply ``section.key=value``
    overrides, and validate every numeric parameter."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    cp.read_dict(DEFAULTS)
    base = Path.cwd()
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {str(path)!r}")
        try:
            with open(path, encoding="utf-8") as f:
                cp.read_file(f)
        except (configparser.Error, UnicodeDecodeError) as exc:
            raise ConfigError(f"cannot parse {str(path)!r}: {exc}") from exc
        base = path.parent
    for item in overrides:
        key, sep, value = item.partition("=")
        section, dot, option = key.strip().partition(".")
        if not sep or not dot or not option:
            raise ConfigError(f"--set expects section.key=value, got {item!r}")
        if section not in DEFAULTS or option not in DEFAULTS[section]:
            raise ConfigError(f"unknown config key {key.strip()!r}")
        cp.set(section, option, value.strip())
    for section in cp.sections():
        if section not in DEFAULTS:
            raise ConfigError(f"unknown config section [{section}]")
        for option in cp.options(section):
            if option not in DEFAULTS[section]:
                raise ConfigError(f"unknown config key {section}.{option}")

    def resolve(text: str) -> Path | None:
        text = text.strip()
        if not text:
            return None
        p = Path(text)
        return p if p.is_absolute() else base / p

    try:
        paths = {k: resolve(v) for k, v in cp.items("paths") if k != "out"}
        out_dir = Path(out) if out else resolve(cp.get("paths", "out"))
        s = cp["seeds"]
        seeds = SeedSelectionConfig(
            lambda_p=s.getfloat("lambda_p"), lambda_n=s.getfloat("lambda_n"),
            min_freq=s.getint("min_freq"), min_len=s.getint("min_len"),
            seed_pos_tags=_tags(s["pos_tags"]))
        g = cp["graph"]
        origin = g["origin"].strip()
        if origin not in _ORIGINS:
            raise ConfigError(f"graph.origin must be one of {_ORIGINS}")
        max_rounds = int(g["max_rounds"]) if g["max_rounds"].strip() else None
        if max_rounds is not None and max_rounds < 0:
            raise ConfigError("graph.max_rounds must be >= 0")
        pr = cp["propagation"]
        common = dict(alpha=pr.getfloat("alpha"), tol=pr.getfloat("tol"),
                      max_iter=pr.getint("max_iter"), k=pr.getint("k"))
        positive = PropagationConfig(beta=pr.getfloat("beta_pos"),
                                     topic_pos_tags=_tags(pr["pos_topic_tags"]), **common)
        negative = PropagationConfig(beta=pr.getfloat("beta_neg"),
                                     topic_pos_tags=_tags(pr["neg_topic_tags"]), **common)
        pt = cp["patterns"]
        max_gap = int(pt["max_gap"]) if pt["max_gap"].strip() else None
        patterns = PatternConfig(
            gamma_d=pt.getint("gamma_d"), tau_syn=pt.getint("tau_syn"),
            tau_seq=pt.getint("tau_seq"), max_gap=max_gap,
            noun_tags=_tags(pt["noun_tags"]), candidate_tags=_tags(pt["candidate_tags"]),
            min_matches=pt.getint("min_matches"))
        if patterns.tau_syn < 0 or patterns.tau_seq < 0:
            raise ConfigError("tau_syn and tau_seq must be >= 0")
        if max_gap is not None and max_gap < 0:
            raise ConfigError("patterns.max_gap must be >= 0")
        if patterns.min_matches < 1:
            raise ConfigError("patterns.min_matches must be >= 1")
        if not patterns.noun_tags or not patterns.candidate_tags:
            raise ConfigError("noun_tags and candidate_tags must not be empty")
        ev = cp["eval"]
        p_at_n = tuple(int(x) for x in ev["p_at_n"].split(",") if x.strip())
        if any(n < 1 for n in p_at_n):
            raise ConfigError("eval.p_at_n entries must be >= 1")
        exclude_known = ev.getboolean("exclude_known")
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return PipelineConfig(paths=paths, out=out_dir, seeds=seeds, origin=origin,
                          max_rounds=max_rounds, positive=positive, negative=negative,
                          exclusions=_tags(pr["exclusions"]), patterns=patterns,
                          p_at_n=p_at_n, exclude_known=exclude_known)

