"""Domain-specific sentiment lexicon induction.

Pipeline stages: seed scoring over rated comments, synonym-graph expansion
with topic-sensitive PageRank, and dependency/POS pattern mining for
extracting new domain sentiment words.
"""

__version__ = "0.1.0"


class LexforgeError(Exception):
    """Base class for all errors raised by lexforge."""
