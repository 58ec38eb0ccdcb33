import io
import math
import random

import networkx as nx
import numpy as np
import pytest

from lexforge.corpus_io import Thesaurus
from lexforge.graph import (EDGE_FLOOR, UNKNOWN_TAG, bootstrap_expand, build_graph,
                            cosine_weight, synonym_vector)


def th(**entries):
    return Thesaurus({k: frozenset(v) for k, v in entries.items()})


class TestBootstrap:
    def test_transitive(self):
        assert bootstrap_expand({"A"}, th(A="B", B="C")) == {"A", "B", "C"}

    def test_empty_thesaurus(self):
        assert bootstrap_expand({"A"}, Thesaurus()) == {"A"}

    def test_cycle_terminates(self):
        assert bootstrap_expand({"A"}, th(A="B", B="A")) == {"A", "B"}

    def test_reverse_direction_followed(self):
        # only B lists A
        assert bootstrap_expand({"A"}, th(B="AC")) == {"A", "B", "C"}

    def test_max_rounds(self):
        t = th(A="B", B="C", C="D")
        assert bootstrap_expand({"A"}, t, max_rounds=1) == {"A", "B"}
        assert bootstrap_expand({"A"}, t, max_rounds=0) == {"A"}

    def test_empty_origin(self):
        with pytest.raises(ValueError):
            bootstrap_expand(set(), th(A="B"))

    def test_idempotent_monotone(self):
        rng = random.Random(3)
        words = [f"w{i}" for i in range(40)]
        t = Thesaurus({w: frozenset(rng.sample(words, 2)) - {w} for w in words[:25]})
        s = {"w1", "w30"}
        once = bootstrap_expand(s, t)
        assert once >= s
        assert bootstrap_expand(once, t) == once


class TestSynonymVector:
    def test_lookup(self):
        assert synonym_vector("A", th(A="B"), ["A", "B", "C"]).tolist() == [False, True, False]

    def test_no_entry(self):
        assert not synonym_vector("C", th(A="B"), ["A", "B", "C"]).any()

    def test_symmetrised(self):
        assert synonym_vector("A", th(B="A"), ["A", "B", "C"]).tolist() == [False, True, False]

    def test_self_inclusion(self):
        assert synonym_vector("A", th(A="B"), ["A", "B", "C"], include_self=True).tolist() == [True, True, False]

    def test_not_in_vocab(self):
        with pytest.raises(ValueError):
            synonym_vector("Z", th(A="B"), ["A", "B"])


class TestCosine:
    def test_identical(self):
        assert cosine_weight([1, 0, 1], [1, 0, 1]) == 1.0

    def test_orthogonal(self):
        assert cosine_weight([1, 0], [0, 1]) == 0.0

    def test_hand_value(self):
        # dot 1, norms sqrt(2) each
        assert cosine_weight([1, 1, 0], [1, 0, 1]) == pytest.approx(0.5, abs=1e-15)

    def test_zero_vector(self):
        assert cosine_weight([0, 0], [1, 1]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            cosine_weight([1, 0], [1, 0, 1])


def oracle_weight(a, b, t, vocab):
    va = synonym_vector(a, t, vocab, include_self=True)
    vb = synonym_vector(b, t, vocab, include_self=True)
    return cosine_weight(va, vb)


class TestBuildGraph:
    def test_mutual_pair_weight_one(self):
        g = build_graph({"A", "B"}, th(A="B", B="A"))
        assert g.n_edges == 1
        assert g.weight(0, 1) == 1.0

    def test_triangle(self):
        g = build_graph({"A", "B", "C"}, th(A="BC", B="C"))
        assert g.n_edges == 3
        assert np.allclose(g.dense() + np.eye(3), np.ones((3, 3)), atol=1e-15)

    def test_isolated(self):
        g = build_graph({"A", "B", "Z"}, th(A="B"))
        assert g.degree(g.index("Z")) == 0

    def test_path_weights(self):
        # closed neighbourhoods {A,B}, {A,B,C}, {B,C}: 2/sqrt(6)
        g = build_graph({"A", "B", "C"}, th(A="B", B="C"))
        assert g.weight(0, 1) == pytest.approx(2 / math.sqrt(6), abs=1e-15)
        assert g.weight(0, 2) == 0.0

    def test_out_of_vocab_synonyms_ignored(self):
        g = build_graph({"A", "B"}, th(A="BX"))
        assert g.words == ("A", "B") and g.n_edges == 1

    def test_tags(self):
        g = build_graph({"A", "B"}, th(A="B"), {"A": "a"})
        assert g.tags == ("a", UNKNOWN_TAG)

    def test_dump(self):
        g = build_graph({"B", "A", "C"}, th(B="AC"))
        buf = io.BytesIO()
        g.dump(buf)
        lines = buf.getvalue().decode().splitlines()
        assert [ln.split("\t")[:2] for ln in lines] == [["A", "B"], ["B", "C"]]

    def test_against_vector_oracle(self):
        rng = random.Random(9)
        for _ in range(20):
            words = [f"w{i:02d}" for i in range(rng.randint(2, 25))]
            t = Thesaurus({w: frozenset(rng.sample(words, rng.randint(0, min(3, len(words))))) - {w}
                           for w in rng.sample(words, len(words) // 2)})
            vocab = sorted(words)
            g = build_graph(vocab, t)
            dense = g.dense()
            assert np.array_equal(dense, dense.T)
            assert np.all(np.diag(dense) == 0)
            sym = t.symmetric()
            for i, a in enumerate(vocab):
                for j, b in enumerate(vocab):
                    if i == j:
                        continue
                    if b in sym.get(a, ()):
                        expected = oracle_weight(a, b, t, vocab)
                        assert dense[i, j] == pytest.approx(expected, abs=1e-12)
                        assert 0 < dense[i, j] <= 1
                    else:
                        assert dense[i, j] == 0

    def test_weight_one_iff_identical_vectors(self):
        t = th(A="BC", B="C", D="E")
        vocab = ["A", "B", "C", "D", "E"]
        g = build_graph(vocab, t)
        for a, b, w in g.edges():
            va = synonym_vector(a, t, vocab, include_self=True)
            vb = synonym_vector(b, t, vocab, include_self=True)
            assert (w == 1.0) == bool(np.array_equal(va, vb))

    def test_deterministic(self):
        t = th(A="BC", C="D")
        g1, g2 = build_graph(["D", "A", "C", "B"], t), build_graph({"A", "B", "C", "D"}, t)
        assert g1.words == g2.words
        assert np.array_equal(g1.weights, g2.weights)

    def test_floor_constant(self):
        assert 0 < EDGE_FLOOR < 1e-3


def test_bootstrap_matches_components():
    rng = random.Random(17)
    for _ in range(30):
        words = [f"x{i}" for i in range(rng.randint(1, 60))]
        t = Thesaurus({w: frozenset(rng.sample(words, rng.randint(0, 2))) - {w}
                       for w in rng.sample(words, rng.randint(0, len(words)))})
        origin = set(rng.sample(words, rng.randint(1, min(3, len(words)))))
        g = nx.Graph()
        g.add_nodes_from(words)
        g.add_edges_from((h, s) for h, ss in t.entries.items() for s in ss)
        expected = set().union(*(nx.node_connected_component(g, w) for w in origin))
        assert bootstrap_expand(origin, t) == expected
