import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexforge.corpus_io import NEGATIVE, POSITIVE, Lexicon, LexiconEntry, Token
from lexforge.evaluation import (NEUTRAL, EvaluationError, GoldLexicon, LabeledRanking,
                                 classify_sentence, evaluate_classification, f1_score,
                                 label_counts, label_ranking, parse_classification_dataset,
                                 parse_labels, parse_rank_dump, precision_at_n, prf1)


def ranking(*labels):
    return LabeledRanking(tuple((f"w{i}", lab) for i, lab in enumerate(labels)))


class TestPrecisionAtN:
    def test_all_correct(self):
        assert precision_at_n(ranking(*[POSITIVE] * 10), 10) == 1.0

    def test_two_wrong(self):
        r = ranking(*[POSITIVE] * 8 + [NEGATIVE, NEUTRAL])
        assert precision_at_n(r, 10) == 0.8

    def test_forty_nine_of_fifty(self):
        assert precision_at_n(ranking(*[POSITIVE] * 49 + [NEUTRAL]), 50) == 0.98

    def test_neutral_is_miss(self):
        assert precision_at_n(ranking(NEUTRAL, POSITIVE), 2) == 0.5

    def test_negative_relevance(self):
        assert precision_at_n(ranking(NEGATIVE, POSITIVE), 2, relevant={NEGATIVE}) == 0.5

    def test_prefix(self):
        r = ranking(POSITIVE, NEGATIVE, NEGATIVE)
        assert precision_at_n(r, 1) == 1.0

    @pytest.mark.parametrize("n", [0, 4])
    def test_bounds(self, n):
        with pytest.raises(EvaluationError):
            precision_at_n(ranking(POSITIVE, POSITIVE, POSITIVE), n)

    def test_bad_label(self):
        with pytest.raises(EvaluationError):
            ranking("pos")


class TestPRF1:
    def test_hand(self):
        p, r, f = prf1({"a", "b", "c", "d"}, {"a", "b", "x"})
        assert (p, r) == (0.5, 2 / 3)
        assert f == pytest.approx(4 / 7, abs=1e-15)

    def test_empty_extracted(self):
        assert prf1(set(), {"a"}) == (0.0, 0.0, 0.0)

    def test_empty_gold(self):
        with pytest.raises(EvaluationError):
            prf1({"a"}, set())

    def test_perfect(self):
        assert prf1({"a", "b"}, {"b", "a"}) == (1.0, 1.0, 1.0)

    def test_f1_from_reported_pr(self):
        assert f1_score(0.6347, 0.3411) == pytest.approx(0.4437, abs=5e-5)

    def test_f1_zero(self):
        assert f1_score(0.0, 0.0) == 0.0

    @given(st.sets(st.integers(0, 30)), st.sets(st.integers(0, 30), min_size=1))
    def test_ranges(self, ext, gold):
        p, r, f = prf1(ext, gold)
        assert 0 <= p <= 1 and 0 <= r <= 1 and 0 <= f <= 1
        assert min(p, r) - 1e-12 <= f <= max(p, r) + 1e-12


class TestGold:
    def test_overlap_rejected(self):
        with pytest.raises(EvaluationError):
            GoldLexicon(frozenset({"a"}), frozenset({"a"}))

    def test_from_lexicon(self):
        g = GoldLexicon.from_lexicon(Lexicon((LexiconEntry("a", POSITIVE, 1.0),
                                              LexiconEntry("b", NEGATIVE, 1.0))))
        assert g.positive == {"a"} and g.words() == {"a", "b"}


LEX = Lexicon((LexiconEntry("漂亮", POSITIVE, 1.0), LexiconEntry("清晰", POSITIVE, 1.0),
               LexiconEntry("模糊", NEGATIVE, 1.0), LexiconEntry("昂贵", NEGATIVE, 1.0)))


class TestClassifier:
    def test_positive_vote(self):
        assert classify_sentence(["漂亮", "的", "屏幕"], LEX) == POSITIVE

    def test_two_vs_one(self):
        assert classify_sentence(["模糊", "昂贵", "漂亮"], LEX) == NEGATIVE

    def test_tie_positive(self):
        assert classify_sentence(["漂亮", "模糊"], LEX) == POSITIVE
        assert classify_sentence([], LEX) == POSITIVE

    def test_tokens_accepted(self):
        assert classify_sentence([Token("模糊", "a")], LEX) == NEGATIVE

    def test_empty_lexicon(self):
        with pytest.raises(EvaluationError):
            classify_sentence(["漂亮"], Lexicon())

    def test_permutation_invariant(self):
        rng = random.Random(2)
        vocab = ["漂亮", "清晰", "模糊", "昂贵", "的", "手机"]
        for _ in range(200):
            toks = [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
            label = classify_sentence(toks, LEX)
            rng.shuffle(toks)
            assert classify_sentence(toks, LEX) == label

    def test_accuracy(self):
        data = [(["漂亮"], POSITIVE), (["模糊"], NEGATIVE), (["模糊"], POSITIVE), ([], NEGATIVE)]
        assert evaluate_classification(data, LEX) == 0.5

    def test_empty_dataset(self):
        with pytest.raises(EvaluationError):
            evaluate_classification([], LEX)


class TestParsers:
    def test_dataset(self):
        issues = []
        rows = parse_classification_dataset("pos\t漂亮_a 屏幕_n\nbad\tx_a\nneg\t\n".encode(), issues)
        assert rows == [((Token("漂亮", "a"), Token("屏幕", "n")), POSITIVE), ((), NEGATIVE)]
        assert [i.line for i in issues] == [2]

    def test_labels(self):
        issues = []
        labels = parse_labels("a\tpositive\nb\tneutral\nc\tmaybe\n".encode(), issues)
        assert labels == {"a": POSITIVE, "b": NEUTRAL} and issues[0].line == 3

    def test_rank_dump_and_labelling(self):
        words = parse_rank_dump(b"b\t0.5\t1\na\t0.25\t2\nz\t0.25\t3\n")
        r = label_ranking(words, {"a": NEGATIVE, "b": POSITIVE})
        assert r.items == (("b", POSITIVE), ("a", NEGATIVE), ("z", NEUTRAL))
        assert label_counts(r) == {POSITIVE: 1, NEGATIVE: 1, NEUTRAL: 1}
