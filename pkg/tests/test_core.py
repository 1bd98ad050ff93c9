"""Domain types and PMI arithmetic."""

import numpy as np
import pytest

from pmisum.core import (
    Document,
    Hyperparams,
    LogProbTable,
    PmiScoreProvider,
    SelectionResult,
    Sentence,
    objective,
    pmi_red,
    pmi_rel,
    redundancy_of_set,
    relevance_of,
)
from pmisum.synthetic import (
    make_independent_table,
    make_random_table,
    make_table_from_matrix,
)


class TestSentence:
    def test_strips_whitespace(self):
        assert Sentence(0, "  hello  ").text == "hello"

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Sentence(0, "   ")

    def test_rejects_negative_index(self):
        with pytest.raises(ValueError):
            Sentence(-1, "hello")


class TestDocument:
    def test_from_texts_assigns_indices(self):
        doc = Document.from_texts("d1", ["One.", "Two.", "Three."])
        assert doc.n == 3
        assert [s.index for s in doc.sentences] == [0, 1, 2]

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Document.from_texts("d1", [])

    def test_rejects_gapped_indices(self):
        with pytest.raises(ValueError):
            Document("d1", (Sentence(0, "a"), Sentence(2, "b")))

    def test_text_of_renders_document_order(self):
        doc = Document.from_texts("d1", ["One.", "Two.", "Three."])
        # selection order does not matter, rendering is by position
        assert doc.text_of([2, 0]) == "One. Three."
        assert doc.text_of() == "One. Two. Three."

    def test_text_of_deduplicates(self):
        doc = Document.from_texts("d1", ["One.", "Two."])
        assert doc.text_of([1, 1, 0]) == "One. Two."


class TestLogProbTable:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            LogProbTable(log_p=np.zeros(3), log_p_cond=np.zeros((2, 3)))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            LogProbTable(log_p=np.zeros(0), log_p_cond=np.zeros((0, 0)))

    def test_rejects_non_finite(self):
        bad = np.zeros((2, 2))
        bad[0, 1] = np.nan
        with pytest.raises(ValueError):
            LogProbTable(log_p=np.zeros(2), log_p_cond=bad)
        bad[0, 1] = np.inf
        with pytest.raises(ValueError):
            LogProbTable(log_p=np.zeros(2), log_p_cond=bad)

    def test_arrays_frozen(self):
        table = make_random_table(4, np.random.default_rng(0))
        with pytest.raises(ValueError):
            table.log_p[0] = 0.0
        with pytest.raises(ValueError):
            table.log_p_cond[0, 0] = 0.0

    def test_metadata_not_compared(self):
        rng = np.random.default_rng(1)
        log_p = rng.uniform(-5, -1, 3)
        cond = rng.uniform(-5, -1, (3, 3))
        a = LogProbTable(log_p=log_p.copy(), log_p_cond=cond.copy(), metadata={"x": 1})
        b = LogProbTable(log_p=log_p.copy(), log_p_cond=cond.copy(), metadata={"x": 2})
        assert a == b


class TestHyperparams:
    def test_rejects_non_positive_k(self):
        with pytest.raises(ValueError):
            Hyperparams(1.0, -1.0, 0)

    def test_accepts_any_weights(self):
        hp = Hyperparams(-2.0, 2.0, 1)
        assert (hp.lambda1, hp.lambda2, hp.k) == (-2.0, 2.0, 1)


class TestSelectionResult:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            SelectionResult(selected=(1, 1), deltas=(0.0, 0.0), objective=0.0)


class TestPmiRel:
    def test_hand_value(self):
        # single forced case: cond -8, marginal -10 -> 2
        table = LogProbTable(
            log_p=np.array([-3.0, -10.0]),
            log_p_cond=np.array([[-3.0, -8.0], [-4.0, -10.0]]),
        )
        assert pmi_rel(table, 0, 1) == 2.0

    def test_independence_exactly_zero(self):
        rng = np.random.default_rng(7)
        table = make_independent_table(rng.uniform(-12, -1, 6))
        for s in range(6):
            for d in range(6):
                assert pmi_rel(table, s, d) == 0.0

    def test_matches_scalar_oracle(self):
        """Randomized table: value equals the difference recomputed
        from plain Python floats held outside the table."""
        rng = np.random.default_rng(11)
        log_p = [float(x) for x in rng.uniform(-9, -1, 5)]
        cond = [[float(x) for x in row] for row in rng.uniform(-9, -1, (5, 5))]
        table = LogProbTable(log_p=np.array(log_p), log_p_cond=np.array(cond))
        for s in range(5):
            for d in range(5):
                assert pmi_rel(table, s, d) == cond[s][d] - log_p[d]

    def test_index_out_of_range(self):
        table = make_random_table(3, np.random.default_rng(0))
        with pytest.raises(IndexError):
            pmi_rel(table, 3, 0)
        with pytest.raises(IndexError):
            pmi_rel(table, 0, -1)


class TestPmiRed:
    def test_conditions_on_earlier_position(self):
        rng = np.random.default_rng(13)
        log_p = [float(x) for x in rng.uniform(-9, -1, 4)]
        cond = [[float(x) for x in row] for row in rng.uniform(-9, -1, (4, 4))]
        table = LogProbTable(log_p=np.array(log_p), log_p_cond=np.array(cond))
        # i < j reads row i (the earlier position), column j
        assert pmi_red(table, 0, 2) == cond[0][2] - log_p[2]
        assert pmi_red(table, 1, 3) == cond[1][3] - log_p[3]

    def test_symmetric_exactly(self):
        rng = np.random.default_rng(17)
        table = make_random_table(6, rng)
        for i in range(6):
            for j in range(6):
                if i != j:
                    assert pmi_red(table, i, j) == pmi_red(table, j, i)

    def test_self_pair_rejected(self):
        table = make_random_table(3, np.random.default_rng(0))
        with pytest.raises(ValueError):
            pmi_red(table, 1, 1)

    def test_independence_exactly_zero(self):
        table = make_independent_table(np.linspace(-8, -2, 5))
        for i in range(5):
            for j in range(5):
                if i != j:
                    assert pmi_red(table, i, j) == 0.0


class TestRelevanceOf:
    def test_two_term_hand_sum(self):
        # pairwise scores 1.5 and -0.5 for sentence 0 -> total 1.0
        assoc = [
            [0.0, 1.5, -0.5],
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0],
        ]
        table = make_table_from_matrix(assoc, [-4.0, -5.0, -6.0])
        assert relevance_of(table, 0) == 1.0

    def test_independence_zero(self):
        table = make_independent_table(np.linspace(-9, -3, 4))
        for s in range(4):
            assert relevance_of(table, s) == 0.0

    def test_matches_vectorized_oracle(self):
        """Sum recomputed with numpy whole-row arithmetic (a different
        evaluation path from the scalar loop)."""
        rng = np.random.default_rng(19)
        table = make_random_table(6, rng)
        for s in range(6):
            diffs = table.log_p_cond[s] - table.log_p
            expected = float(diffs.sum() - diffs[s])
            assert relevance_of(table, s) == pytest.approx(expected, abs=1e-12)

    def test_include_self_pair_adds_diagonal(self):
        rng = np.random.default_rng(23)
        table = make_random_table(5, rng)
        for s in range(5):
            gap = relevance_of(table, s, include_self_pair=True) - relevance_of(table, s)
            diag = float(table.log_p_cond[s, s] - table.log_p[s])
            assert gap == pytest.approx(diag, abs=1e-12)


class TestRedundancyOfSet:
    def test_empty_and_singleton(self):
        table = make_random_table(5, np.random.default_rng(0))
        assert redundancy_of_set(table, []) == 0.0
        assert redundancy_of_set(table, [4]) == 0.0

    def test_three_uniform_pairs(self):
        # every pair scores 1.0, C(3,2) pairs -> 3.0
        assoc = np.ones((4, 4)) - np.eye(4)
        table = make_table_from_matrix(assoc, [-3.0, -4.0, -5.0, -6.0])
        assert redundancy_of_set(table, [0, 1, 2]) == 3.0

    def test_rejects_duplicates(self):
        table = make_random_table(4, np.random.default_rng(0))
        with pytest.raises(ValueError):
            redundancy_of_set(table, [0, 0, 1])

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(29)
        table = make_random_table(7, rng)
        subset = [1, 3, 4, 6]
        expected = 0.0
        for a in range(len(subset)):
            for b in range(a + 1, len(subset)):
                i, j = subset[a], subset[b]
                expected += float(table.log_p_cond[i, j] - table.log_p[j])
        assert redundancy_of_set(table, subset) == pytest.approx(expected, abs=1e-12)


class TestObjective:
    def test_empty_set_is_zero(self):
        table = make_random_table(4, np.random.default_rng(0))
        assert objective(table, [], Hyperparams(1.0, -1.0, 2)) == 0.0

    def test_degenerate_weights(self):
        table = make_random_table(4, np.random.default_rng(3))
        hp = Hyperparams(1.0, 0.0, 1)
        assert objective(table, [0], hp) == relevance_of(table, 0)

    def test_hand_expansion_at_tuned_weights(self):
        rng = np.random.default_rng(31)
        table = make_random_table(5, rng)
        hp = Hyperparams(2.0, -2.0, 2)
        expected = 2.0 * (relevance_of(table, 1) + relevance_of(table, 3)) - 2.0 * pmi_red(
            table, 1, 3
        )
        assert objective(table, [1, 3], hp) == pytest.approx(expected, abs=1e-12)

    def test_linear_in_weights(self):
        rng = np.random.default_rng(37)
        for _ in range(50):
            table = make_random_table(int(rng.integers(2, 8)), rng)
            k = int(rng.integers(1, table.n + 1))
            subset = list(rng.choice(table.n, size=k, replace=False))
            l1, l2 = rng.uniform(-2, 2, 2)
            a = rng.uniform(-3, 3)
            base = objective(table, subset, Hyperparams(l1, l2, k))
            scaled = objective(table, subset, Hyperparams(a * l1, a * l2, k))
            assert scaled == pytest.approx(a * base, rel=1e-12, abs=1e-12)

    def test_relevance_is_modular(self):
        """The relevance part of a set is the plain sum over members:
        computing the objective with lambda2 = 0 equals summing
        single-sentence objectives."""
        rng = np.random.default_rng(41)
        for _ in range(50):
            table = make_random_table(int(rng.integers(2, 9)), rng)
            k = int(rng.integers(1, table.n + 1))
            subset = list(rng.choice(table.n, size=k, replace=False))
            hp = Hyperparams(float(rng.uniform(-2, 2)), 0.0, k)
            total = objective(table, subset, hp)
            by_parts = sum(objective(table, [s], hp) for s in subset)
            assert total == pytest.approx(by_parts, abs=1e-9)

    def test_independence_objective_zero(self):
        rng = np.random.default_rng(43)
        table = make_independent_table(rng.uniform(-10, -2, 6))
        for subset in ([], [0], [1, 4], [0, 2, 3, 5]):
            assert objective(table, subset, Hyperparams(2.0, -2.0, 4)) == 0.0


class TestPmiScoreProvider:
    def test_agrees_with_free_functions(self):
        rng = np.random.default_rng(47)
        table = make_random_table(6, rng)
        provider = PmiScoreProvider(table)
        assert provider.n == 6
        for s in range(6):
            assert provider.rel(s) == relevance_of(table, s)
        for i in range(6):
            for j in range(6):
                if i != j:
                    assert provider.red(i, j) == pmi_red(table, i, j)

    def test_include_self_pair_flag(self):
        rng = np.random.default_rng(53)
        table = make_random_table(4, rng)
        provider = PmiScoreProvider(table, include_self_pair=True)
        for s in range(4):
            assert provider.rel(s) == relevance_of(table, s, include_self_pair=True)
