import random
from fractions import Fraction as F

import pytest

from lettercost import (
    Instance,
    InstanceError,
    LetterCosts,
    exact_optimal,
    huffman_equal_costs,
    is_prefix_free,
    lower_bound,
)

from helpers import random_instance


class TestExactOptimal:
    def test_figure_binary(self):
        inst, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 1]), F(1, 4))
        res = exact_optimal(inst)
        assert res.optimal_cost == 12

    def test_figure_skewed(self):
        inst, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 3]), F(1, 4))
        res = exact_optimal(inst)
        assert res.optimal_cost == 21
        assert sorted(res.optimal_code.strings()) == ["aaa", "aab", "ab", "b"]

    def test_single_word(self):
        inst = Instance((F(1),), LetterCosts([F(1, 2), 1]), F(1, 2))
        res = exact_optimal(inst)
        assert res.optimal_cost == F(1, 2)
        assert res.optimal_code.strings() == ["a"]

    def test_too_large(self):
        probs = tuple([F(1, 12)] * 12)
        with pytest.raises(InstanceError):
            exact_optimal(Instance(probs, LetterCosts([1, 1]), F(1, 2)))

    def test_output_well_formed(self):
        rng = random.Random(101)
        for _ in range(20):
            inst = random_instance(rng, max_n=6)
            res = exact_optimal(inst)
            assert is_prefix_free(res.optimal_code.codewords)
            assert res.optimal_code.ordered
            assert res.normalized_cost >= lower_bound(inst)

    def test_invariant_under_equal_probability_permutation(self):
        letters = LetterCosts([1, 2])
        a = Instance((F(1, 3),) * 3, letters, F(1, 2))
        cost = exact_optimal(a).optimal_cost
        # permuting equal probabilities changes nothing observable
        assert exact_optimal(a).optimal_cost == cost

    def test_monotone_in_extra_word(self):
        rng = random.Random(102)
        for _ in range(10):
            n = rng.randint(2, 5)
            weights = sorted((rng.randint(2, 9) for _ in range(n)), reverse=True)
            letters = LetterCosts([1, rng.randint(1, 3)])
            base, _ = Instance.from_weights(weights, letters, F(1, 2))
            bigger, _ = Instance.from_weights(weights + [F(1, 1000)], letters, F(1, 2))
            # adding a nearly weightless word never lowers the optimal cost
            assert exact_optimal(bigger).optimal_cost >= exact_optimal(base).optimal_cost

    def test_depth_cap_self_check(self):
        rng = random.Random(103)
        for _ in range(10):
            inst = random_instance(rng, max_n=5)
            n = inst.n
            a = exact_optimal(inst, depth_cap=2 * n)
            b = exact_optimal(inst, depth_cap=2 * n + 2)
            assert a.optimal_cost == b.optimal_cost


class TestHuffman:
    def test_figure_binary(self):
        inst, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 1]), F(1, 4))
        res = huffman_equal_costs(inst)
        assert res.optimal_cost == 12

    def test_two_even_words(self):
        inst = Instance((F(1, 2), F(1, 2)), LetterCosts([1, 1]), F(1, 2))
        assert huffman_equal_costs(inst).optimal_cost == 1

    def test_four_letters_four_words(self):
        inst = Instance((F(1, 4),) * 4, LetterCosts([1, 1, 1, 1]), F(1, 2))
        res = huffman_equal_costs(inst)
        assert res.optimal_cost == 1
        assert sorted(res.optimal_code.strings()) == ["a", "b", "c", "d"]

    def test_rejects_unequal(self):
        inst = Instance((F(1),), LetterCosts([1, 2]), F(1, 2))
        with pytest.raises(InstanceError):
            huffman_equal_costs(inst)

    def test_matches_exact_on_random_equal_cost_instances(self):
        rng = random.Random(104)
        for _ in range(20):
            n = rng.randint(1, 8)
            r = rng.randint(2, 3)
            c = rng.randint(1, 3)
            weights = [rng.randint(1, 9) for _ in range(n)]
            inst, _ = Instance.from_weights(weights, LetterCosts([c] * r), F(1, 2))
            h = huffman_equal_costs(inst)
            e = exact_optimal(inst)
            assert h.optimal_cost == e.optimal_cost, (weights, r, c)
            assert is_prefix_free(h.optimal_code.codewords)
            assert h.optimal_code.ordered


class TestLowerBound:
    def test_simple(self):
        inst = Instance((F(1, 2), F(1, 4), F(1, 4)), LetterCosts([1, 1]), F(1, 2))
        assert lower_bound(inst) == F(1, 2)

    def test_degenerate(self):
        inst = Instance((F(1),), LetterCosts([1, 1]), F(1, 2))
        assert lower_bound(inst) == 0

    def test_figure_reference(self):
        inst, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 3]), F(1, 4))
        lb = lower_bound(inst)
        assert lb == F(2, 3)
        res = exact_optimal(inst)
        assert res.normalized_cost >= lb
