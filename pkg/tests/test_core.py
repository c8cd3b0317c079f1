import random
from fractions import Fraction as F

import pytest

from lettercost import (
    CodeAssignment,
    Instance,
    InstanceError,
    LetterCosts,
    code_cost,
    codeword_cost,
    is_k_prefix_free,
    is_prefix_free,
    normalize,
    reorder,
)
from lettercost.core import runs_from_str, runs_is_prefix, runs_to_str

from helpers import is_prefix_free_pairwise, tuples_to_runs


def inst(probs, costs, eps):
    return Instance(tuple(F(p) for p in probs), LetterCosts(costs), F(eps))


ONE = (F(1),)


class TestNormalize:
    def test_already_conforming(self):
        norm = normalize(inst(ONE, [1, 1], F(1, 2)))
        assert norm.instance.letters.costs == (F(1), F(1))
        assert norm.epsilon_prime == F(1, 2)
        assert norm.cost_quantum == F(1, 2)

    def test_one_three(self):
        norm = normalize(inst(ONE, [1, 3], F(1, 2)))
        assert norm.instance.letters.costs == (F(1, 3), F(1))
        assert norm.epsilon_prime == F(1, 3)

    def test_uniform_scaling(self):
        norm = normalize(inst(ONE, [2, 2], F(1, 4)))
        assert norm.instance.letters.costs == (F(1), F(1))
        assert norm.epsilon_prime == F(1, 4)
        assert norm.scale_factor == 2

    def test_rejects_bad_epsilon(self):
        with pytest.raises(InstanceError):
            inst(ONE, [1, 1], F(0))
        with pytest.raises(InstanceError):
            inst(ONE, [1, 1], F(3, 2))

    def test_epsilon_shrink_bounded(self):
        rng = random.Random(11)
        for _ in range(40):
            costs = sorted(F(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(rng.randint(2, 4)))
            eps = F(rng.randint(1, 10), 10)
            norm = normalize(inst(ONE, costs, eps))
            assert norm.epsilon_prime >= eps / (2 * (1 + eps))
            assert norm.epsilon_prime <= eps

    def test_value_idempotent(self):
        rng = random.Random(12)
        for _ in range(30):
            costs = sorted(F(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(rng.randint(2, 4)))
            norm = normalize(inst(ONE, costs, F(rng.randint(1, 10), 10)))
            again = normalize(norm.instance)
            assert again.instance.letters.costs == norm.instance.letters.costs
            assert again.epsilon_prime == norm.epsilon_prime

    def test_cost_distortion_bounded(self):
        # every code's cost under normalized letters, mapped back by the scale
        # factor, is within a (1+eps) factor above its original cost
        import itertools

        rng = random.Random(13)
        for _ in range(15):
            r = rng.randint(2, 3)
            costs = sorted(F(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(r))
            eps = F(rng.randint(1, 10), 10)
            instance = inst(ONE, costs, eps)
            norm = normalize(instance)
            for length in range(1, 5):
                for word in itertools.product(range(r), repeat=length):
                    cost = sum(costs[let] for let in word)
                    norm_cost = sum(norm.instance.letters.costs[let] for let in word)
                    mapped = norm_cost * norm.scale_factor
                    assert cost <= mapped <= (1 + eps) * cost

    def test_quantum_divides_everything(self):
        norm = normalize(inst(ONE, [F(3, 7), 1, 2], F(1, 3)))
        for c in norm.instance.letters.costs:
            assert (c / norm.cost_quantum).denominator == 1
        assert (norm.epsilon_prime / norm.cost_quantum).denominator == 1


class TestCodewordCost:
    LETTERS13 = LetterCosts([1, 3])

    def test_figure_pair(self):
        assert codeword_cost("ab", self.LETTERS13) == 4
        assert codeword_cost("aaa", self.LETTERS13) == 3

    def test_empty(self):
        assert codeword_cost("", self.LETTERS13) == 0

    def test_bad_letter(self):
        with pytest.raises(InstanceError):
            codeword_cost(((5, 1),), self.LETTERS13)


class TestPrefixFree:
    def test_binary_block(self):
        assert is_prefix_free(["aa", "ab", "ba", "bb"])

    def test_figure_code(self):
        assert is_prefix_free(["aaa", "aab", "ab", "b"])

    def test_nested(self):
        letters = LetterCosts([1, 3])
        assert not is_prefix_free(["a", "ab"])
        assert is_k_prefix_free(["a", "ab"], 1, letters)
        assert not is_k_prefix_free(["a", "ab"], 2, letters)

    def test_duplicates(self):
        assert not is_prefix_free(["ab", "ab"])

    def test_trie_input(self):
        from lettercost import CodewordTrie

        trie = CodewordTrie()
        for w in ["aaa", "aab", "ab", "b"]:
            trie.insert(w)
        assert is_prefix_free(trie)
        trie.insert("a")
        assert not is_prefix_free(trie)
        assert is_k_prefix_free(trie, 1, LetterCosts([1, 3]))

    def test_matches_pairwise_bruteforce(self):
        rng = random.Random(21)
        for _ in range(60):
            m = rng.randint(1, 50)
            words = [
                tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 6)))
                for _ in range(m)
            ]
            assert is_prefix_free(tuples_to_runs(words)) == is_prefix_free_pairwise(words)


class TestCodeCost:
    def test_figure_binary(self):
        instance, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 1]), F(1, 4))
        code = CodeAssignment(tuple(runs_from_str(w) for w in ["aa", "ab", "ba", "bb"]), instance.letters)
        assert code_cost(code, instance) * instance.weight_total == 12

    def test_figure_skewed(self):
        instance, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 3]), F(1, 4))
        code = CodeAssignment(tuple(runs_from_str(w) for w in ["aaa", "b", "ab", "aab"]), instance.letters)
        assert code_cost(code, instance) * instance.weight_total == 21

    def test_single_word(self):
        instance = inst(ONE, [1, 2], F(1, 2))
        code = CodeAssignment((runs_from_str("a"),), instance.letters)
        assert code_cost(code, instance) == 1

    def test_size_mismatch(self):
        instance = inst([F(1, 2), F(1, 2)], [1, 2], F(1, 2))
        code = CodeAssignment((runs_from_str("a"),), instance.letters)
        with pytest.raises(InstanceError):
            code_cost(code, instance)


class TestReorder:
    def test_swap(self):
        letters = LetterCosts([1, 1])
        code = CodeAssignment((runs_from_str("aa"), runs_from_str("b")), letters)
        fixed = reorder(code)
        assert fixed.strings() == ["b", "aa"]
        assert fixed.ordered

    def test_figure_ordering(self):
        instance, _ = Instance.from_weights([2, 2, 1, 1], LetterCosts([1, 3]), F(1, 4))
        code = CodeAssignment(
            tuple(runs_from_str(w) for w in ["b", "ab", "aab", "aaa"]), instance.letters
        )
        fixed = reorder(code)
        # costs 3,3,4,5: the two cost-3 words go to the two heaviest words
        assert code_cost(fixed, instance) * instance.weight_total == 21
        assert [str(codeword_cost(c, instance.letters)) for c in fixed.codewords] == ["3", "3", "4", "5"]

    def test_idempotent_on_ordered(self):
        letters = LetterCosts([1, 2])
        code = CodeAssignment((runs_from_str("a"), runs_from_str("b")), letters)
        assert reorder(code).codewords == code.codewords

    def test_never_increases_cost(self):
        rng = random.Random(31)
        letters = LetterCosts([1, 2])
        base = ["a", "ba", "bb", "ab"]
        for _ in range(30):
            shuffled = base[:]
            rng.shuffle(shuffled)
            probs = sorted((F(rng.randint(1, 9), 20) for _ in range(4)), reverse=True)
            total = sum(probs)
            instance = Instance(tuple(p / total for p in probs), letters, F(1, 2))
            code = CodeAssignment(tuple(runs_from_str(w) for w in shuffled), letters)
            assert code_cost(reorder(code), instance) <= code_cost(code, instance)

    def test_stable_ties(self):
        letters = LetterCosts([1, 1])
        code = CodeAssignment((runs_from_str("aa"), runs_from_str("ab")), letters)
        assert reorder(code).strings() == ["aa", "ab"]


class TestRuns:
    def test_roundtrip(self):
        for s in ["a", "aab", "abba", "bbbb"]:
            assert runs_to_str(runs_from_str(s)) == s

    def test_prefix_predicate(self):
        assert runs_is_prefix(runs_from_str("aa"), runs_from_str("aab"))
        assert runs_is_prefix(runs_from_str("ab"), runs_from_str("ab"))
        assert not runs_is_prefix(runs_from_str("ab"), runs_from_str("aab"))
        assert not runs_is_prefix(runs_from_str("aab"), runs_from_str("aa"))
