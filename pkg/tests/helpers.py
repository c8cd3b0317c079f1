"""Independent brute-force oracles and generators shared by the tests.

Everything here enumerates explicitly, string by string, so it stays
independent of the library's counting and construction paths.
"""

from fractions import Fraction
import random

from lettercost import Instance, LetterCosts
from lettercost.core import runs_from_letters


def all_strings_up_to_cost(costs, cap):
    """Every nonempty letter tuple whose cost is at most cap, by brute DFS."""
    costs = [Fraction(c) for c in costs]
    out = []
    stack = [((), Fraction(0))]
    while stack:
        word, c = stack.pop()
        for let in range(len(costs)):
            nc = c + costs[let]
            if nc <= cap:
                nw = word + (let,)
                out.append((nw, nc))
                stack.append((nw, nc))
    return out


def strings_of_cost(costs, target):
    return [w for w, c in all_strings_up_to_cost(costs, target) if c == target]


def count_free_brute(costs, blocked_words, target):
    """Number of cost-`target` strings with no prefix among blocked_words."""
    blocked = [tuple(b) for b in blocked_words]

    def has_blocked_prefix(word):
        return any(word[: len(b)] == b for b in blocked)

    return sum(1 for w in strings_of_cost(costs, target) if not has_blocked_prefix(w))


def is_prefix_free_pairwise(words):
    """O(m^2) reference predicate over letter tuples or strings."""
    ws = [tuple(w) for w in words]
    for i, a in enumerate(ws):
        for j, b in enumerate(ws):
            if i != j and b[: len(a)] == a:
                return False
    return True


def random_instance(rng: random.Random, max_n=8, max_r=3, max_cost=4, eps_choices=None):
    n = rng.randint(1, max_n)
    r = rng.randint(2, max_r)
    costs = sorted(rng.randint(1, max_cost) for _ in range(r))
    weights = [rng.randint(1, 9) for _ in range(n)]
    eps = rng.choice(eps_choices or [Fraction(1, 5), Fraction(3, 10), Fraction(1, 2)])
    inst, _ = Instance.from_weights(weights, LetterCosts(costs), eps)
    return inst


def tuples_to_runs(words):
    return [runs_from_letters(w) for w in words]


def brute_force_leveled_minimum(norm, graph, guess, n):
    """Minimum cost over every leveled k-prefix code consistent with the guess,
    by explicit enumeration of level codeword subsets."""
    import itertools

    costs = norm.instance.letters.costs
    quantum = norm.cost_quantum
    k_q = graph.k_q
    cap = (k_q + 2 * norm.unit_q) * quantum
    universe = all_strings_up_to_cost(costs, cap)

    by_cost_q = {}
    for word, cost in universe:
        by_cost_q.setdefault(int(cost / quantum), []).append(word)

    level0 = ()
    if guess.f0 > 0:
        if guess.f0 * norm.letters_q[0] >= norm.unit_q:
            return None
        level0 = ((0,) * guess.f0,)

    pools = []
    for lvl, cnt in guess.level_counts:
        target = graph.level_target(lvl)
        pools.append((target, cnt, by_cost_q.get(target, [])))

    tail_needed = n - guess.codeword_total()
    if tail_needed < 0:
        return None

    best = None
    for combo in itertools.product(
        *[itertools.combinations(pool, cnt) for _, cnt, pool in pools]
    ):
        chosen = list(level0)
        for group in combo:
            chosen.extend(group)
        if not is_prefix_free_pairwise(chosen):
            continue
        # eligible tail strings: cost >= k, no chosen prefix (all of cost < k)
        eligible = []
        for word, cost in universe:
            if cost / quantum < k_q:
                continue
            if any(word[: len(s)] == s for s in chosen):
                continue
            eligible.append(cost)
        eligible.sort()
        if len(eligible) < tail_needed:
            continue
        word_costs = sorted(
            [sum(costs[let] for let in w) for w in chosen] + eligible[:tail_needed]
        )
        total = sum(p * c for p, c in zip(norm.instance.probabilities, word_costs))
        if best is None or total < best:
            best = total
    return best
