"""Ground-truth solvers for small instances and classical baselines.

exact_optimal performs branch and bound over ordered prefix codes: candidate
codewords are enumerated in (cost, lexicographic) order, each word in turn
takes a candidate no cheaper than its predecessor's, and a branch dies when
its accumulated cost plus the cheapest possible completion (per-word cheapest
remaining candidates, conflicts ignored) cannot beat the incumbent. The
structural bound cost >= (1 - p1) * l2 sanity-checks the result.

huffman_equal_costs is the classical greedy merge, valid only when every
letter costs the same; it cross-checks exact_optimal on that subfamily.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CodeAssignment,
    Instance,
    InstanceError,
    Runs,
    code_cost,
    runs_from_letters,
)

MAX_ORACLE_WORDS = 10


@dataclass(frozen=True)
class OracleResult:
    optimal_cost: Fraction  # raw scale: original letter costs times raw weights
    optimal_code: CodeAssignment
    nodes_explored: int

    @property
    def normalized_cost(self) -> Fraction:
        letters = self.optimal_code.letters
        return self.optimal_cost / letters.costs[1]


class _CandidatePool:
    """All strings of at most depth_cap letters, streamed in (cost, lex) order."""

    def __init__(self, letters, depth_cap: int):
        self.costs = letters.costs
        self.depth_cap = depth_cap
        self._heap: list[tuple[Fraction, tuple[int, ...]]] = []
        self.items: list[tuple[Fraction, tuple[int, ...]]] = []
        for let in range(len(self.costs)):
            heapq.heappush(self._heap, (self.costs[let], (let,)))

    def ensure(self, count: int) -> bool:
        """Grow the materialized pool to `count` entries; False if exhausted."""
        while len(self.items) < count:
            if not self._heap:
                return False
            cost, word = heapq.heappop(self._heap)
            self.items.append((cost, word))
            if len(word) < self.depth_cap:
                for let in range(len(self.costs)):
                    heapq.heappush(self._heap, (cost + self.costs[let], word + (let,)))
        return True


def exact_optimal(
    instance: Instance,
    depth_cap: int | None = None,
    max_words: int = MAX_ORACLE_WORDS,
) -> OracleResult:
    """Exact minimum-cost prefix code over codewords of at most depth_cap letters.

    depth_cap defaults to 2n. The search itself never needs codewords longer
    than n-1 letters: a code trie with a single-child internal node contracts
    to a strictly cheaper prefix code, so some optimal trie has at most n-1
    internal nodes and hence depth at most n-1. Candidates are therefore
    enumerated up to min(depth_cap, n-1) letters without changing the result.
    """
    n = instance.n
    if n > max_words:
        raise InstanceError("instance too large for the exact oracle (n=%d)" % n)
    if depth_cap is None:
        depth_cap = 2 * n
    probs = instance.probabilities
    pool = _CandidatePool(instance.letters, min(depth_cap, max(n - 1, 1)))

    def conflicts(word: tuple[int, ...], chosen: list[tuple[int, ...]]) -> bool:
        for other in chosen:
            if word[: len(other)] == other or other[: len(word)] == word:
                return True
        return False

    # initial incumbent: the n cheapest codewords of one common length
    # (all the same length, hence prefix-free)
    import itertools

    r = instance.letters.r
    depth = 1
    while r**depth < n:
        depth += 1
    flat = sorted(
        itertools.product(range(r), repeat=depth),
        key=lambda w: (sum(instance.letters.costs[let] for let in w), w),
    )[:n]
    best_words = [tuple(w) for w in flat]
    best_cost = sum(
        probs[i] * sum(instance.letters.costs[let] for let in w)
        for i, w in enumerate(best_words)
    )
    nodes = 0

    def completion_bound(word_i: int, min_idx: int) -> Fraction | None:
        """Cheapest conceivable completion for words word_i.. using pool order."""
        remaining = n - word_i
        if not pool.ensure(min_idx + remaining):
            return None
        total = Fraction(0)
        for j in range(remaining):
            total += probs[word_i + j] * pool.items[min_idx + j][0]
        return total

    chosen: list[tuple[int, ...]] = []

    def dfs(word_i: int, min_idx: int, partial: Fraction) -> None:
        nonlocal best_cost, best_words, nodes
        if word_i == n:
            if partial < best_cost:
                best_cost = partial
                best_words = list(chosen)
            return
        idx = min_idx
        while True:
            nodes += 1
            if not pool.ensure(idx + 1):
                return
            cost, word = pool.items[idx]
            bound = completion_bound(word_i, idx)
            if bound is None or partial + bound >= best_cost:
                return  # candidates only get costlier from here
            if not conflicts(word, chosen):
                chosen.append(word)
                dfs(word_i + 1, idx + 1, partial + probs[word_i] * cost)
                chosen.pop()
            idx += 1

    dfs(0, 0, Fraction(0))

    codewords = tuple(runs_from_letters(w) for w in best_words)
    assignment = CodeAssignment(codewords, instance.letters)
    raw_cost = best_cost * instance.weight_total
    assert best_cost / instance.letters.costs[1] >= 1 - probs[0]
    return OracleResult(raw_cost, assignment, nodes)


def huffman_equal_costs(instance: Instance) -> OracleResult:
    """Classical greedy merge; requires every letter cost to be equal."""
    letters = instance.letters
    costs = set(letters.costs)
    if len(costs) != 1:
        raise InstanceError("letter costs are not all equal")
    letter_cost = letters.costs[0]
    r = letters.r
    n = instance.n
    probs = list(instance.probabilities)

    if n == 1:
        code = CodeAssignment((((0, 1),),), letters)
        return OracleResult(
            letter_cost * instance.weight_total, code, nodes_explored=1
        )

    # pad with zero-probability dummies so the r-ary merge comes out full
    pad = 0
    while (n + pad - 1) % (r - 1) != 0:
        pad += 1
    heap: list[tuple[Fraction, int, int | None]] = []
    entries: list[tuple[Fraction, int, int | None]] = []
    for i, p in enumerate(probs):
        entries.append((p, i, i))
    for j in range(pad):
        entries.append((Fraction(0), n + j, None))
    counter = len(entries)
    depth = [0] * n
    groups: dict[int, list[int]] = {i: ([w] if w is not None else []) for _, i, w in entries}
    for p, i, _ in entries:
        heapq.heappush(heap, (p, i))
    while len(heap) > 1:
        members: list[int] = []
        total = Fraction(0)
        for _ in range(min(r, len(heap))):
            p, i = heapq.heappop(heap)
            total += p
            members.extend(groups.pop(i))
        for w in members:
            depth[w] += 1
        groups[counter] = members
        heapq.heappush(heap, (total, counter))
        counter += 1

    # canonical codeword allocation: word i takes the i-th smallest depth,
    # which keeps the assignment ordered (same depth multiset, same cost)
    depths = sorted(depth)
    available: list[tuple[int, ...]] = [()]
    cur_len = 0
    codewords: list[Runs] = []
    for d in depths:
        while cur_len < d:
            available = [w + (let,) for w in available for let in range(r)]
            cur_len += 1
        codewords.append(runs_from_letters(available.pop(0)))
    assignment = CodeAssignment(tuple(codewords), letters)
    cost = code_cost(assignment, instance) * instance.weight_total
    return OracleResult(cost, assignment, nodes_explored=counter)


def lower_bound(instance: Instance) -> Fraction:
    """1 - p1: every codeword but at most one carries a letter of cost >= l2,
    so the code costs at least this much in units of the second letter cost."""
    return 1 - instance.probabilities[0]
