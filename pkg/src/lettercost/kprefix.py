"""Construction of minimum-cost leveled codes under per-level count constraints.

Given the cost graph and a constraint tuple (the level-0 codeword size plus a
codeword count per level), build a code that is k-prefix free, has exactly the
requested number of codewords at each level's single admissible cost, and
completes to n codewords with the cheapest strings of cost >= k. Among all
codes meeting the constraints, the result has minimum cost; when none exists
the result is the Inconsistent value, a routine outcome for the guess search.

Codewords are kept implicit as (cost, how_many) selections; concrete letter
sequences materialize lazily through a trie walker, so construction cost never
depends on total codeword length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    InstanceError,
    NormalizedInstance,
    Runs,
    runs_from_letters,
)
from .cost_graph import (
    CostGraph,
    FreeStringTable,
    Inconsistent,
    extend_beyond_k,
)


class OpCounter:
    """Cheap unit-of-work counter for the runtime scaling checks."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def bump(self, amount: int = 1) -> None:
        self.count += amount


@dataclass(frozen=True)
class Guess:
    """Constraint tuple: level-0 codeword size, plus counts for levels >= 1.

    f0 is the letter count of the single sub-unit-cost codeword (0 for none);
    level_counts holds (level index, codeword count) pairs, ascending, with
    zero-count levels omitted.
    """

    f0: int
    level_counts: tuple[tuple[int, int], ...] = ()

    def f(self, i: int) -> int:
        if i == 0:
            return self.f0
        for lvl, cnt in self.level_counts:
            if lvl == i:
                return cnt
        return 0

    def as_tuple(self, level_count: int) -> tuple[int, ...]:
        return (self.f0,) + tuple(self.f(i) for i in range(1, level_count + 1))

    @property
    def level_words(self) -> int:
        return sum(cnt for _, cnt in self.level_counts)

    def codeword_total(self) -> int:
        return self.level_words + (1 if self.f0 > 0 else 0)

    def fits(self, n: int) -> bool:
        return self.codeword_total() <= n


@dataclass
class LeveledCode:
    """A leveled k-prefix code in implicit form.

    level_picks: (level, cost_q, count) per nonempty level, ascending;
    tail_picks: (cost_q, count) batches of cost >= k, ascending.
    Word i receives the i-th codeword in this cost order (most probable word
    first), with the level-0 codeword, when present, cheapest of all.
    """

    norm: NormalizedInstance
    graph: CostGraph
    guess: Guess
    n: int
    level_picks: list[tuple[int, int, int]]
    tail_picks: list[tuple[int, int]]
    _codewords: list[Runs] | None = field(default=None, repr=False)

    @property
    def word_costs_q(self) -> list[int]:
        out = []
        if self.guess.f0 > 0:
            out.append(self.guess.f0 * self.norm.letters_q[0])
        for _, cost_q, count in self.level_picks:
            out.extend([cost_q] * count)
        for cost_q, count in self.tail_picks:
            out.extend([cost_q] * count)
        return out

    def cost_for(self, probabilities):
        """Probability-weighted cost in normalized cost units."""
        costs = self.word_costs_q
        return sum(p * c for p, c in zip(probabilities, costs)) * self.graph.quantum

    @property
    def codewords(self) -> list[Runs]:
        """Materialized codewords in word order (cheapest first)."""
        if self._codewords is None:
            self._codewords = _materialize(self)
        return self._codewords

    @property
    def tail_start(self) -> int:
        """Index of the first tail codeword in word order."""
        return self.n - sum(count for _, count in self.tail_picks)


def select_level_codewords(
    table: FreeStringTable, level: int, count: int
) -> tuple[int, int, int] | Inconsistent:
    """Reserve `count` codewords at level's admissible cost; update the table.

    Returns the (level, cost_q, count) selection record. Which concrete
    strings are taken is deferred to materialization; any choice has the same
    cost, and the eventual choice rule (cheaper letter first, then lower
    letter index) is fixed for determinism.
    """
    target = table.graph.level_target(level)
    if count == 0:
        return (level, target, 0)
    if target > table.graph.k_q or table.value(target) < count:
        return Inconsistent("level %d cannot host %d codewords" % (level, count))
    table.decrement(target, count)
    return (level, target, count)


def construct_leveled(
    norm: NormalizedInstance,
    graph: CostGraph,
    guess: Guess,
    n: int,
    ops: OpCounter | None = None,
) -> LeveledCode | Inconsistent:
    """Build a minimum-cost leveled k-prefix code consistent with the guess.

    Walks every cost node in increasing order maintaining the free-string
    table, reserves codewords at each level's admissible cost, then completes
    with the cheapest eligible strings of cost >= k.
    """
    bump = ops.bump if ops is not None else None
    l1_q = norm.letters_q[0]
    if guess.f0 < 0 or any(c < 0 for _, c in guess.level_counts):
        raise InstanceError("guess counts must be nonnegative")
    if not guess.fits(n):
        return Inconsistent("guess places more codewords than words")
    if guess.f0 > 0 and guess.f0 * l1_q >= graph.unit_q:
        return Inconsistent("level-0 codeword size %d costs at least 1" % guess.f0)

    wanted = dict(guess.level_counts)
    if any(not 1 <= lvl <= graph.level_count for lvl in wanted):
        return Inconsistent("guess names a level outside 1..%d" % graph.level_count)

    # free-string table, blocked only by the level-0 codeword so far
    blocked0 = guess.f0 * l1_q if guess.f0 > 0 else -1
    v = [0] * (graph.k_q + 1)
    v[0] = 1
    table = FreeStringTable(graph, v)
    level_picks: list[tuple[int, int, int]] = []

    next_target = {graph.level_target(i): i for i in range(1, graph.level_count + 1)}
    for c in range(1, graph.k_q + 1):
        total = 0
        for w, mult in graph.distinct_q:
            if w <= c:
                total += mult * v[c - w]
        if bump:
            bump()
        if c == blocked0:
            total -= 1
        v[c] = total
        lvl = next_target.get(c)
        if lvl is not None and wanted.get(lvl, 0) > 0:
            picked = select_level_codewords(table, lvl, wanted[lvl])
            if isinstance(picked, Inconsistent):
                return picked
            level_picks.append(picked)

    missing = n - guess.codeword_total()
    tail = extend_beyond_k(graph, table, missing)
    if bump:
        bump(missing + 1)
    if isinstance(tail, Inconsistent):
        return tail
    return LeveledCode(norm, graph, guess, n, level_picks, tail)


# ---------------------------------------------------------------------------
# materialization of implicit selections into concrete codewords


class _MatNode:
    __slots__ = ("children", "cost_q", "blocking", "blocked")

    def __init__(self, cost_q: int):
        self.children: dict[int, "_MatNode"] = {}
        self.cost_q = cost_q
        self.blocking = False  # a codeword of cost < k ends here
        self.blocked: dict[int, int] = {}  # relative cost -> blocking marks below


class _Materializer:
    """Resolves (cost, count) selections into the first `count` free strings of
    that cost, preferring cheaper letters and then lower letter indices.

    Counts of candidate continuations come from the graph's string counts
    minus the continuations cut off by blocking marks; marks of cost >= k do
    not block, matching the relaxed prefix rule for the tail.
    """

    def __init__(self, graph: CostGraph, letters_q: Sequence[int]):
        self.graph = graph
        self.letters_q = letters_q
        self.root = _MatNode(0)

    def mark_path(self, runs: Runs, blocking: bool) -> None:
        node, stack = self.root, [self.root]
        for let, rep in runs:
            for _ in range(rep):
                nxt = node.children.get(let)
                if nxt is None:
                    nxt = _MatNode(node.cost_q + self.letters_q[let])
                    node.children[let] = nxt
                node = nxt
                stack.append(node)
        self._mark(stack, blocking)

    @staticmethod
    def _mark(stack: list["_MatNode"], blocking: bool) -> None:
        node = stack[-1]
        if blocking:
            assert not node.blocking, "codeword selected twice"
            node.blocking = True
            for anc in stack[:-1]:
                rel = node.cost_q - anc.cost_q
                anc.blocked[rel] = anc.blocked.get(rel, 0) + 1

    def _free_count(self, node: "_MatNode", budget: int) -> int:
        if node.blocking:
            return 0
        total = self.graph.count(budget)
        for rel, cnt in node.blocked.items():
            if rel <= budget:
                total -= cnt * self.graph.count(budget - rel)
        return total

    def select(self, cost_q: int, take: int, blocking: bool) -> list[Runs]:
        out: list[Runs] = []
        path: list[int] = []
        stack = [self.root]

        def walk(node: "_MatNode", budget: int, want: int) -> int:
            if budget == 0:
                self._mark(stack, blocking)
                out.append(runs_from_letters(path))
                return 1
            got = 0
            for let, w in enumerate(self.letters_q):
                if w > budget:
                    break
                child = node.children.get(let)
                if child is None:
                    child = _MatNode(node.cost_q + w)
                    node.children[let] = child
                avail = self._free_count(child, budget - w)
                if avail <= 0:
                    continue
                sub = min(want - got, avail)
                path.append(let)
                stack.append(child)
                got += walk(child, budget - w, sub)
                stack.pop()
                path.pop()
                if got == want:
                    break
            return got

        got = walk(self.root, cost_q, take)
        assert got == take, "materialization found %d of %d codewords" % (got, take)
        return out


def _materialize(code: LeveledCode) -> list[Runs]:
    mat = _Materializer(code.graph, code.norm.letters_q)
    words: list[Runs] = []
    if code.guess.f0 > 0:
        runs = runs_from_letters([0] * code.guess.f0)
        mat.mark_path(runs, blocking=True)
        words.append(runs)
    for _, cost_q, count in code.level_picks:
        words.extend(mat.select(cost_q, count, blocking=True))
    for cost_q, count in code.tail_picks:
        words.extend(mat.select(cost_q, count, blocking=False))
    assert len(words) == code.n
    return words
