"""End-to-end solver: parameter choice, grouping, guess search, conversion.

The solve pipeline conditions the instance, picks the prefix-relaxation
horizon k, builds the cost graph, partitions words into probability groups,
and searches over constraint tuples (level-0 codeword size plus a monotone
assignment of a group prefix to levels; unassigned groups fall to the cost->=k
tail). The minimum-cost consistent leveled code is converted into a true
prefix code.

The search is depth-first over assignments in increasing level order with an
admissible bound (accumulated cost plus remaining probability times the
current level cost), so it returns exactly the minimum that exhaustive
enumeration over the same guess space would, while skipping guesses that
provably cannot win. Feasibility of a partial assignment is checked with
closed-form free-string counts: with S prefix-free, the number of cost-c
strings with no prefix in S equals count(c) minus sum over members x of
count(c - cost(x)).

Instances whose cheapest letter costs at most epsilon/n skip all of the above
and use a direct candidate construction (solve_tiny_ell1).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .convert import convert_to_prefix
from .core import (
    CodeAssignment,
    Instance,
    InstanceError,
    NormalizedInstance,
    Runs,
    is_prefix_free,
    normalize,
    reorder,
    runs_concat,
)
from .cost_graph import CostGraph, Inconsistent, build_cost_graph
from .kprefix import Guess, OpCounter, construct_leveled

# Frozen end-to-end approximation constant: measured over the random
# verification corpus (n <= 8, r <= 3, integer costs <= 4,
# eps in {0.2, 0.3, 0.5}) and rounded up with margin. solve's cost never
# exceeded (1 + C_TOTAL * eps) times the exact optimum on that corpus.
C_TOTAL = Fraction(1)

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The guess search grew past the configured node budget."""

    def __init__(self, explored: int, budget: int, suggested_epsilon: Fraction | None):
        self.explored = explored
        self.budget = budget
        self.suggested_epsilon = suggested_epsilon
        hint = (
            " (smallest feasible epsilon: %s)" % suggested_epsilon
            if suggested_epsilon is not None
            else ""
        )
        super().__init__(
            "guess search exceeded budget (%d nodes explored, budget %d)%s"
            % (explored, budget, hint)
        )


# ---------------------------------------------------------------------------
# parameter choice and grouping


def choose_k(epsilon: Fraction) -> Fraction:
    """Smallest k = 1 + m*epsilon whose conversion overhead is at most 2*epsilon.

    The overhead factor (5 + 2*log2(k))/k is decreasing, so a linear scan of
    the grid terminates; smaller epsilon always yields the same or larger k.
    """
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise InstanceError("epsilon must lie in (0, 1]")
    m = 1
    while True:
        k = 1 + m * eps
        kf = float(k)
        if (5.0 + 2.0 * math.log2(kf)) / kf <= 2.0 * float(eps):
            return k
        m += 1


@dataclass(frozen=True)
class Grouping:
    """Contiguous partition of the sorted word list.

    The most probable word is always alone in the first group; further words
    above the singleton threshold get their own groups; the rest are packed
    greedily so every packed group's probability stays at most
    (1 - p1) * eps^2 / k.
    """

    norm: NormalizedInstance
    k: Fraction
    ranges: tuple[tuple[int, int], ...]  # half-open word index ranges
    singleton_prefix: int
    group_probabilities: tuple[Fraction, ...]

    @property
    def group_count(self) -> int:
        return len(self.ranges)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(e - s for s, e in self.ranges)

    def groups(self) -> list[list[int]]:
        return [list(range(s, e)) for s, e in self.ranges]


def group_words(norm: NormalizedInstance, k: Fraction) -> Grouping:
    ps = norm.instance.probabilities
    n = len(ps)
    eps = norm.epsilon_prime
    ranges: list[tuple[int, int]] = [(0, 1)]
    if n > 1:
        single_thr = (1 - ps[0]) * eps * eps / (2 * k)
        pack_thr = (1 - ps[0]) * eps * eps / k
        i = 1
        while i < n and ps[i] > single_thr:
            ranges.append((i, i + 1))
            i += 1
        singleton_prefix = len(ranges)
        while i < n:
            j, acc = i, Fraction(0)
            while j < n and acc + ps[j] <= pack_thr:
                acc += ps[j]
                j += 1
            ranges.append((i, j))
            i = j
    else:
        singleton_prefix = 1

    probs = tuple(sum(ps[s:e], Fraction(0)) for s, e in ranges)
    grouping = Grouping(norm, k, tuple(ranges), singleton_prefix, probs)

    assert grouping.ranges[0] == (0, 1)
    assert all(e0 == s1 for (_, e0), (s1, _) in zip(ranges, ranges[1:]))
    assert ranges[-1][1] == n
    if n > 1:
        pack_thr = (1 - ps[0]) * eps * eps / k
        for (s, e), p in zip(ranges, probs):
            if e - s > 1:
                assert p <= pack_thr, "packed group exceeds the probability cap"
        assert grouping.group_count <= 1 + 4 * k / (eps * eps), "too many groups"
    return grouping


# ---------------------------------------------------------------------------
# guess enumeration


def level0_size_candidates(norm: NormalizedInstance) -> list[int]:
    """Candidate sizes for the sub-unit-cost codeword (a run of the cheapest
    letter): 0, every size up to ceil(1/eps), then geometrically spaced sizes,
    plus the largest size still costing under 1."""
    l1_q, unit_q = norm.letters_q[0], norm.unit_q
    f_max = (unit_q - 1) // l1_q  # largest f with f * l1 < 1
    if f_max <= 0:
        return [0]
    eps = norm.epsilon_prime
    base = math.ceil(1 / eps)
    out = set(range(0, min(base, f_max) + 1))
    j = 1
    while True:
        size = math.ceil((1 + eps) ** j / eps)
        if size > f_max:
            break
        out.add(size)
        j += 1
    out.add(f_max)
    return sorted(out)


def enumerate_guesses(
    grouping: Grouping, k: Fraction, epsilon: Fraction, n: int
) -> Iterator[Guess]:
    """Every (level-0 size candidate, monotone prefix assignment) pair, raw.

    Assignments send groups 1..t (a prefix of the group order) to
    nondecreasing levels; the rest implicitly fall to the tail. No pruning
    happens here; the solver skips over-committed combinations itself.
    """
    levels = (Fraction(k) - 1) / Fraction(epsilon)
    if levels.denominator != 1:
        raise InstanceError("k-1 must be a multiple of epsilon")
    level_count = levels.numerator
    sizes = grouping.sizes

    def assignments(gpos: int, min_level: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        yield tuple(acc)
        if gpos == len(sizes):
            return
        for lvl in range(min_level, level_count + 1):
            acc.append(lvl)
            yield from assignments(gpos + 1, lvl, acc)
            acc.pop()

    for f0 in level0_size_candidates(grouping.norm):
        for asg in assignments(0, 1, []):
            counts: dict[int, int] = {}
            for gpos, lvl in enumerate(asg):
                counts[lvl] = counts.get(lvl, 0) + sizes[gpos]
            yield Guess(f0, tuple(sorted(counts.items())))


def guess_stream_size(grouping: Grouping, k: Fraction, epsilon: Fraction) -> int:
    """Closed-form size of the raw guess stream."""
    levels = int((Fraction(k) - 1) / Fraction(epsilon))
    g = grouping.group_count
    maps = sum(math.comb(levels + t - 1, t) for t in range(g + 1))
    return maps * len(level0_size_candidates(grouping.norm))


# ---------------------------------------------------------------------------
# branch-and-bound search over guesses


@dataclass
class _Search:
    norm: NormalizedInstance
    graph: CostGraph
    grouping: Grouping
    budget: int
    explored: int = 0
    leaves: int = 0

    def __post_init__(self):
        g = self.graph
        self.live: list[tuple[int, int]] = [
            (i, g.level_target(i))
            for i in range(1, g.level_count + 1)
            if g.count(g.level_target(i)) > 0
        ]
        ps = self.norm.instance.probabilities
        self.prefix_p = [Fraction(0)]
        for p in ps:
            self.prefix_p.append(self.prefix_p[-1] + p)
        self.n = len(ps)

    def _bump(self) -> None:
        self.explored += 1
        if self.explored > self.budget:
            raise _BudgetSignal()

    def _cap(self, target: int, f0_cost: int, placed: list[list[int]]) -> int:
        g = self.graph
        total = g.count(target)
        if f0_cost >= 0:
            total -= g.count(target - f0_cost)
        for t, cnt in placed:
            if t < target:
                total -= cnt * g.count(target - t)
        return total

    def _completion_bound(
        self,
        f0_cost: int,
        placed: list[list[int]],
        lpos_min: int,
        first_word: int,
    ) -> Fraction:
        """Admissible cost bound for the unplaced words: fill levels from
        lpos_min upward at their current capacities (future placements only
        shrink capacities, so this is optimistic), remainder at cost k. The
        scan is capped; words past the cap are charged the last scanned level,
        which stays optimistic."""
        left = self.n - first_word
        value = Fraction(0)
        w = first_word
        target = self.graph.k_q
        last = min(len(self.live), lpos_min + 64)
        for lpos in range(lpos_min, last):
            if left == 0:
                return value
            _, target = self.live[lpos]
            cap = self._cap(target, f0_cost, placed)
            if placed and placed[-1][0] == target:
                cap -= placed[-1][1]
            if cap <= 0:
                continue
            take = min(left, cap)
            value += (self.prefix_p[w + take] - self.prefix_p[w]) * target
            w += take
            left -= take
        if left:
            floor = self.graph.k_q if last == len(self.live) else target
            value += (self.prefix_p[w + left] - self.prefix_p[w]) * floor
        return value

    def _tail_value(
        self, f0_cost: int, placed: list[list[int]], first_word: int
    ) -> Fraction | None:
        """Exact cost of completing words first_word.. with cheapest eligible
        tail strings; None when not enough exist."""
        g = self.graph
        need = self.n - first_word
        if need == 0:
            return Fraction(0)
        value = Fraction(0)
        w = first_word
        c = g.k_q
        last_nonzero = g.k_q - 1
        while need > 0:
            self._bump()
            elig = g.count(c)
            if f0_cost >= 0:
                elig -= g.count(c - f0_cost)
            for t, cnt in placed:
                elig -= cnt * g.count(c - t)
            if elig > 0:
                last_nonzero = c
                take = min(need, elig)
                value += (self.prefix_p[w + take] - self.prefix_p[w]) * c
                w += take
                need -= take
            elif c >= g.k_q + g.max_letter_q and c - last_nonzero > g.max_letter_q:
                return None
            c += 1
        return value

    def run(self, f0: int) -> tuple[Fraction, tuple[int, ...]] | None:
        """Best (cost in probability-weighted quanta, per-group levels) for one
        level-0 size; unassigned trailing groups are tail, encoded as -1."""
        sizes = self.grouping.sizes
        ranges = self.grouping.ranges
        gprobs = self.grouping.group_probabilities
        G = len(sizes)
        l1_q = self.norm.letters_q[0]
        f0_cost = f0 * l1_q if f0 > 0 else -1
        start = 1 if f0 > 0 else 0
        base = self.norm.instance.probabilities[0] * f0_cost if f0 > 0 else Fraction(0)

        rest_prob = [Fraction(0)] * (G + 1)
        for i in range(G - 1, start - 1, -1):
            rest_prob[i] = rest_prob[i + 1] + gprobs[i]

        best: list = [None, None]  # value, assignment
        placed: list[list[int]] = []
        assign: list[int] = []

        def leaf(gpos: int, partial: Fraction) -> None:
            self.leaves += 1
            first_word = ranges[gpos][0] if gpos < G else self.n
            tail = self._tail_value(f0_cost, placed, first_word)
            if tail is None:
                return
            value = partial + tail
            if best[0] is None or value < best[0]:
                best[0] = value
                best[1] = tuple(assign) + (-1,) * (G - start - len(assign))

        def dfs(gpos: int, lpos_min: int, partial: Fraction) -> None:
            if gpos == G:
                leaf(gpos, partial)
                return
            size, gp = sizes[gpos], gprobs[gpos]
            first_word = ranges[gpos][0]
            if best[0] is not None:
                # capacity-aware admissible bound prunes the whole subtree
                floor = partial + self._completion_bound(
                    f0_cost, placed, lpos_min, first_word
                )
                if floor >= best[0]:
                    return
            for lpos in range(lpos_min, len(self.live)):
                self._bump()
                lvl, target = self.live[lpos]
                bound = partial + rest_prob[gpos] * target
                if best[0] is not None and bound >= best[0]:
                    break
                same = placed and placed[-1][0] == target
                prior = placed[-1][1] if same else 0
                cap_entries = placed[:-1] if same else placed
                if prior + size > self._cap(target, f0_cost, cap_entries):
                    continue
                if same:
                    placed[-1][1] += size
                else:
                    placed.append([target, size])
                assign.append(lvl)
                dfs(gpos + 1, lpos, partial + gp * target)
                assign.pop()
                if same:
                    placed[-1][1] -= size
                else:
                    placed.pop()
            # remaining groups fall to the tail
            bound = partial + rest_prob[gpos] * self.graph.k_q
            if best[0] is None or bound < best[0]:
                leaf(gpos, partial)

        dfs(start, 0, base)
        if best[0] is None:
            return None
        return best[0], best[1]


class _BudgetSignal(Exception):
    pass


def _assignment_to_guess(
    f0: int, assignment: Sequence[int], grouping: Grouping
) -> Guess:
    sizes = grouping.sizes
    start = 1 if f0 > 0 else 0
    counts: dict[int, int] = {}
    for off, lvl in enumerate(assignment):
        if lvl < 0:
            break
        counts[lvl] = counts.get(lvl, 0) + sizes[start + off]
    return Guess(f0, tuple(sorted(counts.items())))


# ---------------------------------------------------------------------------
# reports


@dataclass
class CodeReport:
    """Chosen code plus the certificates the caller cares about.

    total_cost and lower_bound are in the caller's scale: raw weights times
    original letter costs. normalized_cost divides out the second letter cost
    and the weight total, the scale in which lower_bound reads as 1 - p1.
    """

    code: CodeAssignment
    total_cost: Fraction
    lower_bound: Fraction
    ratio_bound_used: Fraction
    guess_count: int
    elapsed: float
    mode: str
    normalized_cost: Fraction
    epsilon_prime: Fraction | None = None
    k: Fraction | None = None
    group_count: int | None = None
    graph_nodes: int | None = None
    graph_arcs: int | None = None
    explored: int = 0
    kprefix_cost: Fraction | None = None

    def __post_init__(self):
        assert self.total_cost >= self.lower_bound


def _finish_report(
    instance: Instance,
    codewords: Sequence[Runs],
    *,
    mode: str,
    ratio_bound: Fraction,
    guess_count: int,
    started: float,
    **extra,
) -> CodeReport:
    letters = instance.letters
    assignment = reorder(CodeAssignment(tuple(codewords), letters))
    per_word = assignment.costs()
    l2 = letters.costs[1]
    scaled = sum(p * c for p, c in zip(instance.probabilities, per_word)) / l2
    p1 = instance.probabilities[0]
    assert scaled >= 1 - p1, "code cost fell below the structural lower bound"
    total = instance.weight_total * l2 * scaled
    return CodeReport(
        code=assignment,
        total_cost=total,
        lower_bound=(1 - p1) * l2 * instance.weight_total,
        ratio_bound_used=ratio_bound,
        guess_count=guess_count,
        elapsed=time.perf_counter() - started,
        mode=mode,
        normalized_cost=scaled,
        **extra,
    )


# ---------------------------------------------------------------------------
# the two solvers


def tiny_run_length_candidates(instance: Instance) -> list[int]:
    """Run lengths i0 to try: distinct floor((1+eps)^j), until a^i0 can no
    longer be among the n cheapest candidates (pool saturated)."""
    n, eps = instance.n, instance.epsilon
    l1 = instance.letters.costs[0] / instance.letters.costs[1]
    out: list[int] = []
    j = 0
    while True:
        i0 = math.floor((1 + eps) ** j)
        if not out or i0 > out[-1]:
            out.append(i0)
            if i0 >= n and i0 * l1 > 2 + n * l1:
                break
        j += 1
    return out


def tiny_candidate_code(
    instance: Instance, i0: int
) -> tuple[Fraction, list[Runs], list[Fraction]]:
    """The ordered code made of the n cheapest strings among: the run a^i0,
    the bracketed runs b a^j b (j < n), and a^j x a^n for every non-cheapest
    letter x and j < i0. Returns (cost, codewords, per-word costs), all in
    units of the second letter cost."""
    n = instance.n
    letters = instance.letters
    scaled = [c / letters.costs[1] for c in letters.costs]
    l1 = scaled[0]
    pool: list[tuple[Fraction, int, int, int, Runs]] = []
    pool.append((i0 * l1, 0, 0, 0, ((0, i0),)))
    for jj in range(n):
        runs = runs_concat(runs_concat(((1, 1),), ((0, jj),) if jj else ()), ((1, 1),))
        pool.append((2 + jj * l1, 1, jj, 0, runs))
    for x in range(1, letters.r):
        # per family the cost rises with j, so j >= n can never be selected
        for jj in range(min(i0, n)):
            runs = runs_concat(((0, jj),) if jj else (), ((x, 1),))
            runs = runs_concat(runs, ((0, n),))
            pool.append((jj * l1 + scaled[x] + n * l1, 2, jj, x, runs))
    pool.sort(key=lambda e: e[:4])
    cost = sum(p * e[0] for p, e in zip(instance.probabilities, pool[:n]))
    return cost, [e[4] for e in pool[:n]], [e[0] for e in pool[:n]]


def solve_tiny_ell1(instance: Instance, *, check: bool = True) -> CodeReport:
    """Direct construction for instances whose cheapest letter is very cheap
    (cost at most epsilon/n once the second letter is scaled to 1).

    Tries every candidate run length and keeps the cheapest resulting code,
    which costs at most (1 + epsilon) times the optimum.
    """
    started = time.perf_counter()
    n = instance.n
    eps = instance.epsilon
    l1 = instance.letters.costs[0] / instance.letters.costs[1]
    if check and l1 * n > eps:
        raise InstanceError("cheapest letter cost exceeds epsilon/n")

    i0_candidates = tiny_run_length_candidates(instance)
    best_cost: Fraction | None = None
    best_words: list[Runs] | None = None
    for i0 in i0_candidates:
        cost, words, _ = tiny_candidate_code(instance, i0)
        if best_cost is None or cost < best_cost:
            best_cost, best_words = cost, words

    assert best_words is not None
    if n <= 512:
        assert is_prefix_free(best_words)
    return _finish_report(
        instance,
        best_words,
        mode="tiny",
        ratio_bound=1 + eps,
        guess_count=len(i0_candidates),
        started=started,
        epsilon_prime=eps,
    )


def solve(
    instance: Instance,
    *,
    k_override: Fraction | None = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    force_main: bool = False,
    ops: OpCounter | None = None,
) -> CodeReport:
    """Find a prefix code of cost within a (1 + O(epsilon)) factor of optimal.

    Keeps the minimum-cost leveled code over all guesses, then converts it to
    a prefix code. Dispatches to solve_tiny_ell1 when the cheapest letter is
    at most epsilon/n after scaling the second letter cost to 1.
    """
    started = time.perf_counter()
    if instance.n == 0:
        raise InstanceError("need at least one word")
    if instance.letters.r < 2:
        raise InstanceError("need at least two letters")

    if instance.n == 1:
        return _finish_report(
            instance,
            [((0, 1),)],
            mode="single",
            ratio_bound=Fraction(1),
            guess_count=1,
            started=started,
        )

    l2 = instance.letters.costs[1]
    if not force_main and instance.letters.costs[0] / l2 * instance.n <= instance.epsilon:
        return solve_tiny_ell1(instance)

    norm = normalize(instance)
    eps = norm.epsilon_prime
    k = Fraction(k_override) if k_override is not None else choose_k(eps)
    graph = build_cost_graph(norm, k)
    grouping = group_words(norm, k)

    search = _Search(norm, graph, grouping, budget)
    candidates = level0_size_candidates(norm)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None

    def run_one(f0: int):
        return search.run(f0)

    try:
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run_one, candidates))
        else:
            results = [run_one(f0) for f0 in candidates]
    except _BudgetSignal:
        raise BudgetExceeded(
            search.explored, budget, _suggest_epsilon(instance, budget)
        ) from None

    for f0, res in zip(candidates, results):
        if res is None:
            continue
        value, assignment = res
        if best is None or value < best[0]:
            best = (value, f0, assignment)
    assert best is not None, "the all-tail guess is always consistent"

    guess = _assignment_to_guess(best[1], best[2], grouping)
    leveled = construct_leveled(norm, graph, guess, instance.n, ops=ops)
    assert not isinstance(leveled, Inconsistent)
    assert leveled.cost_for(norm.instance.probabilities) == best[0] * graph.quantum

    prefix_code = convert_to_prefix(leveled, k)
    report = _finish_report(
        instance,
        prefix_code.codewords,
        mode="main",
        ratio_bound=1 + C_TOTAL * instance.epsilon,
        guess_count=search.leaves,
        started=started,
        epsilon_prime=eps,
        k=k,
        group_count=grouping.group_count,
        graph_nodes=graph.node_count,
        graph_arcs=graph.arc_count,
        explored=search.explored,
        kprefix_cost=best[0] * graph.quantum,
    )
    return report


def _suggest_epsilon(instance: Instance, budget: int) -> Fraction | None:
    for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        if eps <= instance.epsilon:
            continue
        try:
            trial = Instance(
                instance.probabilities, instance.letters, eps, instance.weight_total
            )
            norm = normalize(trial)
            k = choose_k(norm.epsilon_prime)
            grouping = group_words(norm, k)
            if guess_stream_size(grouping, k, norm.epsilon_prime) <= budget:
                return eps
        except InstanceError:
            continue
    return None
