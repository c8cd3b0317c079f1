"""Domain types and cost arithmetic for prefix coding with unequal letter costs.

Words to be encoded carry probabilities; codewords are strings over an
alphabet whose letters have (possibly unequal) positive rational costs.
Everything here is exact: costs and probabilities are `fractions.Fraction`
throughout, and after `normalize` every codeword cost is an integer multiple
of a single cost quantum, so the rest of the library can work in integer
quantum units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

GLYPHS = "abcdefghijklmnopqrstuvwxyz"

Rational = Fraction | int
# A codeword is a run-length encoded letter sequence: ((letter, repeat), ...).
# Runs keep long cheap-letter chains O(1) instead of O(length).
Runs = tuple[tuple[int, int], ...]


class InstanceError(ValueError):
    """Raised for structurally invalid problem inputs."""


# ---------------------------------------------------------------------------
# codeword helpers


def runs_from_letters(letters: Iterable[int]) -> Runs:
    out: list[list[int]] = []
    for let in letters:
        if out and out[-1][0] == let:
            out[-1][1] += 1
        else:
            out.append([let, 1])
    return tuple((a, b) for a, b in out)


def runs_from_str(s: str, glyphs: str = GLYPHS) -> Runs:
    return runs_from_letters(glyphs.index(ch) for ch in s)


def runs_to_str(runs: Runs, glyphs: str = GLYPHS) -> str:
    return "".join(glyphs[let] * rep for let, rep in runs)


def runs_concat(a: Runs, b: Runs) -> Runs:
    if not a:
        return b
    if not b:
        return a
    if a[-1][0] == b[0][0]:
        merged = (a[-1][0], a[-1][1] + b[0][1])
        return a[:-1] + (merged,) + b[1:]
    return a + b


def runs_size(runs: Runs) -> int:
    return sum(rep for _, rep in runs)


def runs_count_letter(runs: Runs, letter: int) -> int:
    return sum(rep for let, rep in runs if let == letter)


def runs_is_prefix(a: Runs, b: Runs) -> bool:
    """True when the letter sequence a is a (not necessarily proper) prefix of b."""
    i = 0
    for j, (let, rep) in enumerate(a):
        if i >= len(b):
            return False
        blet, brep = b[i]
        if blet != let or brep < rep:
            return False
        if brep > rep:
            return j == len(a) - 1  # a may only end inside this run of b
        i += 1
    return True


def as_runs(word) -> Runs:
    """Accept a str (default glyphs), an iterable of letter indices, or runs."""
    if isinstance(word, str):
        return runs_from_str(word)
    word = tuple(word)
    if word and isinstance(word[0], tuple):
        return word  # already runs
    return runs_from_letters(word)


# ---------------------------------------------------------------------------
# letter costs and instances


@dataclass(frozen=True)
class LetterCosts:
    """Sorted positive letter costs of an encoding alphabet (r >= 2)."""

    costs: tuple[Fraction, ...]

    def __init__(self, costs: Sequence[Rational]):
        cs = tuple(Fraction(c) for c in costs)
        if len(cs) < 2:
            raise InstanceError("need at least 2 letters")
        if any(c <= 0 for c in cs):
            raise InstanceError("letter costs must be strictly positive")
        if any(cs[i] > cs[i + 1] for i in range(len(cs) - 1)):
            raise InstanceError("letter costs must be sorted nondecreasing")
        object.__setattr__(self, "costs", cs)

    @property
    def r(self) -> int:
        return len(self.costs)

    @property
    def distinct_costs(self) -> tuple[tuple[Fraction, int], ...]:
        """(cost, multiplicity) pairs; d = number of distinct values."""
        out: list[tuple[Fraction, int]] = []
        for c in self.costs:
            if out and out[-1][0] == c:
                out[-1] = (c, out[-1][1] + 1)
            else:
                out.append((c, 1))
        return tuple(out)

    @property
    def d(self) -> int:
        return len(self.distinct_costs)

    def scaled(self, factor: Fraction) -> "LetterCosts":
        return LetterCosts([c * factor for c in self.costs])


@dataclass(frozen=True)
class Instance:
    """Problem input: sorted word probabilities, letter costs, accuracy epsilon."""

    probabilities: tuple[Fraction, ...]
    letters: LetterCosts
    epsilon: Fraction
    weight_total: Fraction = Fraction(1)  # sum of the raw input weights

    def __post_init__(self):
        ps = tuple(Fraction(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", ps)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "weight_total", Fraction(self.weight_total))
        if not ps:
            raise InstanceError("need at least one word")
        if any(p <= 0 for p in ps):
            raise InstanceError("probabilities must be strictly positive")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise InstanceError("probabilities must be sorted nonincreasing")
        if sum(ps) != 1:
            raise InstanceError("probabilities must sum to 1")
        if not (0 < self.epsilon <= 1):
            raise InstanceError("epsilon must lie in (0, 1]")

    @property
    def n(self) -> int:
        return len(self.probabilities)

    @staticmethod
    def from_weights(
        weights: Sequence[Rational],
        letters: LetterCosts,
        epsilon: Rational,
    ) -> tuple["Instance", list[int]]:
        """Normalize raw positive weights to probabilities.

        Returns the instance plus `order`, where order[i] is the input position
        of the i-th (sorted) word, for mapping results back.
        """
        ws = [Fraction(w) for w in weights]
        if any(w <= 0 for w in ws):
            raise InstanceError("weights must be strictly positive")
        total = sum(ws)
        order = sorted(range(len(ws)), key=lambda i: (-ws[i], i))
        probs = [ws[i] / total for i in order]
        return Instance(tuple(probs), letters, Fraction(epsilon), total), order


@dataclass(frozen=True)
class NormalizedInstance:
    """Instance after the cost conditioning reduction.

    Invariants: second cheapest letter costs exactly 1; every letter cost with
    index >= 2 is an integer multiple of epsilon_prime; epsilon_prime is an
    integer multiple or divisor of the cheapest cost; hence every codeword
    cost is an integer multiple of cost_quantum = min(l1, epsilon_prime).
    """

    instance: Instance
    epsilon_prime: Fraction
    cost_quantum: Fraction
    scale_factor: Fraction  # normalized cost * scale_factor ~ original cost units

    # integer quantum-unit views, derived in __post_init__
    letters_q: tuple[int, ...] = field(init=False)
    unit_q: int = field(init=False)  # the cost value 1 in quantum units
    eps_q: int = field(init=False)  # epsilon_prime in quantum units

    def __post_init__(self):
        costs = self.instance.letters.costs
        if costs[1] != 1:
            raise InstanceError("normalized second letter cost must be 1")
        q = self.cost_quantum
        lq = []
        for c in costs:
            m = c / q
            if m.denominator != 1:
                raise InstanceError("letter cost %s is not a multiple of the quantum" % c)
            lq.append(m.numerator)
        eq = self.epsilon_prime / q
        uq = 1 / q
        if eq.denominator != 1 or uq.denominator != 1:
            raise InstanceError("epsilon/unit not multiples of the quantum")
        for c in costs[1:]:
            if (c / self.epsilon_prime).denominator != 1:
                raise InstanceError("cost %s not a multiple of epsilon_prime" % c)
        ratio = self.epsilon_prime / costs[0]
        if ratio.denominator != 1 and (1 / ratio).denominator != 1:
            raise InstanceError("epsilon_prime neither multiple nor divisor of l1")
        object.__setattr__(self, "letters_q", tuple(lq))
        object.__setattr__(self, "unit_q", uq.numerator)
        object.__setattr__(self, "eps_q", eq.numerator)

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def d(self) -> int:
        return self.instance.letters.d

    @property
    def distinct_q(self) -> tuple[tuple[int, int], ...]:
        """(cost in quanta, multiplicity) per distinct letter cost."""
        out: list[tuple[int, int]] = []
        for c in self.letters_q:
            if out and out[-1][0] == c:
                out[-1] = (c, out[-1][1] + 1)
            else:
                out.append((c, 1))
        return tuple(out)

    def level_of_q(self, cost_q: int, k_q: int) -> int | None:
        """Level index of a cost: 0 below unit cost, i within the i-th band,
        None at or beyond k (tail)."""
        if cost_q >= k_q:
            return None
        if cost_q < self.unit_q:
            return 0
        return (cost_q - self.unit_q) // self.eps_q + 1

    def level_target_q(self, i: int) -> int:
        """The single admissible codeword cost inside level i >= 1: one quantum
        below the next level boundary."""
        return self.unit_q + i * self.eps_q - 1


def normalize(instance: Instance) -> NormalizedInstance:
    """Condition letter costs so all codeword costs share one quantum.

    Steps: scale so the second letter costs 1; shrink epsilon to the nearest
    multiple-or-divisor of the cheapest cost; round every other cost up to a
    multiple of the shrunk epsilon; rescale so the second letter costs 1 again.
    Cost distortion of any code is at most a factor 1+epsilon; epsilon shrinks
    by at most a factor 2(1+epsilon).
    """
    eps = instance.epsilon
    costs = instance.letters.costs
    s1 = costs[1]
    step1 = [c / s1 for c in costs]

    l1 = step1[0]
    if eps >= l1:
        eps2 = (eps / l1).__floor__() * l1  # largest multiple of l1 that is <= eps
    else:
        eps2 = l1 / -((-l1) // eps)  # largest divisor of l1 that is <= eps

    step3 = [step1[0]] + [-((-c) // eps2) * eps2 for c in step1[1:]]

    s4 = step3[1]
    final = [c / s4 for c in step3]
    eps_prime = eps2 / s4
    quantum = min(final[0], eps_prime)

    norm_inst = Instance(
        instance.probabilities,
        LetterCosts(final),
        eps_prime,
        instance.weight_total,
    )
    return NormalizedInstance(
        instance=norm_inst,
        epsilon_prime=eps_prime,
        cost_quantum=quantum,
        scale_factor=s1 * s4,
    )


# ---------------------------------------------------------------------------
# cost evaluation


def codeword_cost(word, letters: LetterCosts) -> Fraction:
    """Sum of the letter costs of a codeword; the empty word costs 0."""
    runs = as_runs(word)
    total = Fraction(0)
    for let, rep in runs:
        if not 0 <= let < letters.r:
            raise InstanceError("letter index %d out of range" % let)
        total += letters.costs[let] * rep
    return total


def runs_cost_q(runs: Runs, letters_q: Sequence[int]) -> int:
    return sum(letters_q[let] * rep for let, rep in runs)


@dataclass(frozen=True)
class CodeAssignment:
    """Word index -> codeword map; position i holds the codeword of word i."""

    codewords: tuple[Runs, ...]
    letters: LetterCosts

    def __post_init__(self):
        cws = tuple(as_runs(c) for c in self.codewords)
        object.__setattr__(self, "codewords", cws)
        if len(set(cws)) != len(cws):
            raise InstanceError("codewords must be distinct (injective map)")

    @property
    def n(self) -> int:
        return len(self.codewords)

    def costs(self) -> list[Fraction]:
        return [codeword_cost(c, self.letters) for c in self.codewords]

    @property
    def ordered(self) -> bool:
        cs = self.costs()
        return all(cs[i] <= cs[i + 1] for i in range(len(cs) - 1))

    def strings(self, glyphs: str = GLYPHS) -> list[str]:
        return [runs_to_str(c, glyphs) for c in self.codewords]


def code_cost(assignment: CodeAssignment, instance: Instance) -> Fraction:
    """Probability-weighted cost of the code, in the instance's probability scale."""
    if assignment.n != instance.n:
        raise InstanceError(
            "assignment covers %d words, instance has %d" % (assignment.n, instance.n)
        )
    cs = assignment.costs()
    return sum(p * c for p, c in zip(instance.probabilities, cs))


def reorder(assignment: CodeAssignment) -> CodeAssignment:
    """Reassign the same codewords so cheaper ones go to more probable words.

    Stable: cost ties keep the original word order. Never increases the cost
    of any instance whose probabilities are sorted nonincreasing.
    """
    cws = assignment.codewords
    by_cost = sorted(range(len(cws)), key=lambda i: (codeword_cost(cws[i], assignment.letters), i))
    return CodeAssignment(tuple(cws[i] for i in by_cost), assignment.letters)


# ---------------------------------------------------------------------------
# prefix-freeness predicates and the codeword trie


class TrieNode:
    __slots__ = ("children", "marks", "cost_q")

    def __init__(self):
        self.children: dict[int, "TrieNode"] = {}
        self.marks = 0  # how many codewords end exactly here
        self.cost_q = 0


class CodewordTrie:
    """Letter-level trie over codewords.

    Node costs are carried in quantum units when letter costs are supplied,
    in letter counts otherwise.
    """

    def __init__(self, letters_q: Sequence[int] | None = None):
        self.root = TrieNode()
        self.letters_q = tuple(letters_q) if letters_q is not None else None
        self.size = 0

    def insert(self, word) -> TrieNode:
        runs = as_runs(word)
        node = self.root
        for let, rep in runs:
            step = self.letters_q[let] if self.letters_q else 1
            for _ in range(rep):
                nxt = node.children.get(let)
                if nxt is None:
                    nxt = TrieNode()
                    nxt.cost_q = node.cost_q + step
                    node.children[let] = nxt
                node = nxt
        node.marks += 1
        self.size += 1
        return node

    def codewords(self):
        """Yield (runs, node) for every codeword end, repeating duplicates."""
        path: list[int] = []

        def dfs(node: TrieNode):
            for _ in range(node.marks):
                yield runs_from_letters(path), node
            for let, child in node.children.items():
                path.append(let)
                yield from dfs(child)
                path.pop()

        yield from dfs(self.root)

    def cost_multiset_q(self) -> list[int]:
        return sorted(node.cost_q for _, node in self.codewords())


def _codeword_list(words) -> list[Runs]:
    if isinstance(words, CodewordTrie):
        return [runs for runs, _ in words.codewords()]
    return [as_runs(w) for w in words]


def _has_violation(items: list[Runs], letters: LetterCosts | None, k_cost) -> bool:
    """Some codeword (of cost < k_cost, when given) is a prefix of another."""
    trie = CodewordTrie()
    for runs in items:
        trie.insert(runs)

    def below_k(runs: Runs) -> bool:
        if k_cost is None:
            return True
        return codeword_cost(runs, letters) < k_cost

    path: list[int] = []

    def dfs(node: TrieNode, marked_above: bool) -> bool:
        if node.marks and marked_above:
            return True  # some cheap ancestor prefixes this codeword
        here = node.marks > 0 and below_k(runs_from_letters(path))
        if node.marks >= 2 and here:
            return True  # duplicate with cost below the threshold
        for let, child in node.children.items():
            path.append(let)
            bad = dfs(child, marked_above or here)
            path.pop()
            if bad:
                return True
        return False

    return dfs(trie.root, False)


def is_prefix_free(words) -> bool:
    """True when no codeword is a prefix of any other (duplicates count)."""
    return not _has_violation(_codeword_list(words), None, None)


def is_k_prefix_free(words, k: Rational, letters: LetterCosts) -> bool:
    """True when no codeword of cost < k is a prefix of any other codeword."""
    return not _has_violation(_codeword_list(words), letters, Fraction(k))
