"""Turn a k-prefix code into a true prefix code with a self-delimiting escape.

Codewords cheaper than k pass through untouched. A codeword of cost >= k is
split at its first prefix alpha whose cost reaches k; the remainder beta is
re-attached behind an escape block enc(i) that spells out, in doubled binary,
how many second-letter occurrences beta contains, and a final second letter is
appended. Doubling every digit makes the block's end ("ab") unmistakable, so
distinct codewords can no longer be prefixes of one another. Total cost grows
by at most the factor 1 + l2*(5 + 2*log2(k))/k.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    CodeAssignment,
    InstanceError,
    Runs,
    codeword_cost,
    is_k_prefix_free,
    runs_concat,
    runs_count_letter,
    runs_from_letters,
)
from .kprefix import LeveledCode


def enc(i: int) -> Runs:
    """Escape block for a count i: doubled binary digits, then the pair 'ab'."""
    if i < 0:
        raise InstanceError("enc expects a nonnegative count")
    letters: list[int] = []
    if i > 0:
        for bit in bin(i)[2:]:
            digit = 1 if bit == "1" else 0
            letters.extend((digit, digit))
    letters.extend((0, 1))
    return runs_from_letters(letters)


def _split_at_cost(runs: Runs, letter_costs, k) -> tuple[Runs, Runs]:
    """Smallest prefix of cost >= k, and the remaining suffix."""
    acc = 0
    for idx, (let, rep) in enumerate(runs):
        w = letter_costs[let]
        if acc + w * rep >= k:
            # first crossing happens inside this run
            need = -((acc - k) // w)  # ceil((k - acc) / w)
            alpha = runs[:idx] + ((let, need),)
            beta_head = () if need == rep else ((let, rep - need),)
            return alpha, beta_head + runs[idx + 1 :]
        acc += w * rep
    raise InstanceError("codeword cost is below k; nothing to split")


def _transform(runs: Runs, letter_costs, k) -> Runs:
    alpha, beta = _split_at_cost(runs, letter_costs, k)
    i = runs_count_letter(beta, 1)
    out = runs_concat(alpha, enc(i))
    out = runs_concat(out, beta)
    return runs_concat(out, ((1, 1),))


def convert_to_prefix(code, k) -> CodeAssignment:
    """Convert a k-prefix code (LeveledCode or CodeAssignment) to a prefix code.

    Codewords of cost < k are returned unchanged. Raises when a plain
    CodeAssignment input is not k-prefix free; leveled codes are k-prefix free
    by construction and skip that scan.
    """
    if isinstance(code, LeveledCode):
        letters = code.norm.instance.letters
        k_q = code.graph.k_q
        if k_q < code.graph.unit_q:
            raise InstanceError("conversion requires k >= 1")
        costs_q = code.norm.letters_q
        out = []
        for runs, cost_q in zip(code.codewords, code.word_costs_q):
            out.append(_transform(runs, costs_q, k_q) if cost_q >= k_q else runs)
        return CodeAssignment(tuple(out), letters)

    if not isinstance(code, CodeAssignment):
        raise InstanceError("expected a LeveledCode or CodeAssignment")
    k = Fraction(k)
    if k < 1:
        raise InstanceError("conversion requires k >= 1")
    if not is_k_prefix_free(code.codewords, k, code.letters):
        raise InstanceError("input code is not k-prefix free")
    costs = code.letters.costs
    out = []
    for runs in code.codewords:
        if codeword_cost(runs, code.letters) >= k:
            out.append(_transform(runs, costs, k))
        else:
            out.append(runs)
    return CodeAssignment(tuple(out), code.letters)
