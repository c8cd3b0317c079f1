"""Run-length-limited recording channels as unequal letter costs.

In (d, k)-constrained binary recording every 1 must be preceded by at least d
and at most k zeros. Blocks of the form 0^j 1 with d <= j <= k are then free
to concatenate, so the channel is exactly an alphabet with one letter per
block length and letter costs equal to the block lengths. Here: d=1, k=3
gives letters {01, 001, 0001} with costs (2, 3, 4).
"""

from fractions import Fraction

from lettercost import Instance, LetterCosts, exact_optimal, is_prefix_free, solve
from lettercost.core import runs_to_str

blocks = ["01", "001", "0001"]
letters = LetterCosts([2, 3, 4])

weights = [9, 7, 4, 3, 2, 1]
instance, order = Instance.from_weights(weights, letters, Fraction(1, 4))

report = solve(instance)
exact = exact_optimal(instance)
print(f"solver cost {report.total_cost}, exact optimum {exact.optimal_cost}")
assert is_prefix_free(report.code.codewords)

print()
print("word  abstract letters  recorded bits")
for sorted_index, input_index in enumerate(order):
    runs = report.code.codewords[sorted_index]
    abstract = runs_to_str(runs)
    bits = "".join(blocks[let] * rep for let, rep in runs)
    print(f"  w{input_index + 1}   {abstract:<16}  {bits}")

print()
print("every recorded stream keeps 1..3 zeros between ones, and the bit cost")
print("of each codeword equals its abstract letter cost.")
