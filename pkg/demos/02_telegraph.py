"""The telegraph channel: dashes take twice as long as dots.

English letter frequencies (top eight), encoded over the alphabet {dot, dash}
with costs (1, 2). The approximation knob epsilon trades construction effort
for certified closeness to optimal; small instances usually land on the exact
optimum long before the certificate says they must.
"""

from fractions import Fraction

from lettercost import Instance, LetterCosts, exact_optimal, solve
from lettercost.core import runs_to_str

# approximate per-thousand frequencies of the eight most common letters
words = ["e", "t", "a", "o", "i", "n", "s", "h"]
weights = [127, 91, 82, 75, 70, 67, 63, 61]

letters = LetterCosts([1, 2])
exact = None

for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 5)):
    instance, order = Instance.from_weights(weights, letters, eps)
    report = solve(instance)
    if exact is None:
        exact = exact_optimal(instance)
    ratio = Fraction(report.total_cost, exact.optimal_cost)
    print(
        f"eps={eps}:  cost {report.total_cost}  ratio {ratio}  "
        f"(certified <= {report.ratio_bound_used}, {report.guess_count} guesses)"
    )

print()
print("codebook at eps=1/5 (dot='.', dash='-'):")
instance, order = Instance.from_weights(weights, letters, Fraction(1, 5))
report = solve(instance)
for sorted_index, input_index in enumerate(order):
    code = runs_to_str(report.code.codewords[sorted_index], ".-")
    print(f"  {words[input_index]:>2}  (weight {weights[input_index]:>3})  {code}")
print(f"total transmission time: {report.total_cost} dot-units")
