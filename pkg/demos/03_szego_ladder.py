"""Watch the singular value distribution of banded Toeplitz matrices
converge to its symbol.

For f = 2cos(theta) the eigenvalues of the n-th Toeplitz matrix are
2cos(k pi/(n+1)), so the empirical measures converge to the distribution of
f on [-pi, pi] at rate O(1/n).  The residual table makes the rate visible
test function by test function.
"""

from glt_lab import TrigPoly, sv_symbol_residual, toeplitz_seq

two_cos = TrigPoly.from_coeff_map({1: 1, -1: 1})
sizes = (32, 64, 128, 256, 512)
table = sv_symbol_residual(toeplitz_seq(two_cos), two_cos, sizes, resolution=(4, 4096))

print("max residual over the 9-hat family per size:")
for n, worst in zip(sizes, table.max_per_size()):
    bars = "#" * int(400 * worst)
    print(f"  n={n:4d}  {worst:.6f}  {bars}")

print("\nper-function contraction factor from n=32 to n=512:")
for label, first, last in zip(table.labels, table.residuals[0], table.residuals[-1]):
    if first > 0:
        print(f"  {label:26s}  {last / first:8.4f}")
    else:
        print(f"  {label:26s}  exact at both sizes")
