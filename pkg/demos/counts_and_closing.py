"""Walk and polygon counts, closing probabilities and a bracket on mu.

Run:  python3 demos/counts_and_closing.py [max_n]
"""

import sys

from sawlab.enumeration import (
    closing_count,
    closing_probability,
    estimate_mu,
    exponents,
    polygon_count,
    walk_count,
)

max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 12

print(f"{'n':>3} {'c_n':>10} {'p_n':>6} {'closing':>9}  P(close)")
for n in range(1, max_n + 1):
    q = closing_probability(n)
    print(f"{n:>3} {walk_count(n):>10} {polygon_count(n):>6} {closing_count(n):>9}  {q}")

# every polygon of length n+1 is traced by 2(n+1) closing walks of length n
for n in range(3, max_n + 1, 2):
    lhs, rhs = closing_count(n), 2 * (n + 1) * polygon_count(n + 1)
    print(f"n={n}: closing walks {lhs} = 2(n+1) p_(n+1) = {rhs}")

b = estimate_mu(max_n)
print(f"\nmu in [{b.lo:.4f}, {b.hi:.4f}], midpoint {b.estimate:.4f}")
for n in range(4, max_n + 1, 2):
    r = exponents(n, b.estimate)
    print(f"n={n:>2}  theta={r.theta:7.4f}  xi={r.xi:7.4f}")
