"""Conditional closing probabilities and charming snakes on small lengths.

Run:  python3 demos/snake_quantities.py
"""

from fractions import Fraction

from sawlab.lattice import Walk
from sawlab.snake import (
    SnakeParams,
    closecard,
    conditional_closing_q,
    cs_probability,
    first_parts,
    snake_hypothesis_eval,
)

print("q_(1,3)(W) =", conditional_closing_q(1, 3, Walk.from_directions("W")))

m = 7
for n in range(0, m):
    qs = [conditional_closing_q(n, m, g) for g in first_parts(n, m)]
    print(f"n={n} m={m}: {len(qs)} first parts, max q {max(qs)}, min q {min(qs)}")

# with eta = 1/2 a prefix needs only one charming index at n = 9
for alpha in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)):
    print(f"charming-snake probability n=9 l=5 alpha={alpha} eta=1/2:",
          cs_probability(SnakeParams(9, 5, alpha, 1, Fraction(1, 2))))

rep = snake_hypothesis_eval(SnakeParams(9, 5, Fraction(1, 2)))
print(f"hypothesis at n=9: lhs {rep.lhs}, rhs {rep.rhs:.6f}, met {rep.hypothesis_met}, "
      f"theorem needs n >= {rep.n_threshold:.3g}")

for n in (5, 7, 9, 11):
    r = closecard(n, Fraction(3, 2), Fraction(1, 2))
    print(f"n={n}: rare-closing first-part lengths {list(r.violating)} "
          f"(bound {r.bound:.2f}, hypothesis met {r.hypothesis_met})")
