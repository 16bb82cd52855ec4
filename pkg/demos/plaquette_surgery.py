"""Cut polygons along join plaquettes and glue them back.

Run:  python3 demos/plaquette_surgery.py
"""

from collections import Counter

from sawlab.lattice import Plaquette, Polygon
from sawlab.surgery import global_join_profile, join, join_plaquettes, polygons, split

square = Polygon.from_directions("WSEN")
domino = Polygon.from_directions("WSSENN", (1, 2))

# a domino and a square, glued through the plaquette between them
L = join(domino, square.translate((3, 1)), Plaquette((1, 0)))
print("L-shape:", L, "length", L.length)
for p in join_plaquettes(L):
    a, b, _ = split(L, p)
    print(f"  {p}: pieces {a} + {b}")
print("  global join plaquettes with NE-side lengths:",
      [(str(p), size) for p, size in global_join_profile(L)])

# how many global join plaquettes does a typical polygon have?
for n in range(8, 15, 2):
    hist = Counter(len(global_join_profile(p)) for p in polygons(n))
    print(f"n={n}: {dict(sorted(hist.items()))}")
