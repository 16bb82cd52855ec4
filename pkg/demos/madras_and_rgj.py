"""Madras joins of two polygons and the regulation join sets built from them.

Run:  python3 demos/madras_and_rgj.py
"""

from sawlab.madras import RgjParams, build_rgj, find_madras_join, prefix_law, shift_set
from sawlab.lattice import Polygon
from sawlab.surgery import class_members, is_global

square = Polygon.from_directions("WSEN")

# push the right polygon in from the far right until it first fits
j = find_madras_join(square, square.translate((0, -1)))
print(f"square + square: shift {j.shift}, junction {j.junction}, output {j.output}")
print("globally joined:", is_global(j.output, j.junction))
print("all global joining translates:", sorted(shift_set(square, square)))

for k, l in [(4, 4), (6, 6), (8, 8)]:
    params = RgjParams(k, l, 1)
    b = build_rgj(params)
    n_global = sum(is_global(r.output, r.junction) for r in b.records)
    print(f"\nk={k} l={l} window={params.window}: {len(b.outputs)} polygons "
          f"(expected {b.expected_size}), {n_global} with a global junction")
    outs = [r.normalized_output for r in b.records]
    for jj in range(1, k // 2):
        joined, left = prefix_law(outs, jj), prefix_law(class_members("left", k), jj)
        flag = "" if joined == left else "   <- differs"
        print(f"  j={jj}: joined {dict((s, str(v)) for s, v in joined.items())} "
              f"left {dict((s, str(v)) for s, v in left.items())}{flag}")
