"""
Named states and their families
===============================
"""

import time
from fractions import Fraction

from sparsesep import PureState, classify, zoo

for name, state in [
    ("GHZ_5", zoo.ghz(5)),
    ("W_5", zoo.w(5)),
    ("Dicke(6,2)", zoo.dicke(6, 2)),
    ("Bell", zoo.bell()),
    ("C2", zoo.c2()),
    ("C4", zoo.c4()),
]:
    r = classify(state)
    print(f"{name:11s} m={state.m:3d} family={int(r.family)} fast_path={r.fast_path.value}")

# C4 has a Cartesian support but an entangled coefficient grid
r = classify(zoo.c4())
print(r.search)

# flip the minus sign and the grid becomes rank 1
plus = PureState(4, [(b, Fraction(1, 2)) for b in zoo.c4().labels])
print("C4 with +1/2:", int(classify(plus).family), classify(plus).witness.subset)

# GHZ has two terms; two is prime, so no search is needed
t = time.perf_counter()
classify(zoo.ghz(20))
print(f"GHZ_20 with shortcuts: {1e3 * (time.perf_counter() - t):.3f} ms")
t = time.perf_counter()
classify(zoo.ghz(20), shortcuts=False)
print(f"GHZ_20 full scan:      {time.perf_counter() - t:.2f} s")
