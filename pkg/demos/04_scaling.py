"""
Timing on shuffled Toeplitz matrices
====================================

Toeplitz matrices with values in {0, 1, 2} have many ties, which is the
hard case. Doubling n should roughly quadruple the time.
"""

import time

from robinson import recognize
from robinson.testkit import gen_toeplitz

prev = None
for n in (250, 500, 1000, 2000):
    space, hidden = gen_toeplitz(n, max_val=2, seed=0, shuffle=True)
    space.rows  # build the row cache up front
    t0 = time.perf_counter()
    res = recognize(space)
    dt = time.perf_counter() - t0
    ratio = "" if prev is None else f"  x{dt / prev:.2f}"
    print(f"n={n:5d}  {dt:.3f} s  robinson={res.robinson}{ratio}")
    prev = dt
