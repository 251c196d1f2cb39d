"""
Recognizing a Robinson matrix
=============================

A dissimilarity matrix is Robinson when some ordering of its points makes
every row and column grow away from the diagonal. The bundled 19 point
example is shuffled; this script finds an order that sorts it.
"""

import numpy as np

from robinson import find_compatible_order, is_robinson_order, recognize
from robinson.core import first_violation
from robinson.recognizer import reference_chooser
from robinson.testkit import RUNNING_EXAMPLE_ORDER, running_example

space = running_example()
print(space.n, "points")

# In the given numbering the matrix is far from sorted: the first row
# already drops when moving from point 2 to point 3.
print("identity order violation (row, a, b):", first_violation(space, list(range(space.n))))

# recognize runs the divide and conquer step and then checks the result.
res = recognize(space)
print("robinson:", res.robinson)
print("order (1-based):", [x + 1 for x in res.order])

# The matrix in that order: values grow away from the diagonal.
idx = np.asarray(res.order)
print(space.dist[np.ix_(idx, idx)])

###############################################################################
# Compatible orders are not unique. Free left/right decisions can be steered,
# e.g. to agree with a known order.

other = find_compatible_order(space, choose=reference_chooser(RUNNING_EXAMPLE_ORDER))
print("steered order:", [x + 1 for x in other])
print("same as reference:", tuple(other) == RUNNING_EXAMPLE_ORDER)

for seed in range(3):
    order = find_compatible_order(space, seed=seed)
    print("seed", seed, [x + 1 for x in order], is_robinson_order(space, order))
