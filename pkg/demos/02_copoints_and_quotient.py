"""
Copoints and the quotient
=========================

Around any point p the other points split into copoints: the largest
groups that every outside point sees at a single distance. Collapsing
them gives a small quotient matrix.
"""

from robinson.conical import classify_copoint
from robinson.recognizer import extended_quotient, quotient_space, separated_copoints
from robinson.refinement import copoint_partition
from robinson.testkit import running_example

space = running_example()

dec = copoint_partition(space, 0)
for C in dec.copoints:
    print(sorted(x + 1 for x in C), "at distance", space.d(0, C[0]), classify_copoint(space, 0, C).value)

q = quotient_space(space, dec)
print("quotient labels (one member per class):", [x + 1 for x in q.labels])
print(q.dist)

###############################################################################
# Around point 2 the copoint {5, 12, 19} is wider than its distance to 2, so
# 2 has to sit inside it. It is cut into two halves.

p = 1
for group in separated_copoints(space, p):
    print([(b.rep + 1, [x + 1 for x in b.members]) for b in group])

eq = extended_quotient(space, p, separated_copoints(space, p))
print("pieces:", [[x + 1 for x in b.members] for b in eq.pieces])
print(eq.dist)
