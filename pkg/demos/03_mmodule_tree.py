"""
The mmodule tree
================

An mmodule is a set of points that looks like a single point from the
outside. All of them fit in one tree.
"""

from robinson.mmodules import is_mmodule, maximal_mmodules, mmodule_tree, parse_tree, tree_contains
from robinson.testkit import enumerate_mmodules, running_example

space = running_example()

family, regimes = maximal_mmodules(space)
print("maximal mmodules:", [sorted(x + 1 for x in M) for M in family])
print("regime:", [r.value for r in regimes])

tree = mmodule_tree(space)
text = tree.to_text(offset=1)
print(text)
assert parse_tree(text, offset=1) == tree

# 13, 14, 15 looks like a group in the picture but point 2 tells 15 apart
for ids in [(5, 12, 19), (11, 13, 14), (13, 14, 15), (2, 15, 5, 12, 19)]:
    M = [i - 1 for i in ids]
    print(ids, is_mmodule(space, M), tree_contains(tree, M))

print(len(enumerate_mmodules(space)), "mmodules in total")
