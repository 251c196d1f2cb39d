"""
Checking against brute force
============================

Up to 8 or so points every permutation can be tried. The fast recognizer
must agree with that on every instance.
"""

from collections import Counter

from robinson import recognize
from robinson.testkit import KINDS, GeneratorSpec, brute_force_compatible_order, generate

tally = Counter()
for seed in range(2000):
    spec = GeneratorSpec(KINDS[seed % 4], 1 + seed % 8, seed)
    space = generate(spec)
    fast = recognize(space).robinson
    slow = brute_force_compatible_order(space) is not None
    tally[spec.kind, fast, fast == slow] += 1

for (kind, verdict, agree), count in sorted(tally.items()):
    print(f"{kind:12s} robinson={verdict!s:5s} agree={agree}  {count}")
