"""Lyndon words and the parity identity behind the cancellations.

Primitive cycles on the full binary shift correspond to binary Lyndon
words, and pseudo orbits with a prescribed bond content correspond to
tuples of distinct Lyndon words with that letter content.  The sign a
tuple carries is (-1)^index with index = |M| - (number of words).  As
soon as the content mixes at least two letters, even and odd tuples
balance exactly, which is the combinatorial engine behind C = 0 for
repeated-bond pseudo orbits.
"""

import itertools

from qgspectra.lyndon import (
    lyndon_tuples,
    lyndon_words,
    symmetric_group_parity_sum,
    tuple_parity_census,
)

words = lyndon_words(2, 6)
print(f"binary Lyndon words up to length 6: {len(words)}")
print("  " + ", ".join("".join(map(str, w)) for w in words if len(w) <= 4))

# the classic small example: content {1,1,2,2}
print("\ntuples with content {1:2, 2:2}:")
for t in lyndon_tuples({1: 2, 2: 2}):
    shown = " | ".join("".join(map(str, w)) for w in t.words)
    print(f"  index={t.index}  parity={t.parity:+d}   {shown}")
even, odd = tuple_parity_census({1: 2, 2: 2})
print(f"census: {even} even, {odd} odd -> signed sum {even - odd}")

# the balance holds for every mixed content
print("\nparity census over all contents with 2 letters, |M| <= 6:")
for a, b in itertools.product(range(1, 6), repeat=2):
    if a + b > 6:
        continue
    even, odd = tuple_parity_census({1: a, 2: b})
    print(f"  {{1:{a}, 2:{b}}}: even={even:3d} odd={odd:3d}")
    assert even == odd

# single-letter contents are the exception: (1) alone survives
print(f"\ncensus for {{1:1}}: {tuple_parity_census({1: 1})}")
print(f"census for {{1:4}}: {tuple_parity_census({1: 4})}")

# same alternating-sum structure inside the symmetric group
print("\nsum of permutation signs in S_l:")
for l in range(1, 7):
    print(f"  l={l}: {symmetric_group_parity_sum(l):+d}")
