"""Why no binary transform can do better than a permutation.

Any public transform used before committing must preserve Hamming
distances, or verification breaks.  Exhaustively scanning every
bijection of {0,1}^n for small n shows the only distance-preserving maps
are "permute the bits, then XOR a constant" - which is why permutation
countermeasures are the whole design space for binary records, and why
the two-code attack closes the question.
"""

from math import factorial

from fuzzylink import check_distance_preserving, enumerate_distance_preserving_bijections
from fuzzylink.fields import GF2
from fuzzylink.linalg import FieldVector

for n in (1, 2, 3):
    maps = enumerate_distance_preserving_bijections(n)
    total = factorial(2 ** n)
    print(f"n={n}: {len(maps)} of {total} bijections preserve distance "
          f"(n! * 2^n = {factorial(n) * 2 ** n})")
    sample = maps[-1]
    print(f"   e.g. table {sample.table} = permutation {sample.permutation} "
          f"then XOR {sample.shift:0{n}b}")

# the checker spots a broken map and returns a witness pair
def swapped(v):
    if v.bits == 0b000:
        return FieldVector(GF2, n=3, bits=0b011)
    if v.bits == 0b011:
        return FieldVector(GF2, n=3, bits=0b000)
    return v

ok, witness = check_distance_preserving(swapped, GF2, 3)
print(f"\nswapping two outputs at distance 2: preserves distance = {ok}")
v1, v2 = witness
print(f"witness pair: {v1.bits:03b} and {v2.bits:03b}")
