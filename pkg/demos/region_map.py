"""
The G5-G6 plane at G1 = G2 = G3 = 1, G4 = 1/2
=============================================

Tally the classes on a coarse lattice and show a few points.
"""

from collections import Counter
from fractions import Fraction

from mechsynth.oneport.arbitrary import classify_region, region_rows
from mechsynth.paramount3 import PortMatrix3

rows = list(region_rows(1, 1, 1, Fraction(1, 2), grid=41))
print(Counter(r.cls for r in rows))

for g5, g6 in [("7/10", "7/10"), ("0", "1/2"), ("2/5", "-2/5"), ("1", "-1")]:
    G = PortMatrix3.from_G(1, 1, 1, Fraction(1, 2), Fraction(g5), Fraction(g6))
    print(g5, g6, *classify_region(G))

# the full 201 x 201 map as CSV:  mechsynth region-map --output map.csv
