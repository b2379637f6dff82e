"""Dimensions of invariant spaces, two ways: the Molien series and the
kernel of g - 1 on each degree.

Run:  python3 demos/molien_tables.py
"""

from arithinv import QQ, invariant_space, molien_dimensions
from arithinv.groups import FIXTURES

D = 10
print(f"{'group':16}|G|  dims 0..{D}")
for name, make in FIXTURES.items():
    G = make(QQ)
    m = molien_dimensions(G, D)
    k = [invariant_space(G, d).rank for d in range(D + 1)]
    mark = "" if m == k else "   MISMATCH " + str(k)
    print(f"{name:16}{G.order:<5}{' '.join(map(str, m))}{mark}")
