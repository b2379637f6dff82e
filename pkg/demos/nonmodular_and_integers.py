"""When the residue characteristic does not divide |G|, nothing can go
wrong; over ZZ only the primes dividing |G| need a look.

Run:  python3 demos/nonmodular_and_integers.py
"""

from arithinv import ZZ, close_group, decide_dvr, decide_over_integers
from arithinv.criteria import reynolds_lift
from arithinv.groups import lattice_s3, s3_permutation
from arithinv.poly import format_poly

G = lattice_s3()

# At p = 5 the group order is a unit, and the Reynolds operator lifts the
# GF(5) generators to ZZ_(5)-invariants of the same degrees.
v = decide_dvr(G, 5)
lv = v.primes[0]
print(f"p = 5: {v.conclusion}, degrees {lv.f_degrees}")
for q in reynolds_lift(G, 5, lv.f_generators).generators:
    print("   Reynolds lift:", format_poly(q))

# Over ZZ: the example fails at 3 only.
v = decide_over_integers(G)
print("over ZZ:", v.conclusion, {lv.p: lv.verdict for lv in v.primes})

# The permutation representation of S3 behaves: the elementary symmetric
# polynomials generate at every prime.
v = decide_over_integers(s3_permutation())
print("S3 permutation over ZZ:", v.conclusion,
      {lv.p: lv.f_degrees for lv in v.primes})

# -I in dimension 2 is not a reflection group; already over QQ the
# invariants need three quadrics.
v = decide_over_integers(close_group([[[-1, 0], [0, -1]]], ZZ))
print("-I over ZZ:", v.conclusion, "-", v.primes[0].reason)
