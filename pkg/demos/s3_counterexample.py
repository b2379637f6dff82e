"""S3 acting on ZZ_(3)^2: invariants polynomial over QQ and over GF(3),
but not over ZZ_(3).

Run:  python3 demos/s3_counterexample.py
"""

from fractions import Fraction

from arithinv import QQ, Domain, decide_dvr, minimal_generators, reduce_group
from arithinv.groups import lattice_s3
from arithinv.poly import format_poly, map_coefficients

R = Domain.localized(3)
G = lattice_s3(R)
print(f"|G| = {G.order}; pseudoreflections: {len(G.pseudoreflections())}")

# Over the fraction field the group is a reflection group, so the
# invariants are free on two generators whose degrees multiply to 6.
K = minimal_generators(G.embed(QQ))
f, g = (q.primitive() for q in K.generators)
print("over QQ:   ", format_poly(f), "|", format_poly(g))

# Reduce the matrices mod 3.  The image still has order 6, and the
# invariant ring is again polynomial, but now in degrees 1 and 6.
H, report = reduce_group(G, 3)
F = minimal_generators(H)
print("over GF(3):", " | ".join(format_poly(q) for q in F.generators),
      f"(image order {report.image_order})")

# Different degree multisets under an injective reduction rule out a
# polynomial ring over ZZ_(3).  The witness: (g^2 - 4 f^3) / 27 is
# 3-integral and invariant, but is not a ZZ_(3)-polynomial in f and g.
h = (g * g - (f ** 3).scale(4)).scale(Fraction(1, 27)).change_domain(R)
print("h =", format_poly(h))
print("h mod 3 =", format_poly(map_coefficients(h)))

v = decide_dvr(lattice_s3(), 3)
print("verdict:", v.conclusion, "| certificates verified:", v.certificates_verified)
print(v.dumps())
