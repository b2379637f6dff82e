"""The non-principal prime over 2 in ZZ[sqrt(-5)]: its blowup algebra is
not a polynomial ring globally, yet it is locally at every prime.

Run:  python3 demos/dedekind_ideals.py
"""

from arithinv import (
    QuadraticRing,
    blowup_grading_check,
    ideal_from_generators,
    is_principal,
    local_principal_generator,
)
from arithinv.dedekind import primes_above

R = QuadraticRing(-5)
P = ideal_from_generators(R, [R.parse("2"), R.parse("1+sqrt(-5)")])
print(f"P = {P}, norm {P.norm()}, principal: {bool(is_principal(P))}")

# Powers alternate: the class of P has order 2.
for row in blowup_grading_check(P, 4)["powers"]:
    print(f"  P^{row['m']}: norm {row['norm']:>2}, generator {row['generator']}")

# Locally P is principal.  Away from 2 the element 2 already generates it;
# at 2 one needs an element of the right valuation.
for q in (2, 3, 7):
    loc = local_principal_generator(P, q)
    above = ", ".join(str(Q) for Q in primes_above(R, q))
    print(f"  at {q}: generator {R.format(loc.generator)} (certified {loc.certified}); "
          f"primes above: {above}")
