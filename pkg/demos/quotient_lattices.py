"""
Left submodules of A_p[x]/(x + C)
=================================

Enumerates the left submodule lattice of the quotient by x + C for every
C in M_2(F_p), p = 2, and groups the results by their size profile.
"""

from collections import Counter

from m2codes.codes import chain_quotient_ideals
from m2codes.matring import Mat2, all_matrices
from m2codes.polyfactor import PolyA
from m2codes.structure import chain_ideal_lattice

p = 2
print("ideal sizes of F_4+uF_4:", chain_ideal_lattice(p)["sizes"])

profiles = Counter()
for C in all_matrices(p):
    rep = chain_quotient_ideals(PolyA((C, Mat2.identity(p)), p))
    profiles[(tuple(rep["sizes"]), rep["is_chain"])] += 1
for (sizes, chain), count in sorted(profiles.items()):
    print(f"sizes {list(sizes)}  chain={chain}  for {count} choices of C")
